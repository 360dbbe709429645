#pragma once

// Exact numeric naturality checks. Operators are evaluated on random
// polynomial tensor fields at the origin and compared with the pullback
// along random 2-jets of diffeomorphisms fixing the origin. Nothing here
// consults the connection method.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "natop/expr.hpp"
#include "natop/homogeneity.hpp"

namespace natop {

class Polynomial {
 public:
  explicit Polynomial(int nvars = 0) : nvars_(nvars) {}
  static Polynomial constant(int nvars, const Rational& c);
  /// Every monomial of degree <= degree gets an integer coefficient in [-range, range].
  static Polynomial random(int nvars, int degree, std::mt19937_64& rng, int range = 9);

  int nvars() const { return nvars_; }
  void add_term(const std::vector<int>& exponents, const Rational& c);
  const std::map<std::vector<int>, Rational>& terms() const { return terms_; }
  Rational evaluate(const std::vector<Rational>& point) const;
  Polynomial derivative(int var) const;
  int degree() const;

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);

 private:
  int nvars_;
  std::map<std::vector<int>, Rational> terms_;
};

/// Components in row-major order, upper indices first.
struct PolyField {
  int upper = 0;
  int lower = 0;
  int dim = 3;
  std::vector<Polynomial> components;

  int rank() const { return upper + lower; }
  static PolyField zero(int upper, int lower, int dim);
  static PolyField random(int upper, int lower, int dim, int degree, std::mt19937_64& rng);
  /// g times the identity (1,1) field.
  static PolyField scaled_identity(const Polynomial& g, int dim);
  Polynomial& at(const std::vector<int>& idx);
  const Polynomial& at(const std::vector<int>& idx) const;
};

/// Values of a tensor at a point, flattened like PolyField.
struct ComponentTable {
  std::vector<Variance> slots;
  int dim = 3;
  std::vector<Rational> values;

  bool operator==(const ComponentTable&) const = default;
  std::string to_string() const;
};

/// x -> L x + Q(x) with Q quadratic; only its 2-jet at the origin matters.
struct DiffeoJet {
  int dim = 3;
  std::vector<std::vector<Rational>> linear;  // L[a][b]
  std::vector<Polynomial> quadratic;          // Q^a

  static DiffeoJet identity(int dim);
  /// Identity linear part unless `general_linear`, then a random unimodular L.
  static DiffeoJet random(int dim, bool general_linear, std::mt19937_64& rng);
};

struct FieldSet {
  PolyField phi;
  PolyField psi;
  std::vector<PolyField> args;  // vector fields for Arg labels 0, 1, ...
};

/// Exact value of the expression at the point. Output slots follow the free
/// ordinals of the expression; `output_slots` fixes them for zero expressions.
ComponentTable evaluate(const IndexedExpression& op, const FieldSet& fields, const std::vector<Rational>& point,
                        const std::vector<Variance>& output_slots);

/// Degree-1 field with the same 1-jet at the origin as f*T.
PolyField pullback(const PolyField& field, const DiffeoJet& f);
/// (f*T)(0) for a tensor given by its value at the origin.
ComponentTable pullback(const ComponentTable& value, const DiffeoJet& f);

struct NaturalityReport {
  std::string op_id;
  int trials = 0;
  std::uint64_t seed = 0;
  int dim = 3;
  bool pass = true;
  std::optional<nlohmann::json> witness;  // first failing trial
};

struct NaturalityOptions {
  int trials = 50;
  std::uint64_t seed = 7;
  int dim = 3;
  int degree = 2;
};

/// Output slots: sig.out_contra uppers, then sig.out_cov lowers.
NaturalityReport check_naturality(const std::string& op_id, const IndexedExpression& op, const TensorSignature& sig,
                                  const NaturalityOptions& opts = {});

struct PureCaseReport {
  int trials = 0;
  bool identity_case_zero = false;  // φ = I gives the zero operator
  bool tensorial = false;           // argument derivatives do not matter
  bool natural = false;
  bool pass = false;
  bool generic_pair_tensorial = false;  // informational only
  std::optional<nlohmann::json> witness;
};

/// The operator (L_{φX}ψ - L_X(ψ ∘1 φ))(Y,Z) on pairs φ = g·I, ψ a (0,2) field.
PureCaseReport check_pure_case(int trials, std::uint64_t seed, int dim = 3);
/// The same operator in argument form (Arg labels 0, 1, 2 for X, Y, Z).
IndexedExpression pure_pair_operator();

nlohmann::json to_json(const NaturalityReport& r);
nlohmann::json to_json(const PureCaseReport& r);

}  // namespace natop
