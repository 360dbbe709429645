#pragma once

// Indexed tensor expressions: formal rational-linear combinations of
// monomials in component symbols with abstract indices.

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "natop/rational.hpp"

namespace natop {

/// Malformed index usage (a dummy seen once or thrice, repeated free index).
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands whose free-index signatures do not agree.
class SignatureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IndexName {
  enum class Kind : std::uint8_t { Free, Dummy };

  Kind kind = Kind::Free;
  std::uint8_t ordinal = 0;

  static IndexName free(int ordinal) { return {Kind::Free, static_cast<std::uint8_t>(ordinal)}; }
  static IndexName dummy(int ordinal) { return {Kind::Dummy, static_cast<std::uint8_t>(ordinal)}; }

  bool is_free() const { return kind == Kind::Free; }
  bool is_dummy() const { return kind == Kind::Dummy; }

  auto operator<=>(const IndexName&) const = default;
};

/// Head rank order is significant: it is the first key of the factor order.
enum class Head : std::uint8_t {
  Delta,  // Kronecker delta, 1 upper + 1 lower
  Phi,    // the (1,p) input field
  Psi,    // the (r,s) input field
  DPhi,   // first partial of Phi; derivative index stored last in `lower`
  DPsi,   // first partial of Psi
  Conn,   // auxiliary connection symbol K_a^p_b, symmetric in its lower pair
  Arg,    // vector-field argument X, Y, Z (label 0, 1, 2)
  DArg,   // first partial of an argument
  Dim,    // formal manifold dimension, from a full delta self-contraction
};

const char* head_name(Head head);
Head head_from_name(const std::string& name);

struct FactorSymbol {
  Head head = Head::Delta;
  std::uint8_t label = 0;  // argument slot for Arg/DArg, otherwise 0
  std::vector<IndexName> upper;
  std::vector<IndexName> lower;

  auto operator<=>(const FactorSymbol&) const = default;
};

bool is_derivative(Head head);
/// Phi -> DPhi, Psi -> DPsi, Arg -> DArg; throws for anything else.
Head derivative_of(Head head);
/// DPhi -> Phi etc.; identity on underived heads.
Head underived(Head head);

/// Factor list of a monomial without its coefficient; map key of expressions.
using Term = std::vector<FactorSymbol>;

struct Monomial {
  Rational coefficient{1};
  Term factors;
};

/// Checks the index discipline: every dummy exactly once upper and once
/// lower, every free index exactly once. Throws StructuralError.
void validate(const Monomial& m);

/// Unique representative under dummy renaming, factor reordering and the
/// Conn lower-pair symmetry. Coefficient unchanged. Idempotent.
Monomial canonicalize(const Monomial& m);

/// Resolves every delta carrying a dummy index by substitution; a full
/// self-contraction becomes a Dim factor. Result is canonical.
Monomial substitute_delta(const Monomial& m);

enum class Variance : std::uint8_t { Upper, Lower };

/// Free-index ordinal -> variance.
using FreeSignature = std::map<int, Variance>;

FreeSignature free_signature(const Term& term);

class IndexedExpression {
 public:
  IndexedExpression() = default;
  explicit IndexedExpression(const Monomial& m) { add(m); }

  /// Adds a monomial after delta resolution and canonicalization.
  void add(const Monomial& m);
  void add(const Term& t, const Rational& c) { add(Monomial{c, t}); }

  const std::map<Term, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of a canonical term, zero when absent.
  Rational coefficient(const Term& canonical) const;

  /// Empty for the zero expression. Throws SignatureError if the terms disagree.
  FreeSignature signature() const;

  bool operator==(const IndexedExpression& other) const { return terms_ == other.terms_; }

  friend IndexedExpression operator+(const IndexedExpression& a, const IndexedExpression& b);
  friend IndexedExpression operator-(const IndexedExpression& a, const IndexedExpression& b);
  IndexedExpression& operator+=(const IndexedExpression& other);
  IndexedExpression& operator-=(const IndexedExpression& other);

 private:
  void accumulate(const Term& canonical, const Rational& c);

  std::map<Term, Rational> terms_;
};

IndexedExpression add(const IndexedExpression& a, const IndexedExpression& b);
IndexedExpression scale(const IndexedExpression& e, const Rational& c);
IndexedExpression operator*(const Rational& c, const IndexedExpression& e);
IndexedExpression operator-(const IndexedExpression& e);

/// Applies substitute_delta to every term.
IndexedExpression substitute_delta(const IndexedExpression& e);

/// Renames free indices; indices absent from the map are kept. A target may
/// be a dummy (that is how contractions are formed) as long as the monomial
/// stays well formed.
IndexedExpression rename_free(const IndexedExpression& e, const std::map<int, IndexName>& renaming);

/// Product; dummies of the right operand are shifted apart first. Shared
/// free indices are rejected.
IndexedExpression multiply(const IndexedExpression& a, const IndexedExpression& b);

/// Average over all permutations of the given free indices (projection).
IndexedExpression symmetrize(const IndexedExpression& e, const std::vector<int>& free_ordinals);
/// Signed average over all permutations of the given free indices.
IndexedExpression alternate(const IndexedExpression& e, const std::vector<int>& free_ordinals);

/// Largest dummy ordinal in a term, or -1.
int max_dummy(const Term& term);

bool contains_head(const Term& term, Head head);
bool contains_head(const IndexedExpression& e, Head head);

// Text rendering in index notation, e.g. "φ^m_i ∂_m ψ_jk".
std::string index_letter(IndexName idx);
std::string to_text(const FactorSymbol& f);
std::string to_text(const Term& t);
std::string to_text(const IndexedExpression& e);

// Stable JSON form: {"terms": [{"coefficient": "p/q", "factors": [{head, upper, lower}]}]}.
nlohmann::json to_json(const IndexedExpression& e);
IndexedExpression expression_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Term& t);

}  // namespace natop
