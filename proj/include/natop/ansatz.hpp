#pragma once

// First-order bilinear ansatz: every contraction pattern of φ·∂ψ (a-terms)
// and ψ·∂φ (b-terms) against the output indices, with symmetry constraints
// on the inputs or output realized as idempotent projections.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "natop/expr.hpp"
#include "natop/homogeneity.hpp"
#include "natop/linalg.hpp"

namespace natop {

enum class SymmetryConstraint {
  PsiSymmetric,
  PsiAntisymmetric,
  PsiClosedForm,
  PhiAntisymmetric,   // φ is a tangent-valued 2-form
  OutputAlternating,  // values in forms (covariant output slots)
};

const char* constraint_name(SymmetryConstraint c);
/// Inverse of constraint_name; throws std::invalid_argument.
SymmetryConstraint constraint_from_name(const std::string& name);

struct AnsatzTerm {
  std::string id;  // "a1".., "b1"..
  Term term;
};

struct AnsatzFamily {
  TensorSignature signature;
  std::vector<AnsatzTerm> a_terms;  // φ · ∂ψ
  std::vector<AnsatzTerm> b_terms;  // ψ · ∂φ
  std::vector<SymmetryConstraint> constraints;

  /// a-terms then b-terms.
  std::vector<AnsatzTerm> all() const;
  std::size_t size() const { return a_terms.size() + b_terms.size(); }
  const AnsatzTerm& by_id(const std::string& id) const;
};

/// Output free ordinals: uppers 0..r-1, then lowers r..r+s+p-1.
AnsatzFamily generate(const TensorSignature& sig);

/// Throws SignatureError if the constraint does not fit the signature.
void check_constraint(const TensorSignature& sig, SymmetryConstraint c);
AnsatzFamily apply_symmetry(const AnsatzFamily& family, SymmetryConstraint c);

/// The composite projection of the given constraints, factorwise on φ, ψ
/// and their derivatives, and on the output indices.
IndexedExpression project(const IndexedExpression& e, const TensorSignature& sig,
                          const std::vector<SymmetryConstraint>& constraints);

/// Signed or plain average over permutations of the given lower positions
/// of every factor with the given head.
IndexedExpression average_factor_positions(const IndexedExpression& e, Head head, const std::vector<int>& positions,
                                           bool alternating);

/// Coordinates of expressions over a growing list of canonical terms.
class TermSpace {
 public:
  int coordinate(const Term& t);
  int find(const Term& t) const;
  int dimension() const { return static_cast<int>(terms_.size()); }
  const Term& term(int i) const { return terms_.at(static_cast<std::size_t>(i)); }
  /// Registers unseen terms first, so call on everything before comparing dims.
  RationalVector vectorize(const IndexedExpression& e);
  SparseRow sparse(const IndexedExpression& e);
  IndexedExpression expression(const RationalVector& v) const;

 private:
  std::map<Term, int> index_;
  std::vector<Term> terms_;
};

/// Indices (into family.all()) of terms whose projections are independent,
/// chosen greedily in id order. Equals all terms when unconstrained.
std::vector<std::size_t> representatives(const AnsatzFamily& family);

nlohmann::json to_json(const AnsatzFamily& family);

}  // namespace natop
