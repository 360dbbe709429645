#pragma once

// The auxiliary-connection method: replace the partial derivative by a
// covariant one with respect to a symmetric connection K and demand that the
// result does not depend on K. The K-coefficients form a homogeneous linear
// system in the ansatz unknowns.

#include <string>
#include <vector>

#include <json.hpp>

#include "natop/ansatz.hpp"
#include "natop/linalg.hpp"

namespace natop {

/// ∂ → ∇ on the single differentiated factor: -K for each upper index,
/// +K for each lower one (both negated with `flip_sign`). Throws
/// StructuralError unless there is exactly one derivative of φ or ψ.
IndexedExpression covariantize(const Monomial& m, bool flip_sign = false);

/// covariantize(e) - e, term by term. Zero iff e is natural.
IndexedExpression connection_part(const IndexedExpression& e, bool flip_sign = false);

struct ConstraintSystem {
  TensorSignature signature;
  std::vector<SymmetryConstraint> constraints;
  std::vector<std::string> unknowns;            // ansatz ids
  std::vector<IndexedExpression> unknown_terms;  // the (projected) monomial of each unknown
  RationalMatrix rows;
  std::vector<std::string> provenance;  // K-monomial behind each row
};

/// Under constraints only independent projected terms become unknowns.
ConstraintSystem extract_system(const AnsatzFamily& family, bool flip_sign = false);

struct OperatorBasis {
  TensorSignature signature;
  std::vector<SymmetryConstraint> constraints;
  std::vector<std::string> unknowns;
  std::vector<RationalVector> coefficients;  // one vector over `unknowns` per basis element
  std::vector<IndexedExpression> operators;  // the same, as ∂-form expressions
  int rank = 0;

  int dimension() const { return static_cast<int>(operators.size()); }
};

OperatorBasis solve(const ConstraintSystem& system);

OperatorBasis classify(const TensorSignature& sig, const std::vector<SymmetryConstraint>& constraints = {});

nlohmann::json to_json(const ConstraintSystem& system);
nlohmann::json to_json(const OperatorBasis& basis);

}  // namespace natop
