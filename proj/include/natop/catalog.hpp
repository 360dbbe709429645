#pragma once

// Named natural operators in component form, grouped into families, and the
// comparison of a computed operator basis with a list of named operators.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "natop/ansatz.hpp"
#include "natop/connection.hpp"
#include "natop/tensor_ops.hpp"

namespace natop {

class CatalogError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct NamedOperator {
  std::string name;
  std::string family;
  std::string description;  // the operator in the usual notation
  TensorSignature signature;
  /// Input symmetries under which the operator is defined (usually none).
  std::vector<SymmetryConstraint> domain;
  IndexedExpression expansion;  // ∂-form, free ordinals as in the ansatz
};

const std::vector<NamedOperator>& catalog();
const NamedOperator& find_operator(const std::string& name);
/// Throws CatalogError when the name is unknown or lives on another signature.
IndexedExpression expand(const std::string& name, const TensorSignature& sig);
std::vector<std::string> family_names(const std::string& family);
/// Named generators of the full classification for a signature; empty if none.
std::vector<std::string> generators_for(const TensorSignature& sig);

/// Zero K-part after restriction to the operator's domain.
bool is_natural(const NamedOperator& op);

/// Rank of the named expansions after projecting onto the given constraints.
int span_dimension(const std::vector<std::string>& names, const TensorSignature& sig,
                   const std::vector<SymmetryConstraint>& constraints);

struct ChangeOfBasis {
  std::vector<std::string> names;
  bool spans_equal = false;
  bool invertible = false;  // equal spans and both families independent
  int named_rank = 0;
  int basis_dimension = 0;
  /// named_in_basis[n] = coordinates of names[n] in the computed basis.
  std::vector<RationalVector> named_in_basis;
  /// basis_in_named[b] = coordinates of basis element b in the named operators.
  std::vector<RationalVector> basis_in_named;
  /// First element not in the other span, with its residual, when spans differ.
  std::optional<std::string> witness;
  IndexedExpression residual;
};

ChangeOfBasis match_basis(const OperatorBasis& basis, const std::vector<std::string>& names);

nlohmann::json to_json(const NamedOperator& op);
nlohmann::json to_json(const ChangeOfBasis& change);
nlohmann::json catalog_json();

}  // namespace natop
