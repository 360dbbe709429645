#pragma once

// Symbolic identities between natural operators, checked by expanding both
// sides to canonical component form.

#include <string>
#include <vector>

#include <json.hpp>

#include "natop/ansatz.hpp"
#include "natop/tensor_ops.hpp"

namespace natop {

struct Identity {
  std::string name;
  std::string group;      // suite name accepted by the CLI
  std::string statement;  // human-readable
  TensorSignature signature;
  std::vector<SymmetryConstraint> constraints;  // inputs restricted to these
  IndexedExpression lhs;
  IndexedExpression rhs;
};

struct IdentityResult {
  std::string name;
  std::string group;
  std::string statement;
  bool pass = false;
  IndexedExpression residual;  // projected lhs - rhs
};

/// The built-in identities, with convention-dependent ones under `conv`.
std::vector<Identity> identity_suite(DConvention conv = DConvention::Determinant);
std::vector<std::string> suite_groups();

IdentityResult verify_identity(const Identity& id);
/// "all", a group name or an identity name; throws std::invalid_argument otherwise.
std::vector<IdentityResult> run_identities(const std::string& selector);

nlohmann::json to_json(const IdentityResult& r);

}  // namespace natop
