#pragma once

// Classification reports: what the CLI prints and what the fixtures store.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "natop/catalog.hpp"
#include "natop/connection.hpp"
#include "natop/jets.hpp"

namespace natop {

inline constexpr const char* kEngineVersion = "1.0.0";

struct ClassificationReport {
  TensorSignature signature;
  std::vector<SymmetryConstraint> constraints;
  int ansatz_size = 0;  // a-terms plus b-terms before constraints
  int unknowns = 0;     // independent unknowns after constraints
  int rows = 0;
  int rank = 0;
  OperatorBasis basis;
  std::optional<ChangeOfBasis> catalog_match;
  std::vector<NaturalityReport> checks;  // empty unless verification was requested
  std::optional<std::uint64_t> seed;
  double seconds = 0;

  int dimension() const { return basis.dimension(); }
};

ClassificationReport classify_report(const TensorSignature& sig, const std::vector<SymmetryConstraint>& constraints,
                                     const std::optional<NaturalityOptions>& verify = std::nullopt);

nlohmann::json to_json(const ClassificationReport& r);
std::string to_text(const ClassificationReport& r);

/// Basis expressions and signature read back from a report.
struct LoadedBasis {
  TensorSignature signature;
  std::vector<IndexedExpression> operators;
};
LoadedBasis basis_from_report(const nlohmann::json& j);

TensorSignature parse_signature_string(const std::string& text);

}  // namespace natop
