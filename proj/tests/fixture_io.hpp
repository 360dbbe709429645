#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "natop/ansatz.hpp"

namespace natop::fixtures {

inline std::string fixture_path(const std::string& name) { return std::string(NATOP_FIXTURES) + "/" + name; }

inline nlohmann::json load_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  if (!in) throw std::runtime_error("missing fixture " + name);
  return nlohmann::json::parse(in);
}

/// One list from the classification fixture, by value so range-for keeps it alive.
inline nlohmann::json classification_entries(const std::string& key) { return load_fixture("classifications.json").at(key); }

inline TensorSignature signature_of(const nlohmann::json& triple) {
  return TensorSignature::standard(triple[0].get<int>(), triple[1].get<int>(), triple[2].get<int>());
}

inline std::vector<SymmetryConstraint> constraints_of(const nlohmann::json& entry) {
  std::vector<SymmetryConstraint> out;
  if (entry.contains("constraints"))
    for (const auto& c : entry["constraints"]) out.push_back(constraint_from_name(c.get<std::string>()));
  return out;
}

inline const std::vector<std::string>& relation_fixtures() {
  static const std::vector<std::string> names = {"vector_vector",          "vector_one_form",
                                                 "vector_two_tensor",      "endomorphism_one_form",
                                                 "endomorphism_two_tensor", "tangent_form_one_form"};
  return names;
}

}  // namespace natop::fixtures
