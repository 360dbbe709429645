#include "natop/report.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

namespace natop {

namespace {

std::string combination_text(const RationalVector& coords, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (is_zero(coords[k])) continue;
    Rational c = coords[k];
    if (!s.empty()) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    Rational a = abs(c);
    if (a != 1) s += a.get_str() + " ";
    s += names[k];
  }
  return s.empty() ? "0" : s;
}

}  // namespace

ClassificationReport classify_report(const TensorSignature& sig, const std::vector<SymmetryConstraint>& constraints,
                                     const std::optional<NaturalityOptions>& verify) {
  auto start = std::chrono::steady_clock::now();
  ClassificationReport r;
  r.signature = sig;
  r.constraints = constraints;
  AnsatzFamily fam = generate(sig);
  r.ansatz_size = static_cast<int>(fam.size());
  for (auto c : constraints) fam = apply_symmetry(fam, c);
  ConstraintSystem sys = extract_system(fam);
  r.unknowns = static_cast<int>(sys.unknowns.size());
  r.rows = sys.rows.rows();
  r.basis = solve(sys);
  r.rank = r.basis.rank;
  if (r.rank + r.dimension() != r.unknowns) throw InternalInconsistency("dimension differs from unknowns minus rank");
  auto names = generators_for(sig);
  if (!names.empty()) r.catalog_match = match_basis(r.basis, names);
  if (verify) {
    r.seed = verify->seed;
    for (int k = 0; k < r.dimension(); ++k)
      r.checks.push_back(check_naturality("basis " + std::to_string(k + 1), r.basis.operators[static_cast<std::size_t>(k)],
                                          sig, *verify));
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

nlohmann::json to_json(const ClassificationReport& r) {
  nlohmann::json j;
  j["version"] = kEngineVersion;
  j["signature"] = r.signature.to_string();
  j["phi"] = r.signature.phi_p;
  j["psi"] = {r.signature.psi_r, r.signature.psi_s};
  auto cons = nlohmann::json::array();
  for (auto c : r.constraints) cons.push_back(constraint_name(c));
  j["constraints"] = cons;
  j["ansatz_size"] = r.ansatz_size;
  j["unknowns"] = r.unknowns;
  j["system"] = {{"rows", r.rows}, {"rank", r.rank}};
  j["dimension"] = r.dimension();
  auto basis = nlohmann::json::array();
  for (int k = 0; k < r.dimension(); ++k) {
    const auto& op = r.basis.operators[static_cast<std::size_t>(k)];
    nlohmann::json coeffs = nlohmann::json::object();
    for (std::size_t u = 0; u < r.basis.unknowns.size(); ++u)
      if (!is_zero(r.basis.coefficients[k][u])) coeffs[r.basis.unknowns[u]] = to_ratio_string(r.basis.coefficients[k][u]);
    nlohmann::json e{{"coefficients", coeffs}, {"text", to_text(op)}, {"expression", to_json(op)}};
    if (r.catalog_match && r.catalog_match->spans_equal)
      e["catalog"] = combination_text(r.catalog_match->basis_in_named[static_cast<std::size_t>(k)], r.catalog_match->names);
    if (!r.checks.empty()) e["naturality"] = to_json(r.checks[static_cast<std::size_t>(k)]);
    basis.push_back(e);
  }
  j["basis"] = basis;
  if (r.catalog_match) j["catalog_match"] = to_json(*r.catalog_match);
  j["seed"] = r.seed ? nlohmann::json(*r.seed) : nlohmann::json(nullptr);
  j["seconds"] = r.seconds;
  return j;
}

std::string to_text(const ClassificationReport& r) {
  std::ostringstream out;
  out << "signature   " << r.signature.to_string() << "\n";
  out << "constraints ";
  if (r.constraints.empty()) out << "none";
  for (std::size_t k = 0; k < r.constraints.size(); ++k) out << (k ? ", " : "") << constraint_name(r.constraints[k]);
  out << "\nansatz      " << r.ansatz_size << " terms, " << r.unknowns << " independent unknowns\n";
  out << "system      " << r.rows << " rows, rank " << r.rank << "\n";
  out << "dimension   " << r.dimension() << "\n";
  for (int k = 0; k < r.dimension(); ++k) {
    out << "  [" << k + 1 << "] " << to_text(r.basis.operators[static_cast<std::size_t>(k)]) << "\n";
    if (r.catalog_match && r.catalog_match->spans_equal)
      out << "      = " << combination_text(r.catalog_match->basis_in_named[static_cast<std::size_t>(k)], r.catalog_match->names)
          << "\n";
    if (!r.checks.empty()) out << "      naturality " << (r.checks[static_cast<std::size_t>(k)].pass ? "pass" : "FAIL") << "\n";
  }
  if (r.catalog_match) {
    const auto& m = *r.catalog_match;
    out << "catalog     " << (m.spans_equal ? "spans equal" : "spans differ") << ", " << m.names.size()
        << " named operators of rank " << m.named_rank << (m.invertible ? ", invertible change of basis" : "") << "\n";
    if (m.witness) out << "            not in the other span: " << *m.witness << "\n";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", r.seconds);
  out << "time        " << buf << " s\n";
  return out.str();
}

TensorSignature parse_signature_string(const std::string& text) {
  TensorSignature s;
  if (std::sscanf(text.c_str(), "(1,%d)x(%d,%d)->(%d,%d)", &s.phi_p, &s.psi_r, &s.psi_s, &s.out_contra, &s.out_cov) != 5)
    throw std::invalid_argument("malformed signature: " + text);
  return s;
}

LoadedBasis basis_from_report(const nlohmann::json& j) {
  LoadedBasis b{parse_signature_string(j.at("signature").get<std::string>()), {}};
  for (const auto& e : j.at("basis")) b.operators.push_back(expression_from_json(e.at("expression")));
  return b;
}

}  // namespace natop
