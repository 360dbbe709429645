#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "natop/catalog.hpp"
#include "natop/homogeneity.hpp"
#include "natop/identities.hpp"
#include "natop/jets.hpp"
#include "natop/report.hpp"

using namespace natop;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::pair<int, int> parse_pair(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--psi expects R,S");
  try {
    int r = std::stoi(text.substr(0, comma));
    int s = std::stoi(text.substr(comma + 1));
    if (r < 0 || s < 0) throw UsageError("--psi entries must be non-negative");
    return {r, s};
  } catch (const std::logic_error&) {
    throw UsageError("--psi expects R,S");
  }
}

void write_json(const std::string& path, const nlohmann::json& j) {
  if (path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Natural bilinear operators of a (1,p) field and an (r,s) field"};
  app.require_subcommand(1);

  int phi = 1;
  std::string psi = "1,1";
  std::string json_path;

  auto* classify = app.add_subcommand("classify", "Classify first-order natural operators for a signature");
  std::string sym_psi;
  bool alt_phi = false, alt_output = false;
  int verify_trials = 0;
  std::uint64_t seed = 7;
  classify->add_option("--phi", phi, "p for the (1,p) field")->check(CLI::NonNegativeNumber);
  classify->add_option("--psi", psi, "r,s for the second field");
  classify->add_option("--sym-psi", sym_psi, "symmetry of the second field")
      ->check(CLI::IsMember({"sym", "antisym", "closed"}));
  classify->add_flag("--alt-phi", alt_phi, "restrict to antisymmetric (1,2) fields");
  classify->add_flag("--alt-output", alt_output, "restrict to alternating outputs");
  classify->add_option("--verify-trials", verify_trials, "run the numeric naturality check on the basis");
  classify->add_option("--seed", seed, "seed for the numeric check");
  classify->add_option("--json", json_path, "write the report as JSON (- for stdout)");

  auto* verify = app.add_subcommand("verify", "Numeric naturality check");
  std::string op_name, basis_from;
  int trials = 50, dim = 3;
  bool pure = false;
  auto* op_opt = verify->add_option("--op", op_name, "catalog operator name");
  auto* basis_opt = verify->add_option("--basis-from", basis_from, "classification report JSON");
  auto* pure_opt = verify->add_flag("--pure-case", pure, "check the operator on pure pairs");
  op_opt->excludes(basis_opt)->excludes(pure_opt);
  basis_opt->excludes(pure_opt);
  verify->add_option("--trials", trials)->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed);
  verify->add_option("--dim", dim)->check(CLI::Range(1, 6));
  verify->add_option("--json", json_path, "write results as JSON (- for stdout)");

  auto* identities = app.add_subcommand("identities", "Check the identity suite");
  std::string suite = "all";
  identities->add_option("--suite", suite, "all, a group name or an identity name");
  identities->add_option("--json", json_path, "write results as JSON (- for stdout)");

  auto* homogeneity = app.add_subcommand("homogeneity", "Solve the degree equation");
  int max_order = 4;
  bool bilinear = false;
  homogeneity->add_option("--phi", phi)->check(CLI::NonNegativeNumber);
  homogeneity->add_option("--psi", psi);
  homogeneity->add_option("--max-order", max_order)->check(CLI::Range(0, 12));
  homogeneity->add_flag("--bilinear", bilinear, "restrict to operators linear in each field");

  auto* cat = app.add_subcommand("catalog", "List the named operators");
  bool cat_json = false;
  cat->add_flag("--json", cat_json, "print JSON instead of text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (*classify) {
      auto [r, s] = parse_pair(psi);
      TensorSignature sig = TensorSignature::standard(phi, r, s);
      std::vector<SymmetryConstraint> cons;
      if (sym_psi == "sym") cons.push_back(SymmetryConstraint::PsiSymmetric);
      if (sym_psi == "antisym") cons.push_back(SymmetryConstraint::PsiAntisymmetric);
      if (sym_psi == "closed") cons.push_back(SymmetryConstraint::PsiClosedForm);
      if (alt_phi) cons.push_back(SymmetryConstraint::PhiAntisymmetric);
      if (alt_output) cons.push_back(SymmetryConstraint::OutputAlternating);
      for (auto c : cons) check_constraint(sig, c);
      std::optional<NaturalityOptions> vo;
      if (verify_trials > 0) vo = NaturalityOptions{verify_trials, seed, 3, 2};
      auto rep = classify_report(sig, cons, vo);
      if (!json_path.empty()) write_json(json_path, to_json(rep));
      if (json_path != "-") std::cout << to_text(rep);
      for (const auto& c : rep.checks)
        if (!c.pass) return kExitFail;
      return 0;
    }

    if (*verify) {
      NaturalityOptions opts{trials, seed, dim, 2};
      nlohmann::json out = nlohmann::json::array();
      bool ok = true;
      auto record = [&](const NaturalityReport& rep) {
        ok = ok && rep.pass;
        out.push_back(to_json(rep));
        if (json_path != "-") {
          std::cout << (rep.pass ? "PASS " : "FAIL ") << rep.op_id << " (" << rep.trials << " trials, seed " << rep.seed
                    << ", dim " << rep.dim << ")\n";
          if (rep.witness) std::cout << "  witness " << rep.witness->dump() << "\n";
        }
      };
      if (pure) {
        auto rep = check_pure_case(trials, seed, dim);
        ok = rep.pass;
        out.push_back(to_json(rep));
        if (json_path != "-") std::cout << (rep.pass ? "PASS" : "FAIL") << " pure case " << to_json(rep).dump() << "\n";
      } else if (!op_name.empty()) {
        const auto& op = find_operator(op_name);
        record(check_naturality(op.name, op.expansion, op.signature, opts));
      } else if (!basis_from.empty()) {
        std::ifstream in(basis_from);
        if (!in) throw UsageError("cannot read " + basis_from);
        auto loaded = basis_from_report(nlohmann::json::parse(in));
        for (std::size_t k = 0; k < loaded.operators.size(); ++k)
          record(check_naturality("basis " + std::to_string(k + 1), loaded.operators[k], loaded.signature, opts));
      } else {
        throw UsageError("verify needs --op, --basis-from or --pure-case");
      }
      if (!json_path.empty()) write_json(json_path, out);
      return ok ? 0 : kExitFail;
    }

    if (*identities) {
      auto results = run_identities(suite);
      nlohmann::json out = nlohmann::json::array();
      bool ok = true;
      for (const auto& r : results) {
        ok = ok && r.pass;
        out.push_back(to_json(r));
        if (json_path != "-") {
          std::cout << (r.pass ? "PASS " : "FAIL ") << r.group << "/" << r.name << "  " << r.statement << "\n";
          if (!r.pass) std::cout << "  residual " << to_text(r.residual) << "\n";
        }
      }
      if (!json_path.empty()) write_json(json_path, out);
      return ok ? 0 : kExitFail;
    }

    if (*homogeneity) {
      auto [r, s] = parse_pair(psi);
      TensorSignature sig = TensorSignature::standard(phi, r, s);
      auto sols = solve_degree_equation(sig, max_order, bilinear);
      std::cout << sig.to_string() << (bilinear ? " bilinear" : "") << ", orders up to " << max_order << ": "
                << sols.size() << " solution" << (sols.size() == 1 ? "" : "s") << "\n";
      for (const auto& sol : sols) std::cout << "  " << sol.to_string() << "\n";
      return 0;
    }

    if (*cat) {
      if (cat_json) {
        std::cout << catalog_json().dump(2) << "\n";
      } else {
        for (const auto& op : catalog())
          std::cout << op.family << "/" << op.name << "  " << op.signature.to_string() << "  " << op.description << "\n";
      }
      return 0;
    }
  } catch (const HypothesisError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SignatureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CatalogError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitFail;
  }
  return 0;
}
