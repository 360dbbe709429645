// One PASS/FAIL line per acceptance criterion. Exact arithmetic throughout.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fixture_io.hpp"
#include "natop/catalog.hpp"
#include "natop/connection.hpp"
#include "natop/homogeneity.hpp"
#include "natop/identities.hpp"
#include "natop/jets.hpp"
#include "paper_alignment.hpp"

using namespace natop;
using S = SymmetryConstraint;

namespace {

struct Line {
  bool pass = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

int failures = 0;

void report(int n, Line& line) {
  std::cout << "criterion " << n << ": " << (line.pass ? "PASS" : "FAIL") << line.detail.str() << std::endl;
  if (!line.pass) ++failures;
}

struct Expected {
  TensorSignature sig;
  int dimension;
  int names;
};

const std::vector<Expected> kClassified = {
    {TensorSignature::standard(0, 1, 0), 1, 1},   {TensorSignature::standard(0, 0, 1), 2, 2},
    {TensorSignature::standard(0, 0, 2), 4, 4},   {TensorSignature::standard(1, 1, 1), 15, 15},
    {TensorSignature::standard(1, 0, 1), 6, 6},   {TensorSignature::standard(1, 0, 2), 14, 14},
    {TensorSignature::standard(2, 0, 1), 19, 19}};

std::vector<std::string> names_of(const std::vector<std::string>& families) {
  std::vector<std::string> out;
  for (const auto& f : families)
    for (const auto& n : family_names(f)) out.push_back(n);
  return out;
}

void dimensions() {
  Line line;
  for (const auto& e : kClassified) {
    int d = classify(e.sig).dimension();
    line.detail << " " << e.sig.to_string() << "=" << d;
    line.expect(d == e.dimension, e.sig.to_string() + " expected " + std::to_string(e.dimension));
  }
  report(1, line);
}

void constrained() {
  Line line;
  auto full = [&](const TensorSignature& sig, std::vector<S> cons, int expected, const std::string& label) {
    int d = classify(sig, cons).dimension();
    line.detail << " " << label << "=" << d;
    line.expect(d == expected, label + " expected " + std::to_string(expected));
  };
  auto span = [&](const std::vector<std::string>& families, const TensorSignature& sig, std::vector<S> cons, int expected,
                  const std::string& label) {
    int d = span_dimension(names_of(families), sig, cons);
    line.detail << " " << label << "=" << d;
    line.expect(d == expected, label + " expected " + std::to_string(expected));
  };
  auto one_form = TensorSignature::standard(1, 0, 1);
  auto pair = TensorSignature::standard(1, 1, 1);
  auto two_tensor = TensorSignature::standard(1, 0, 2);
  auto tangent = TensorSignature::standard(2, 0, 1);
  full(one_form, {S::PsiClosedForm}, 3, "closed");
  full(one_form, {S::PsiClosedForm, S::OutputAlternating}, 2, "closed+alt");
  full(pair, {S::OutputAlternating}, 8, "pair_alt");
  span({"endomorphism_one_form"}, one_form, {S::OutputAlternating}, 4, "two_form_valued");
  span({"alternated_differentials"}, two_tensor, {S::PsiSymmetric}, 1, "sym");
  span({"alternated_differentials"}, two_tensor, {S::PsiAntisymmetric}, 5, "antisym");
  span({"alternated_differentials"}, two_tensor, {S::PsiAntisymmetric, S::OutputAlternating}, 3, "antisym+alt");
  span({"alternated_differentials"}, two_tensor, {S::PsiClosedForm}, 1, "closed_two_form");
  span({"trace_times_dpsi"}, tangent, {S::PhiAntisymmetric}, 3, "trace_times_dpsi");
  span({"dpsi_after_S"}, tangent, {S::PhiAntisymmetric}, 3, "dpsi_after_S");
  span({"psi_times_dtrace"}, tangent, {S::PhiAntisymmetric}, 3, "psi_times_dtrace");
  int derived = 0;
  for (const auto& e : fixtures::classification_entries("constrained"))
    if (fixtures::signature_of(e["signature"]) == tangent && fixtures::constraints_of(e) == std::vector<S>{S::PhiAntisymmetric})
      derived = e["dimension"].get<int>();
  full(tangent, {S::PhiAntisymmetric}, derived, "antisym_S_total");
  span({"trace_times_dpsi", "dpsi_after_S", "psi_times_dtrace", "d_psi_alt_S"}, tangent, {S::PhiAntisymmetric}, derived,
       "antisym_S_named_span");
  report(2, line);
}

void relations() {
  Line line;
  for (const auto& name : fixtures::relation_fixtures()) {
    auto r = fixtures::check_relations(fixtures::fixture_path("relations/" + name + ".json"));
    line.detail << " " << name << "=" << (r.pass() ? "ok" : "mismatch");
    if (!r.detail.empty()) line.detail << " (" << r.detail.substr(r.detail.find_first_not_of(' ')) << ")";
    line.expect(r.pass(), name + ": " + r.detail);
  }
  report(3, line);
}

void spans() {
  Line line;
  for (const auto& e : kClassified) {
    auto names = generators_for(e.sig);
    auto change = match_basis(classify(e.sig), names);
    line.detail << " " << e.sig.to_string() << ":" << names.size() << (change.invertible ? " invertible" : " not invertible");
    line.expect(static_cast<int>(names.size()) == e.names && change.spans_equal && change.invertible,
                e.sig.to_string() + (change.witness ? " witness " + *change.witness : ""));
  }
  report(4, line);
}

void identity_suite_line() {
  Line line;
  int passed = 0, total = 0;
  for (const auto& r : run_identities("all")) {
    ++total;
    if (r.pass) ++passed;
    line.expect(r.pass, r.group + "/" + r.name + " residual " + to_text(r.residual));
  }
  line.detail << " " << passed << "/" << total << " identities hold";
  report(5, line);
}

void homogeneity() {
  Line line;
  for (const auto& e : kClassified) {
    auto sols = solve_degree_equation(e.sig, 4, true);
    line.expect(sols.size() == 2, "bilinear " + e.sig.to_string() + " gives " + std::to_string(sols.size()));
  }
  line.detail << " bilinear: 2 solutions on all " << kClassified.size() << " signatures;";
  for (auto sig : {TensorSignature::standard(2, 0, 1), TensorSignature::standard(2, 0, 2), TensorSignature::standard(3, 1, 2)}) {
    auto sols = solve_degree_equation(sig, 4, false);
    line.detail << " unrestricted " << sig.to_string() << ": " << sols.size();
    std::string extra;
    for (const auto& s : sols) {
      long total_a = 0, total_b = 0;
      for (int x : s.a) total_a += x;
      for (int x : s.b) total_b += x;
      if (total_a != 1 || total_b != 1) {
        extra = s.to_string();
        break;
      }
    }
    line.expect(sols.size() == 2, "unrestricted " + sig.to_string() + " gives " + std::to_string(sols.size()) +
                                      (extra.empty() ? "" : ", e.g. " + extra));
  }
  report(6, line);
}

void naturality() {
  Line line;
  NaturalityOptions opts{50, 7, 3, 2};
  int checked = 0;
  for (const auto& e : kClassified) {
    auto basis = classify(e.sig);
    for (int k = 0; k < basis.dimension(); ++k) {
      auto r = check_naturality(e.sig.to_string() + " basis " + std::to_string(k + 1),
                                basis.operators[static_cast<std::size_t>(k)], e.sig, opts);
      ++checked;
      line.expect(r.pass, r.op_id + (r.witness ? " " + r.witness->dump() : ""));
    }
  }
  line.detail << " " << checked << " basis elements x 50 trials;";
  const auto& bad = find_operator("nonexample_a2");
  auto r = check_naturality(bad.name, bad.expansion, bad.signature, opts);
  line.expect(!r.pass && r.witness.has_value(), "excluded monomial was not rejected");
  if (r.witness) line.detail << " excluded monomial rejected, witness " << r.witness->dump() << ";";
  auto pure = check_pure_case(20, 7);
  line.expect(pure.pass, "pure case " + to_json(pure).dump());
  line.detail << " pure case " << (pure.pass ? "ok" : "failed");
  report(7, line);
}

void consistency() {
  Line line;
  std::vector<std::pair<TensorSignature, std::vector<S>>> runs;
  auto fx = fixtures::load_fixture("classifications.json");
  for (const auto& e : fx["unconstrained"]) runs.push_back({fixtures::signature_of(e["signature"]), {}});
  for (const auto& e : fx["constrained"]) runs.push_back({fixtures::signature_of(e["signature"]), fixtures::constraints_of(e)});
  for (const auto& [sig, cons] : runs) {
    auto fam = generate(sig);
    for (auto c : cons) fam = apply_symmetry(fam, c);
    auto sys = extract_system(fam);
    auto flipped = extract_system(fam, true);
    auto basis = solve(sys);
    line.expect(basis.rank + basis.dimension() == static_cast<int>(sys.unknowns.size()), "rank+nullity " + sig.to_string());
    line.expect(same_row_space(sys.rows, flipped.rows), "sign flip changed the system for " + sig.to_string());
  }
  line.detail << " " << runs.size() << " runs: rank+nullity and sign-flip invariance;";
  int agree = 0;
  for (const auto& op : catalog()) {
    auto r = check_naturality(op.name, op.expansion, op.signature, {50, 7, 3, 2});
    bool ok = r.pass == is_natural(op);
    agree += ok;
    line.expect(ok, "symbolic and numeric disagree on " + op.name);
  }
  line.detail << " symbolic and numeric agree on " << agree << "/" << catalog().size() << " catalog entries";
  report(8, line);
}

}  // namespace

int main() {
  dimensions();
  constrained();
  relations();
  spans();
  identity_suite_line();
  homogeneity();
  naturality();
  consistency();
  return failures == 0 ? 0 : 1;
}
