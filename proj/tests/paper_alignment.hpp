#pragma once

// Aligns coefficient relations written over hand-labelled monomials with the
// unknowns of an extracted constraint system. Shared by the relation tests and
// the acceptance binary.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "natop/connection.hpp"
#include "natop/parse.hpp"

namespace natop::fixtures {

using LinearForm = std::map<std::string, Rational>;

/// "a1 + a3 - b3", "b6 = -b5", "-1/2 B8 + B9". Returns lhs - rhs.
inline LinearForm parse_linear_form(const std::string& text) {
  auto side = [](const std::string& s, const Rational& sign, LinearForm& out) {
    std::istringstream in(s);
    std::string tok;
    Rational coeff = sign;
    bool have_coeff = false;
    while (in >> tok) {
      if (tok == "+") continue;
      if (tok == "-") {
        coeff = -coeff;
        continue;
      }
      if (tok[0] == '-' && tok.size() > 1) {
        coeff = -coeff;
        tok = tok.substr(1);
      }
      if (std::isdigit(static_cast<unsigned char>(tok[0]))) {
        coeff *= parse_rational(tok);
        have_coeff = true;
        continue;
      }
      out[tok] += coeff;
      if (is_zero(out[tok])) out.erase(tok);
      coeff = sign;
      have_coeff = false;
    }
    if (have_coeff) throw std::invalid_argument("dangling coefficient in " + s);
  };
  LinearForm form;
  auto eq = text.find('=');
  side(text.substr(0, eq), Rational(1), form);
  if (eq != std::string::npos) side(text.substr(eq + 1), Rational(-1), form);
  return form;
}

struct RelationFixture {
  TensorSignature signature;
  std::string free_letters;
  std::map<std::string, IndexedExpression> terms;
  std::vector<LinearForm> relations;
  struct Block {
    std::vector<std::string> labels;
    int free = 0;
  };
  std::vector<Block> blocks;
  std::vector<std::string> parameters;
  std::map<std::string, LinearForm> parameter_values;
  /// Printed values that contradict the printed relations, with the fix.
  std::map<std::string, LinearForm> errata;
};

inline RelationFixture load_relation_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  auto j = nlohmann::json::parse(in);
  RelationFixture f;
  auto sig = j.at("signature");
  f.signature = TensorSignature::standard(sig[0].get<int>(), sig[1].get<int>(), sig[2].get<int>());
  f.free_letters = j.at("free").get<std::string>();
  for (auto& [label, text] : j.at("terms").items())
    f.terms.emplace(label, parse_expression(text.get<std::string>(), f.free_letters));
  for (const auto& r : j.at("relations")) f.relations.push_back(parse_linear_form(r.get<std::string>()));
  if (j.contains("blocks"))
    for (const auto& b : j["blocks"]) f.blocks.push_back({b.at("unknowns").get<std::vector<std::string>>(), b.at("free")});
  if (j.contains("parameterization")) {
    const auto& p = j["parameterization"];
    f.parameters = p.at("parameters").get<std::vector<std::string>>();
    for (auto& [label, text] : p.at("values").items()) f.parameter_values[label] = parse_linear_form(text.get<std::string>());
    if (p.contains("errata"))
      for (auto& [label, text] : p["errata"].items()) f.errata[label] = parse_linear_form(text.get<std::string>());
  }
  return f;
}

/// Label -> (unknown index, scale) with paper monomial = scale * unknown term.
struct Alignment {
  std::map<std::string, std::pair<int, Rational>> slot;
  bool bijective = false;
  std::string problem;
};

inline Alignment align(const RelationFixture& f, const ConstraintSystem& sys) {
  Alignment a;
  std::map<Term, int> by_term;
  for (std::size_t u = 0; u < sys.unknown_terms.size(); ++u) {
    const auto& e = sys.unknown_terms[u];
    if (e.size() != 1) {
      a.problem = "unknown " + sys.unknowns[u] + " is not a single monomial";
      return a;
    }
    by_term[e.terms().begin()->first] = static_cast<int>(u);
  }
  std::vector<int> hits(sys.unknowns.size(), 0);
  for (const auto& [label, e] : f.terms) {
    if (e.size() != 1) {
      a.problem = label + " is not a single monomial";
      return a;
    }
    const auto& [term, c] = *e.terms().begin();
    auto it = by_term.find(term);
    if (it == by_term.end()) {
      a.problem = label + " matches no ansatz term";
      return a;
    }
    // The unknown's own term carries coefficient 1 up to its stored scale.
    Rational own = sys.unknown_terms[static_cast<std::size_t>(it->second)].terms().begin()->second;
    a.slot[label] = {it->second, c / own};
    ++hits[static_cast<std::size_t>(it->second)];
  }
  a.bijective = f.terms.size() == sys.unknowns.size();
  for (int h : hits) a.bijective = a.bijective && h == 1;
  if (!a.bijective) a.problem = "labels and unknowns are not in bijection";
  return a;
}

/// A relation Σ r_L c_L over paper coefficients. The engine's unknown for label
/// L is x = scale * c_L, so the relation reads Σ (r_L / scale) x.
inline SparseRow to_row(const LinearForm& form, const Alignment& a) {
  SparseRow row;
  for (const auto& [label, r] : form) {
    const auto& [u, scale] = a.slot.at(label);
    row[u] += r / scale;
    if (is_zero(row[u])) row.erase(u);
  }
  return row;
}

inline RationalMatrix paper_matrix(const RelationFixture& f, const Alignment& a, int cols) {
  RationalMatrix m(0, cols);
  for (const auto& r : f.relations) m.append_row(to_row(r, a));
  return m;
}

/// Engine-unknown vector for one parameter set to 1 and the others 0.
inline RationalVector parameter_vector(const std::map<std::string, LinearForm>& values, const Alignment& a,
                                      const std::string& param, int cols) {
  RationalVector v(static_cast<std::size_t>(cols));
  for (const auto& [label, form] : values) {
    auto it = form.find(param);
    if (it == form.end()) continue;
    const auto& [u, scale] = a.slot.at(label);
    v[static_cast<std::size_t>(u)] = it->second * scale;
  }
  return v;
}

/// Dimension of the nullspace projected onto the given labels' coordinates.
inline int projected_dimension(const OperatorBasis& basis, const Alignment& a, const std::vector<std::string>& labels) {
  std::vector<RationalVector> proj;
  for (const auto& c : basis.coefficients) {
    RationalVector v;
    for (const auto& l : labels) v.push_back(c[static_cast<std::size_t>(a.slot.at(l).first)]);
    proj.push_back(v);
  }
  return rank_of(proj, static_cast<int>(labels.size()));
}

struct RelationCheck {
  bool aligned = false;
  bool row_equivalent = false;
  bool blocks_ok = true;
  bool parameterization_ok = true;
  /// Printed parameterization violates the system and the errata repair it.
  bool errata_confirmed = true;
  std::string detail;
  bool pass() const { return aligned && row_equivalent && blocks_ok && parameterization_ok && errata_confirmed; }
};

inline RelationCheck check_relations(const std::string& path) {
  RelationCheck out;
  auto f = load_relation_fixture(path);
  auto sys = extract_system(generate(f.signature));
  auto a = align(f, sys);
  out.aligned = a.bijective;
  if (!a.bijective) {
    out.detail = a.problem;
    return out;
  }
  int cols = static_cast<int>(sys.unknowns.size());
  auto paper = paper_matrix(f, a, cols);
  out.row_equivalent = same_row_space(paper, sys.rows);
  if (!out.row_equivalent)
    out.detail = "paper rank " + std::to_string(rref(paper).rank) + ", engine rank " + std::to_string(rref(sys.rows).rank);
  auto basis = solve(sys);
  for (const auto& b : f.blocks) {
    int d = projected_dimension(basis, a, b.labels);
    if (d != b.free) {
      out.blocks_ok = false;
      out.detail += " block free " + std::to_string(d) + " expected " + std::to_string(b.free);
    }
  }
  auto satisfies = [&](const std::map<std::string, LinearForm>& values, std::string* bad) {
    std::vector<RationalVector> vecs;
    bool ok = true;
    for (const auto& p : f.parameters) {
      auto v = parameter_vector(values, a, p, cols);
      auto image = sys.rows.multiply(v);
      if (!std::all_of(image.begin(), image.end(), [](const Rational& x) { return is_zero(x); })) {
        ok = false;
        if (bad) *bad += " " + p;
      }
      vecs.push_back(v);
    }
    return ok && rank_of(vecs, cols) == static_cast<int>(f.parameters.size());
  };
  if (!f.parameters.empty()) {
    auto corrected = f.parameter_values;
    for (const auto& [label, form] : f.errata) corrected[label] = form;
    std::string bad;
    out.parameterization_ok = satisfies(corrected, &bad);
    if (!out.parameterization_ok) out.detail += " parameters violating the system:" + bad;
    if (!f.errata.empty()) {
      std::string printed_bad;
      out.errata_confirmed = !satisfies(f.parameter_values, &printed_bad);
      out.detail += " printed parameterization fails for" + printed_bad;
    }
  }
  return out;
}

}  // namespace natop::fixtures
