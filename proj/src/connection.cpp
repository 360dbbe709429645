#include "natop/connection.hpp"

#include <algorithm>
#include <map>

namespace natop {

namespace {

bool is_input_derivative(Head h) { return h == Head::DPhi || h == Head::DPsi; }

void assert_first_order(const IndexedExpression& kpart) {
  for (const auto& [t, c] : kpart.terms()) {
    int conns = 0;
    for (const auto& f : t) {
      if (f.head == Head::Conn) ++conns;
      if (is_derivative(f.head)) throw InternalInconsistency("derivative survives in the connection part: " + to_text(t));
    }
    if (conns != 1) throw InternalInconsistency("curvature-like connection term: " + to_text(t));
  }
}

}  // namespace

IndexedExpression covariantize(const Monomial& m, bool flip_sign) {
  std::size_t at = m.factors.size();
  for (std::size_t i = 0; i < m.factors.size(); ++i) {
    const Head h = m.factors[i].head;
    if (h == Head::Conn || h == Head::Arg || h == Head::DArg)
      throw StructuralError("covariantize expects a monomial in φ, ψ and δ only: " + to_text(m.factors));
    if (is_input_derivative(h)) {
      if (at != m.factors.size()) throw StructuralError("two derivative factors in " + to_text(m.factors));
      at = i;
    }
  }
  if (at == m.factors.size()) throw StructuralError("no derivative factor in " + to_text(m.factors));

  IndexedExpression out(m);
  const FactorSymbol& df = m.factors[at];
  const IndexName d = df.lower.back();
  FactorSymbol base{underived(df.head), df.label, df.upper, {df.lower.begin(), df.lower.end() - 1}};
  const IndexName fresh = IndexName::dummy(max_dummy(m.factors) + 1);
  const Rational sign = flip_sign ? -1 : 1;

  for (std::size_t k = 0; k < base.upper.size(); ++k) {
    Term t = m.factors;
    t[at] = base;
    t[at].upper[k] = fresh;
    t.push_back(FactorSymbol{Head::Conn, 0, {base.upper[k]}, {d, fresh}});
    out.add(t, -sign * m.coefficient);
  }
  for (std::size_t k = 0; k < base.lower.size(); ++k) {
    Term t = m.factors;
    t[at] = base;
    t[at].lower[k] = fresh;
    t.push_back(FactorSymbol{Head::Conn, 0, {fresh}, {d, base.lower[k]}});
    out.add(t, sign * m.coefficient);
  }
  return out;
}

IndexedExpression connection_part(const IndexedExpression& e, bool flip_sign) {
  IndexedExpression out;
  for (const auto& [t, c] : e.terms()) out += covariantize(Monomial{c, t}, flip_sign) - IndexedExpression(Monomial{c, t});
  assert_first_order(out);
  return out;
}

ConstraintSystem extract_system(const AnsatzFamily& family, bool flip_sign) {
  ConstraintSystem sys{family.signature, family.constraints, {}, {}, RationalMatrix(), {}};
  const auto terms = family.all();
  for (std::size_t idx : representatives(family)) {
    sys.unknowns.push_back(terms[idx].id);
    sys.unknown_terms.push_back(
        project(IndexedExpression(Monomial{1, terms[idx].term}), family.signature, family.constraints));
  }

  // K-monomial -> row
  std::map<Term, SparseRow> collected;
  for (std::size_t j = 0; j < sys.unknown_terms.size(); ++j) {
    IndexedExpression kpart =
        project(connection_part(sys.unknown_terms[j], flip_sign), family.signature, family.constraints);
    for (const auto& [t, c] : kpart.terms()) collected[t][static_cast<int>(j)] += c;
  }
  sys.rows = RationalMatrix(0, static_cast<int>(sys.unknowns.size()));
  for (const auto& [t, row] : collected) {
    SparseRow clean;
    for (const auto& [col, v] : row)
      if (!is_zero(v)) clean[col] = v;
    if (clean.empty()) continue;
    sys.rows.append_row(clean);
    sys.provenance.push_back(to_text(t));
  }
  return sys;
}

OperatorBasis solve(const ConstraintSystem& system) {
  OperatorBasis basis{system.signature, system.constraints, system.unknowns, {}, {}, 0};
  basis.rank = rref(system.rows).rank;
  basis.coefficients = nullspace(system.rows);
  if (basis.rank + static_cast<int>(basis.coefficients.size()) != static_cast<int>(system.unknowns.size()))
    throw InternalInconsistency("rank + nullity differs from the number of unknowns");
  for (const auto& v : basis.coefficients) {
    IndexedExpression op;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!is_zero(v[j])) op += v[j] * system.unknown_terms[j];
    basis.operators.push_back(std::move(op));
  }
  return basis;
}

OperatorBasis classify(const TensorSignature& sig, const std::vector<SymmetryConstraint>& constraints) {
  AnsatzFamily fam = generate(sig);
  for (auto c : constraints) fam = apply_symmetry(fam, c);
  return solve(extract_system(fam));
}

nlohmann::json to_json(const ConstraintSystem& system) {
  nlohmann::json j;
  j["signature"] = system.signature.to_string();
  j["unknowns"] = system.unknowns;
  auto rows = nlohmann::json::array();
  for (int r = 0; r < system.rows.rows(); ++r) {
    nlohmann::json entries = nlohmann::json::object();
    for (const auto& [c, v] : system.rows.row(r)) entries[system.unknowns[static_cast<std::size_t>(c)]] = to_ratio_string(v);
    rows.push_back({{"from", system.provenance[static_cast<std::size_t>(r)]}, {"coefficients", entries}});
  }
  j["rows"] = rows;
  return j;
}

nlohmann::json to_json(const OperatorBasis& basis) {
  nlohmann::json j;
  j["signature"] = basis.signature.to_string();
  auto cons = nlohmann::json::array();
  for (auto c : basis.constraints) cons.push_back(constraint_name(c));
  j["constraints"] = cons;
  j["unknowns"] = basis.unknowns;
  j["rank"] = basis.rank;
  j["dimension"] = basis.dimension();
  auto ops = nlohmann::json::array();
  for (std::size_t k = 0; k < basis.operators.size(); ++k) {
    nlohmann::json coeffs = nlohmann::json::object();
    for (std::size_t u = 0; u < basis.unknowns.size(); ++u)
      if (!is_zero(basis.coefficients[k][u])) coeffs[basis.unknowns[u]] = to_ratio_string(basis.coefficients[k][u]);
    ops.push_back({{"coefficients", coeffs}, {"text", to_text(basis.operators[k])}});
  }
  j["basis"] = ops;
  return j;
}

}  // namespace natop
