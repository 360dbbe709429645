#include "natop/ansatz.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace natop {

namespace {

// A slot of an ansatz monomial: either an index position of one of the two
// factors, or an output index.
struct Slot {
  int factor;  // 0, 1, or -1 for an output index
  bool upper;
  int position;  // position within the factor, or output ordinal
};

Term instantiate(const FactorSymbol& f0, const FactorSymbol& f1, const std::vector<Slot>& s1,
                 const std::vector<Slot>& s2, const std::vector<int>& perm) {
  Term t{f0, f1};
  auto at = [&](const Slot& s) -> IndexName& {
    auto& f = t[static_cast<std::size_t>(s.factor)];
    return s.upper ? f.upper[static_cast<std::size_t>(s.position)] : f.lower[static_cast<std::size_t>(s.position)];
  };
  for (std::size_t i = 0; i < s1.size(); ++i) {
    const Slot& x = s1[i];                               // factor upper or output lower
    const Slot& y = s2[static_cast<std::size_t>(perm[i])];  // factor lower or output upper
    if (x.factor >= 0 && y.factor >= 0) {
      at(x) = IndexName::dummy(static_cast<int>(i));
      at(y) = IndexName::dummy(static_cast<int>(i));
    } else if (x.factor >= 0) {
      at(x) = IndexName::free(y.position);
    } else if (y.factor >= 0) {
      at(y) = IndexName::free(x.position);
    } else {
      t.push_back(FactorSymbol{Head::Delta, 0, {IndexName::free(y.position)}, {IndexName::free(x.position)}});
    }
  }
  return t;
}

std::vector<Term> shape_terms(const TensorSignature& sig, bool derivative_on_psi) {
  const int p = sig.phi_p, r = sig.psi_r, s = sig.psi_s;
  FactorSymbol phi{derivative_on_psi ? Head::Phi : Head::DPhi, 0, {IndexName{}}, {}};
  phi.lower.resize(static_cast<std::size_t>(p + (derivative_on_psi ? 0 : 1)));
  FactorSymbol psi{derivative_on_psi ? Head::DPsi : Head::Psi, 0, {}, {}};
  psi.upper.resize(static_cast<std::size_t>(r));
  psi.lower.resize(static_cast<std::size_t>(s + (derivative_on_psi ? 1 : 0)));

  std::vector<Slot> s1, s2;
  for (int f = 0; f < 2; ++f) {
    const FactorSymbol& fs = f == 0 ? phi : psi;
    for (int k = 0; k < static_cast<int>(fs.upper.size()); ++k) s1.push_back({f, true, k});
    for (int k = 0; k < static_cast<int>(fs.lower.size()); ++k) s2.push_back({f, false, k});
  }
  for (int o = r; o < r + s + p; ++o) s1.push_back({-1, false, o});
  for (int o = 0; o < r; ++o) s2.push_back({-1, true, o});
  if (s1.size() != s2.size()) throw InternalInconsistency("unbalanced ansatz slots");

  std::vector<int> perm(s1.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::set<Term> distinct;
  long count = 0;
  do {
    Term raw = instantiate(phi, psi, s1, s2, perm);
    Monomial m = substitute_delta(Monomial{1, raw});
    if (contains_head(m.factors, Head::Dim)) throw InternalInconsistency("ansatz produced a trace of the identity");
    distinct.insert(m.factors);
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (static_cast<long>(distinct.size()) != count)
    throw InternalInconsistency("ansatz patterns collapsed: " + std::to_string(distinct.size()) + " of " +
                                std::to_string(count));
  return {distinct.begin(), distinct.end()};
}

int sign_of(const std::vector<int>& perm) {
  int inv = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

}  // namespace

const char* constraint_name(SymmetryConstraint c) {
  switch (c) {
    case SymmetryConstraint::PsiSymmetric: return "psi_symmetric";
    case SymmetryConstraint::PsiAntisymmetric: return "psi_antisymmetric";
    case SymmetryConstraint::PsiClosedForm: return "psi_closed_form";
    case SymmetryConstraint::PhiAntisymmetric: return "phi_antisymmetric";
    case SymmetryConstraint::OutputAlternating: return "output_alternating";
  }
  return "?";
}

SymmetryConstraint constraint_from_name(const std::string& name) {
  for (auto c : {SymmetryConstraint::PsiSymmetric, SymmetryConstraint::PsiAntisymmetric, SymmetryConstraint::PsiClosedForm,
                 SymmetryConstraint::PhiAntisymmetric, SymmetryConstraint::OutputAlternating})
    if (name == constraint_name(c)) return c;
  throw std::invalid_argument("unknown constraint: " + name);
}

std::vector<AnsatzTerm> AnsatzFamily::all() const {
  std::vector<AnsatzTerm> out = a_terms;
  out.insert(out.end(), b_terms.begin(), b_terms.end());
  return out;
}

const AnsatzTerm& AnsatzFamily::by_id(const std::string& id) const {
  for (const auto* list : {&a_terms, &b_terms})
    for (const auto& t : *list)
      if (t.id == id) return t;
  throw std::out_of_range("no ansatz term " + id);
}

AnsatzFamily generate(const TensorSignature& sig) {
  if (sig.out_contra != sig.psi_r || sig.out_cov != sig.psi_s + sig.phi_p)
    throw SignatureError("output must have type (r, s+p), got " + sig.to_string());
  certify_first_order(sig);
  AnsatzFamily fam{sig, {}, {}, {}};
  int n = 0;
  for (auto& t : shape_terms(sig, true)) fam.a_terms.push_back({"a" + std::to_string(++n), std::move(t)});
  n = 0;
  for (auto& t : shape_terms(sig, false)) fam.b_terms.push_back({"b" + std::to_string(++n), std::move(t)});
  return fam;
}

void check_constraint(const TensorSignature& sig, SymmetryConstraint c) {
  switch (c) {
    case SymmetryConstraint::PsiSymmetric:
    case SymmetryConstraint::PsiAntisymmetric:
      if (sig.psi_s != 2) throw SignatureError(std::string(constraint_name(c)) + " needs ψ with two lower indices");
      return;
    case SymmetryConstraint::PsiClosedForm:
      if (sig.psi_r != 0 || (sig.psi_s != 1 && sig.psi_s != 2))
        throw SignatureError("psi_closed_form needs ψ to be a 1-form or a 2-form");
      return;
    case SymmetryConstraint::PhiAntisymmetric:
      if (sig.phi_p != 2) throw SignatureError("phi_antisymmetric needs φ of type (1,2)");
      return;
    case SymmetryConstraint::OutputAlternating:
      if (sig.out_cov < 2) throw SignatureError("output_alternating needs at least two covariant output slots");
      return;
  }
}

AnsatzFamily apply_symmetry(const AnsatzFamily& family, SymmetryConstraint c) {
  check_constraint(family.signature, c);
  AnsatzFamily out = family;
  if (std::find(out.constraints.begin(), out.constraints.end(), c) == out.constraints.end())
    out.constraints.push_back(c);
  return out;
}

IndexedExpression average_factor_positions(const IndexedExpression& e, Head head, const std::vector<int>& positions,
                                           bool alternating) {
  IndexedExpression out;
  std::vector<int> perm(positions.size());
  std::iota(perm.begin(), perm.end(), 0);
  long n = 0;
  do ++n;
  while (std::next_permutation(perm.begin(), perm.end()));
  Rational weight(1, n);
  for (const auto& [t, c] : e.terms()) {
    auto it = std::find_if(t.begin(), t.end(), [&](const FactorSymbol& f) { return f.head == head; });
    if (it == t.end()) {
      out.add(t, c);
      continue;
    }
    if (std::count_if(t.begin(), t.end(), [&](const FactorSymbol& f) { return f.head == head; }) > 1)
      throw StructuralError("projection expects a single factor of each input");
    std::size_t at = static_cast<std::size_t>(it - t.begin());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      Term u = t;
      for (std::size_t k = 0; k < positions.size(); ++k)
        u[at].lower[static_cast<std::size_t>(positions[k])] = t[at].lower[static_cast<std::size_t>(positions[perm[k]])];
      out.add(u, c * weight * (alternating ? sign_of(perm) : 1));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

IndexedExpression project(const IndexedExpression& e, const TensorSignature& sig,
                          const std::vector<SymmetryConstraint>& constraints) {
  IndexedExpression out = e;
  for (auto c : constraints) {
    check_constraint(sig, c);
    switch (c) {
      case SymmetryConstraint::PsiSymmetric:
      case SymmetryConstraint::PsiAntisymmetric: {
        bool alt = c == SymmetryConstraint::PsiAntisymmetric;
        out = average_factor_positions(out, Head::Psi, {0, 1}, alt);
        out = average_factor_positions(out, Head::DPsi, {0, 1}, alt);
        break;
      }
      case SymmetryConstraint::PsiClosedForm:
        if (sig.psi_s == 1) {
          out = average_factor_positions(out, Head::DPsi, {0, 1}, false);
        } else {
          out = average_factor_positions(out, Head::Psi, {0, 1}, true);
          // antisymmetric part minus the totally antisymmetric part
          IndexedExpression a2 = average_factor_positions(out, Head::DPsi, {0, 1}, true);
          out = a2 - average_factor_positions(a2, Head::DPsi, {0, 1, 2}, true);
        }
        break;
      case SymmetryConstraint::PhiAntisymmetric:
        out = average_factor_positions(out, Head::Phi, {0, 1}, true);
        out = average_factor_positions(out, Head::DPhi, {0, 1}, true);
        break;
      case SymmetryConstraint::OutputAlternating: {
        std::vector<int> ords;
        for (int o = sig.out_contra; o < sig.out_contra + sig.out_cov; ++o) ords.push_back(o);
        out = alternate(out, ords);
        break;
      }
    }
  }
  return out;
}

int TermSpace::coordinate(const Term& t) {
  auto [it, inserted] = index_.try_emplace(t, static_cast<int>(terms_.size()));
  if (inserted) terms_.push_back(t);
  return it->second;
}

int TermSpace::find(const Term& t) const {
  auto it = index_.find(t);
  return it == index_.end() ? -1 : it->second;
}

RationalVector TermSpace::vectorize(const IndexedExpression& e) {
  for (const auto& [t, c] : e.terms()) coordinate(t);
  RationalVector v(terms_.size(), Rational(0));
  for (const auto& [t, c] : e.terms()) v[static_cast<std::size_t>(index_.at(t))] = c;
  return v;
}

SparseRow TermSpace::sparse(const IndexedExpression& e) {
  SparseRow row;
  for (const auto& [t, c] : e.terms()) row[coordinate(t)] = c;
  return row;
}

IndexedExpression TermSpace::expression(const RationalVector& v) const {
  IndexedExpression e;
  for (std::size_t i = 0; i < v.size() && i < terms_.size(); ++i)
    if (!is_zero(v[i])) e.add(terms_[i], v[i]);
  return e;
}

std::vector<std::size_t> representatives(const AnsatzFamily& family) {
  auto terms = family.all();
  if (family.constraints.empty()) {
    std::vector<std::size_t> all(terms.size());
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  TermSpace space;
  std::vector<SparseRow> cols;
  for (const auto& t : terms)
    cols.push_back(space.sparse(project(IndexedExpression(Monomial{1, t.term}), family.signature, family.constraints)));
  // columns = projected terms; pivot columns are the greedy independent set
  RationalMatrix m(space.dimension(), static_cast<int>(terms.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [row, v] : cols[j]) m.set(row, static_cast<int>(j), v);
  RrefResult r = rref(m);
  return {r.pivots.begin(), r.pivots.end()};
}

nlohmann::json to_json(const AnsatzFamily& family) {
  nlohmann::json j;
  j["signature"] = family.signature.to_string();
  auto cons = nlohmann::json::array();
  for (auto c : family.constraints) cons.push_back(constraint_name(c));
  j["constraints"] = cons;
  auto terms = nlohmann::json::array();
  for (const auto& t : family.all())
    terms.push_back({{"id", t.id}, {"text", to_text(t.term)}, {"factors", to_json(t.term)}});
  j["terms"] = terms;
  return j;
}

}  // namespace natop
