#include "natop/catalog.hpp"

#include <array>
#include <functional>

#include "natop/parse.hpp"

namespace natop {

namespace {

using DC = DConvention;

Tensor arg(int k) { return argument(k); }
Tensor tr(const Tensor& t11) { return contract(t11, 0, 1); }
Tensor d(const Tensor& t, DC conv = DC::Determinant) { return ext_d(t, conv); }
Tensor at(const Tensor& t, const std::vector<Tensor>& vectors) { return feed(t, vectors); }
Tensor mul(const Tensor& a, const Tensor& b) { return tensor(a, b); }
Tensor components(const Tensor& value, int n) {
  std::vector<int> labels;
  for (int k = 0; k < n; ++k) labels.push_back(k);
  return strip_arguments(value, labels);
}

// Moves upper slots to the front, keeping the relative order of both kinds.
Tensor uppers_first(const Tensor& t) {
  std::vector<int> order(static_cast<std::size_t>(t.rank()));
  int next = 0;
  for (int k = 0; k < t.rank(); ++k)
    if (t.slots[k] == Variance::Upper) order[static_cast<std::size_t>(k)] = next++;
  for (int k = 0; k < t.rank(); ++k)
    if (t.slots[k] == Variance::Lower) order[static_cast<std::size_t>(k)] = next++;
  return arrange(t, order);
}

// (L_{φ(U)} ψ - L_U(ψ∘φ))(V, W) for a 2-tensor ψ, with ψ∘φ given.
Tensor yano_ako_piece(const Tensor& phi, const Tensor& psi, const Tensor& psi_phi, const Tensor& u,
                      const std::vector<Tensor>& rest) {
  return at(lie_derivative(at(phi, {u}), psi) - lie_derivative(u, psi_phi), rest);
}

Tensor yano_ako_phi1(const Tensor& phi, const Tensor& psi) {
  Tensor X = arg(0), Y = arg(1), Z = arg(2);
  Tensor p1 = compose(psi, 0, phi), p2 = compose(psi, 1, phi);
  Tensor v = yano_ako_piece(phi, psi, p1, X, {Y, Z}) - yano_ako_piece(phi, psi, p1, Z, {Y, X}) +
             at(p2, {Y, bracket(X, Z)}) - at(p1, {Y, bracket(X, Z)});
  return components(v, 3);
}

Tensor yano_ako_phi2(const Tensor& phi, const Tensor& psi) {
  Tensor X = arg(0), Y = arg(1), Z = arg(2);
  Tensor p1 = compose(psi, 0, phi), p2 = compose(psi, 1, phi);
  Tensor v = yano_ako_piece(phi, psi, p2, X, {Y, Z}) - yano_ako_piece(phi, psi, p2, Y, {X, Z}) -
             at(p2, {bracket(X, Y), Z}) + at(p1, {bracket(X, Y), Z});
  return components(v, 3);
}

struct Entry {
  std::string name, family, description;
  TensorSignature sig;
  std::vector<SymmetryConstraint> domain;
  std::function<IndexedExpression()> build;
};

// The six orderings used by the permutation families, as (first, second, third).
constexpr std::array<std::array<int, 3>, 6> kOrderings{{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 0, 1}, {1, 2, 0}, {2, 1, 0}}};
// One argument singled out, the other two in order.
constexpr std::array<std::array<int, 3>, 3> kSplits{{{0, 1, 2}, {1, 0, 2}, {2, 0, 1}}};
const char* kArgName[] = {"X", "Y", "Z"};

std::vector<Entry> entries() {
  std::vector<Entry> out;
  auto add = [&](std::string name, std::string family, std::string desc, TensorSignature sig,
                 std::function<Tensor()> f, std::vector<SymmetryConstraint> domain = {}) {
    out.push_back({std::move(name), std::move(family), std::move(desc), sig, std::move(domain),
                   [f = std::move(f)] { return uppers_first(f()).expr; }});
  };
  const auto std_sig = TensorSignature::standard;

  // vector fields X (φ) and Y (ψ)
  {
    auto sig = std_sig(0, 1, 0);
    add("lie_bracket", "vector_fields", "[X,Y]", sig, [] { return bracket(phi_field(0), psi_field(1, 0)); });
    out.push_back({"nonexample_a2", "nonexamples", "X^i ∂_m Y^m", sig, {},
                   [] { return parse_expression("X^i d_m Y^m", "i"); }});
  }
  // vector field X and 1-form ψ
  {
    auto sig = std_sig(0, 0, 1);
    add("d_of_pairing", "vector_one_form", "d(ψ(X))", sig, [] { return d(at(psi_field(0, 1), {phi_field(0)})); });
    add("insert_d", "vector_one_form", "i_X dψ", sig, [] { return at(d(psi_field(0, 1)), {phi_field(0)}); });
  }
  // vector field X and (0,2) tensor ψ
  {
    auto sig = std_sig(0, 0, 2);
    auto psi = [] { return psi_field(0, 2); };
    auto psi_t = [] { return arrange(psi_field(0, 2), {1, 0}); };
    add("lie_derivative_02", "vector_two_tensor", "L_X ψ", sig, [=] { return lie_derivative(phi_field(0), psi()); });
    add("lie_derivative_02_transposed", "vector_two_tensor", "L_X ψ~", sig,
        [=] { return lie_derivative(phi_field(0), psi_t()); });
    add("d_of_contraction", "vector_two_tensor", "d(X⌟ψ)", sig, [=] { return d(at(psi(), {phi_field(0)})); });
    add("d_of_contraction_transposed", "vector_two_tensor", "d(X⌟ψ~)", sig,
        [=] { return d(at(psi_t(), {phi_field(0)})); });
  }
  // two (1,1) tensors φ, ψ into (1,2)
  {
    auto sig = std_sig(1, 1, 1);
    const std::string fam = "endomorphism_pair";
    auto phi = [] { return phi_field(1); };
    auto psi = [] { return psi_field(1, 1); };
    auto I = [] { return identity_tensor(); };
    auto dtr_phi = [=] { return d(tr(phi())); };
    auto dtr_psi = [=] { return d(tr(psi())); };
    auto dtr_prod = [=] { return d(tr(contract(tensor(phi(), psi()), 2, 1))); };
    add("dtr_phi_x_psi", fam, "d(tr φ) ⊗ ψ", sig, [=] { return mul(dtr_phi(), psi()); });
    add("psi_x_dtr_phi", fam, "ψ ⊗ d(tr φ)", sig, [=] { return mul(psi(), dtr_phi()); });
    add("dtr_psi_x_phi", fam, "d(tr ψ) ⊗ φ", sig, [=] { return mul(dtr_psi(), phi()); });
    add("phi_x_dtr_psi", fam, "φ ⊗ d(tr ψ)", sig, [=] { return mul(phi(), dtr_psi()); });
    add("trpsi_dtr_phi_x_id", fam, "(tr ψ) d(tr φ) ⊗ I", sig,
        [=] { return mul(tr(psi()), mul(dtr_phi(), I())); });
    add("trpsi_id_x_dtr_phi", fam, "(tr ψ) I ⊗ d(tr φ)", sig,
        [=] { return mul(tr(psi()), mul(I(), dtr_phi())); });
    add("trphi_dtr_psi_x_id", fam, "(tr φ) d(tr ψ) ⊗ I", sig,
        [=] { return mul(tr(phi()), mul(dtr_psi(), I())); });
    add("trphi_id_x_dtr_psi", fam, "(tr φ) I ⊗ d(tr ψ)", sig,
        [=] { return mul(tr(phi()), mul(I(), dtr_psi())); });
    add("dtr_phi_o_psi_x_id", fam, "(d(tr φ)∘ψ) ⊗ I", sig,
        [=] { return mul(compose(dtr_phi(), 0, psi()), I()); });
    add("id_x_dtr_phi_o_psi", fam, "I ⊗ (d(tr φ)∘ψ)", sig,
        [=] { return mul(I(), compose(dtr_phi(), 0, psi())); });
    add("dtr_psi_o_phi_x_id", fam, "(d(tr ψ)∘φ) ⊗ I", sig,
        [=] { return mul(compose(dtr_psi(), 0, phi()), I()); });
    add("id_x_dtr_psi_o_phi", fam, "I ⊗ (d(tr ψ)∘φ)", sig,
        [=] { return mul(I(), compose(dtr_psi(), 0, phi())); });
    add("dtr_phipsi_x_id", fam, "d(tr(φ∘ψ)) ⊗ I", sig, [=] { return mul(dtr_prod(), I()); });
    add("id_x_dtr_phipsi", fam, "I ⊗ d(tr(φ∘ψ))", sig, [=] { return mul(I(), dtr_prod()); });
    add("froelicher_nijenhuis", fam, "N(φ,ψ)", sig, [=] { return fn_bracket(phi(), psi()); });
  }
  // (1,1) tensor φ and 1-form ψ into (0,2)
  {
    auto sig = std_sig(1, 0, 1);
    const std::string fam = "endomorphism_one_form";
    auto phi = [] { return phi_field(1); };
    auto psi = [] { return psi_field(0, 1); };
    auto dpsi = [=] { return d(psi()); };
    add("trphi_dpsi", fam, "(tr φ) dψ", sig, [=] { return mul(tr(phi()), dpsi()); });
    add("psi_x_dtr_phi_1", fam, "ψ ⊗ d(tr φ)", sig, [=] { return mul(psi(), d(tr(phi()))); });
    add("dtr_phi_x_psi_1", fam, "d(tr φ) ⊗ ψ", sig, [=] { return mul(d(tr(phi())), psi()); });
    add("dpsi_o1_phi", fam, "dψ ∘1 φ", sig, [=] { return compose(dpsi(), 0, phi()); });
    add("dpsi_o2_phi", fam, "dψ ∘2 φ", sig, [=] { return compose(dpsi(), 1, phi()); });
    add("d_psi_o_phi", fam, "d(ψ∘φ)", sig, [=] { return d(compose(psi(), 0, phi())); });
    add("yano_ako_phi", "extras", "(L_{φX}ψ - L_X(ψ∘φ))(Y)", sig, [=] {
      Tensor X = arg(0), Y = arg(1);
      Tensor v = at(lie_derivative(at(phi(), {X}), psi()) - lie_derivative(X, compose(psi(), 0, phi())), {Y});
      return components(v, 2);
    });
    add("lie_derivative_wrt_phi", "extras", "L_φ ψ = i_φ dψ - d i_φ ψ", sig,
        [=] { return lie_derivative_along(psi(), phi(), DC::Determinant); });
  }
  // (1,1) tensor φ and (0,2) tensor ψ into (0,3)
  {
    auto sig = std_sig(1, 0, 2);
    auto phi = [] { return phi_field(1); };
    auto psi = [] { return psi_field(0, 2); };
    auto alt_psi = [=] { return alternate(psi(), {0, 1}); };
    for (const auto& o : kOrderings) {
      std::string n = std::string("psi") + kArgName[o[0]] + kArgName[o[1]] + "_dtr_phi" + kArgName[o[2]];
      std::string desc = std::string("ψ(") + kArgName[o[0]] + "," + kArgName[o[1]] + ") d(tr φ)(" + kArgName[o[2]] + ")";
      add(n, "trace_products", desc, sig, [=] {
        Tensor v = mul(at(psi(), {arg(o[0]), arg(o[1])}), at(d(tr(phi())), {arg(o[2])}));
        return components(v, 3);
      });
    }
    // these use d(α) = Alt(∂α) on 2-forms
    const std::string fam = "alternated_differentials";
    auto dA = [](const Tensor& t) { return d(t, DC::Alternation); };
    add("trphi_d_alt_psi", fam, "(tr φ) d(Alt ψ)", sig, [=] { return mul(tr(phi()), dA(alt_psi())); });
    add("d_alt_psi_o1_phi", fam, "d(Alt ψ) ∘1 φ", sig, [=] { return compose(dA(alt_psi()), 0, phi()); });
    add("d_alt_psi_o2_phi", fam, "d(Alt ψ) ∘2 φ", sig, [=] { return compose(dA(alt_psi()), 1, phi()); });
    add("d_alt_psi_o3_phi", fam, "d(Alt ψ) ∘3 φ", sig, [=] { return compose(dA(alt_psi()), 2, phi()); });
    add("d_alt_psi_o1phi", fam, "d(Alt(ψ ∘1 φ))", sig,
        [=] { return dA(alternate(compose(psi(), 0, phi()), {0, 1})); });
    add("d_alt_psi_o2phi", fam, "d(Alt(ψ ∘2 φ))", sig,
        [=] { return dA(alternate(compose(psi(), 1, phi()), {0, 1})); });
    add("yano_ako_phi1", "yano_ako_pair", "Φ1(φ,ψ)", sig, [=] { return yano_ako_phi1(phi(), psi()); });
    add("yano_ako_phi2", "yano_ako_pair", "Φ2(φ,ψ)", sig, [=] { return yano_ako_phi2(phi(), psi()); });
    add("lie_derivative_wrt_phi_2form", "extras", "L_φ ψ = i_φ dψ - d i_φ ψ, ψ a 2-form", sig,
        [=] { return lie_derivative_along(alt_psi(), phi(), DC::Determinant); }, {SymmetryConstraint::PsiAntisymmetric});
  }
  // (1,2) tensor S and 1-form ψ into (0,3)
  {
    auto sig = std_sig(2, 0, 1);
    auto S = [] { return phi_field(2); };
    auto alt_S = [=] { return alternate(S(), {1, 2}); };
    auto psi = [] { return psi_field(0, 1); };
    auto c1 = [=] { return contract(S(), 0, 1); };
    auto c2 = [=] { return contract(S(), 0, 2); };
    for (int which = 1; which <= 2; ++which)
      for (const auto& s : kSplits) {
        std::string n = "c" + std::to_string(which) + "S" + kArgName[s[0]] + "_dpsi" + kArgName[s[1]] + kArgName[s[2]];
        std::string desc = "(C" + std::to_string(which) + " S)(" + kArgName[s[0]] + ") dψ(" + kArgName[s[1]] + "," +
                           kArgName[s[2]] + ")";
        add(n, "trace_times_dpsi", desc, sig, [=] {
          Tensor c = which == 1 ? c1() : c2();
          return components(mul(at(c, {arg(s[0])}), at(d(psi()), {arg(s[1]), arg(s[2])})), 3);
        });
      }
    for (const auto& o : kOrderings) {
      std::string n = std::string("dpsi_S") + kArgName[o[0]] + kArgName[o[1]] + "_" + kArgName[o[2]];
      std::string desc = std::string("dψ(S(") + kArgName[o[0]] + "," + kArgName[o[1]] + ")," + kArgName[o[2]] + ")";
      add(n, "dpsi_after_S", desc, sig, [=] {
        return components(at(d(psi()), {at(S(), {arg(o[0]), arg(o[1])}), arg(o[2])}), 3);
      });
    }
    for (int which = 1; which <= 2; ++which)
      for (const auto& s : kSplits) {
        std::string n = std::string("psi") + kArgName[s[0]] + "_dc" + std::to_string(which) + "S" + kArgName[s[1]] +
                        kArgName[s[2]];
        std::string desc = std::string("ψ(") + kArgName[s[0]] + ") d(C" + std::to_string(which) + " S)(" +
                           kArgName[s[1]] + "," + kArgName[s[2]] + ")";
        add(n, "psi_times_dtrace", desc, sig, [=] {
          Tensor c = which == 1 ? c1() : c2();
          return components(mul(at(psi(), {arg(s[0])}), at(d(c), {arg(s[1]), arg(s[2])})), 3);
        });
      }
    add("d_psi_o_alt_S", "d_psi_alt_S", "d(ψ ∘ Alt S)", sig, [=] { return d(insert(psi(), 0, alt_S())); });

    const std::vector<SymmetryConstraint> forms{SymmetryConstraint::PhiAntisymmetric};
    add("lie_derivative_wrt_S", "extras", "L_S ψ = i_S dψ + d i_S ψ", sig,
        [=] { return lie_derivative_along_S(psi(), alt_S(), DC::Determinant); }, forms);
    add("yano_ako_original", "extras", "(L_{S(X,Y)}ψ)(Z) - (L_X(ψ∘S))(Z,Y) - (L_Y(ψ∘S))(X,Z) + (ψ∘S)([X,Y],Z)", sig,
        [=] {
          Tensor X = arg(0), Y = arg(1), Z = arg(2);
          Tensor s = alt_S();
          Tensor ps = insert(psi(), 0, s);
          Tensor v = at(lie_derivative(at(s, {X, Y}), psi()), {Z}) - at(lie_derivative(X, ps), {Z, Y}) -
                     at(lie_derivative(Y, ps), {X, Z}) + at(ps, {bracket(X, Y), Z});
          return components(v, 3);
        },
        forms);
  }
  return out;
}

std::vector<NamedOperator> build_catalog() {
  std::vector<NamedOperator> out;
  for (auto& e : entries()) {
    IndexedExpression x = e.build();
    out.push_back({e.name, e.family, e.description, e.sig, e.domain, std::move(x)});
  }
  return out;
}

}  // namespace

const std::vector<NamedOperator>& catalog() {
  static const std::vector<NamedOperator> ops = build_catalog();
  return ops;
}

const NamedOperator& find_operator(const std::string& name) {
  for (const auto& op : catalog())
    if (op.name == name) return op;
  throw CatalogError("unknown operator: " + name);
}

IndexedExpression expand(const std::string& name, const TensorSignature& sig) {
  const NamedOperator& op = find_operator(name);
  if (!(op.signature == sig))
    throw CatalogError(name + " is defined for " + op.signature.to_string() + ", not " + sig.to_string());
  return op.expansion;
}

std::vector<std::string> family_names(const std::string& family) {
  std::vector<std::string> out;
  for (const auto& op : catalog())
    if (op.family == family) out.push_back(op.name);
  if (out.empty()) throw CatalogError("unknown family: " + family);
  return out;
}

std::vector<std::string> generators_for(const TensorSignature& sig) {
  std::vector<std::string> families;
  if (sig == TensorSignature::standard(0, 1, 0)) families = {"vector_fields"};
  if (sig == TensorSignature::standard(0, 0, 1)) families = {"vector_one_form"};
  if (sig == TensorSignature::standard(0, 0, 2)) families = {"vector_two_tensor"};
  if (sig == TensorSignature::standard(1, 1, 1)) families = {"endomorphism_pair"};
  if (sig == TensorSignature::standard(1, 0, 1)) families = {"endomorphism_one_form"};
  if (sig == TensorSignature::standard(1, 0, 2)) families = {"trace_products", "alternated_differentials", "yano_ako_pair"};
  if (sig == TensorSignature::standard(2, 0, 1))
    families = {"trace_times_dpsi", "dpsi_after_S", "psi_times_dtrace", "d_psi_alt_S"};
  std::vector<std::string> out;
  for (const auto& f : families)
    for (auto& n : family_names(f)) out.push_back(std::move(n));
  return out;
}

bool is_natural(const NamedOperator& op) {
  IndexedExpression e = project(op.expansion, op.signature, op.domain);
  return project(connection_part(e), op.signature, op.domain).is_zero();
}

int span_dimension(const std::vector<std::string>& names, const TensorSignature& sig,
                   const std::vector<SymmetryConstraint>& constraints) {
  TermSpace space;
  std::vector<SparseRow> rows;
  for (const auto& n : names) rows.push_back(space.sparse(project(expand(n, sig), sig, constraints)));
  RationalMatrix m(0, space.dimension());
  for (const auto& r : rows) m.append_row(r);
  return rref(m).rank;
}

ChangeOfBasis match_basis(const OperatorBasis& basis, const std::vector<std::string>& names) {
  ChangeOfBasis out;
  out.names = names;
  out.basis_dimension = basis.dimension();
  TermSpace space;
  std::vector<IndexedExpression> named;
  for (const auto& n : names) named.push_back(project(expand(n, basis.signature), basis.signature, basis.constraints));
  for (const auto& e : named) space.vectorize(e);
  for (const auto& e : basis.operators) space.vectorize(e);
  std::vector<RationalVector> nv, bv;
  for (const auto& e : named) nv.push_back(space.vectorize(e));
  for (const auto& e : basis.operators) bv.push_back(space.vectorize(e));

  out.named_rank = rank_of(nv, space.dimension());
  bool all = true;
  for (std::size_t k = 0; k < nv.size(); ++k) {
    Membership m = solve_membership(nv[k], bv);
    out.named_in_basis.push_back(m.coordinates);
    if (!m.member && all) {
      all = false;
      out.witness = names[k];
      out.residual = space.expression(m.residual);
    }
  }
  for (std::size_t k = 0; k < bv.size(); ++k) {
    Membership m = solve_membership(bv[k], nv);
    out.basis_in_named.push_back(m.coordinates);
    if (!m.member && all) {
      all = false;
      out.witness = "basis element " + std::to_string(k + 1);
      out.residual = space.expression(m.residual);
    }
  }
  out.spans_equal = all;
  out.invertible = all && out.named_rank == static_cast<int>(names.size()) &&
                   static_cast<int>(names.size()) == basis.dimension();
  return out;
}

nlohmann::json to_json(const NamedOperator& op) {
  auto dom = nlohmann::json::array();
  for (auto c : op.domain) dom.push_back(constraint_name(c));
  return {{"name", op.name},
          {"family", op.family},
          {"description", op.description},
          {"signature", op.signature.to_string()},
          {"domain", dom},
          {"text", to_text(op.expansion)},
          {"expansion", to_json(op.expansion)}};
}

nlohmann::json to_json(const ChangeOfBasis& change) {
  auto rows = [](const std::vector<RationalVector>& vs) {
    auto j = nlohmann::json::array();
    for (const auto& v : vs) {
      auto r = nlohmann::json::array();
      for (const auto& x : v) r.push_back(to_ratio_string(x));
      j.push_back(r);
    }
    return j;
  };
  nlohmann::json j{{"names", change.names},
                   {"spans_equal", change.spans_equal},
                   {"invertible", change.invertible},
                   {"named_rank", change.named_rank},
                   {"basis_dimension", change.basis_dimension},
                   {"named_in_basis", rows(change.named_in_basis)},
                   {"basis_in_named", rows(change.basis_in_named)}};
  if (change.witness) {
    j["witness"] = *change.witness;
    j["residual"] = to_text(change.residual);
  }
  return j;
}

nlohmann::json catalog_json() {
  auto j = nlohmann::json::array();
  for (const auto& op : catalog()) j.push_back(to_json(op));
  return j;
}

}  // namespace natop
