#include "natop/tensor_ops.hpp"

#include <algorithm>
#include <numeric>

namespace natop {

namespace {

// Dummy ordinal never produced by canonicalization of the small terms
// handled here, so it is safe as a temporary contraction name.
constexpr int kFreshDummy = 200;

Term shift_free(const Term& t, int by) {
  Term u = t;
  for (auto& f : u)
    for (auto* slots : {&f.upper, &f.lower})
      for (auto& i : *slots)
        if (i.is_free()) i = IndexName::free(i.ordinal + by);
  return u;
}

int max_arg_label(const IndexedExpression& e) {
  int mx = -1;
  for (const auto& [t, c] : e.terms())
    for (const auto& f : t)
      if (f.head == Head::Arg || f.head == Head::DArg) mx = std::max(mx, static_cast<int>(f.label));
  return mx;
}

long factorial(int n) {
  long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

void require_same_slots(const Tensor& a, const Tensor& b) {
  if (a.slots != b.slots) throw SignatureError("tensor operands have different slot types");
}

std::vector<int> iota_vector(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

Tensor phi_field(int p) {
  FactorSymbol f{Head::Phi, 0, {IndexName::free(0)}, {}};
  std::vector<Variance> slots{Variance::Upper};
  for (int k = 1; k <= p; ++k) {
    f.lower.push_back(IndexName::free(k));
    slots.push_back(Variance::Lower);
  }
  return {IndexedExpression(Monomial{1, {f}}), slots};
}

Tensor psi_field(int r, int s) {
  FactorSymbol f{Head::Psi, 0, {}, {}};
  std::vector<Variance> slots;
  for (int k = 0; k < r; ++k) {
    f.upper.push_back(IndexName::free(k));
    slots.push_back(Variance::Upper);
  }
  for (int k = r; k < r + s; ++k) {
    f.lower.push_back(IndexName::free(k));
    slots.push_back(Variance::Lower);
  }
  return {IndexedExpression(Monomial{1, {f}}), slots};
}

Tensor identity_tensor() {
  FactorSymbol f{Head::Delta, 0, {IndexName::free(0)}, {IndexName::free(1)}};
  return {IndexedExpression(Monomial{1, {f}}), {Variance::Upper, Variance::Lower}};
}

Tensor argument(int label) {
  FactorSymbol f{Head::Arg, static_cast<std::uint8_t>(label), {IndexName::free(0)}, {}};
  return {IndexedExpression(Monomial{1, {f}}), {Variance::Upper}};
}

Tensor scalar(const Rational& c) {
  IndexedExpression e;
  e.add(Term{}, c);
  return {e, {}};
}

Tensor operator+(const Tensor& a, const Tensor& b) {
  require_same_slots(a, b);
  return {a.expr + b.expr, a.slots};
}

Tensor operator-(const Tensor& a, const Tensor& b) {
  require_same_slots(a, b);
  return {a.expr - b.expr, a.slots};
}

Tensor operator*(const Rational& c, const Tensor& t) { return {scale(t.expr, c), t.slots}; }

Tensor tensor(const Tensor& a, const Tensor& b) {
  std::map<int, IndexName> shift;
  for (int k = 0; k < b.rank(); ++k) shift[k] = IndexName::free(k + a.rank());
  Tensor out{multiply(a.expr, rename_free(b.expr, shift)), a.slots};
  out.slots.insert(out.slots.end(), b.slots.begin(), b.slots.end());
  return out;
}

Tensor contract(const Tensor& t, int upper_slot, int lower_slot) {
  if (upper_slot == lower_slot || upper_slot < 0 || lower_slot < 0 || upper_slot >= t.rank() ||
      lower_slot >= t.rank())
    throw SignatureError("invalid contraction slots");
  if (t.slots[upper_slot] != Variance::Upper || t.slots[lower_slot] != Variance::Lower)
    throw SignatureError("contraction needs an upper and a lower slot");
  std::map<int, IndexName> ren;
  Tensor out;
  int next = 0;
  for (int k = 0; k < t.rank(); ++k) {
    if (k == upper_slot || k == lower_slot) {
      ren[k] = IndexName::dummy(kFreshDummy);
    } else {
      ren[k] = IndexName::free(next++);
      out.slots.push_back(t.slots[k]);
    }
  }
  out.expr = rename_free(t.expr, ren);
  return out;
}

Tensor arrange(const Tensor& t, const std::vector<int>& order) {
  if (static_cast<int>(order.size()) != t.rank()) throw SignatureError("arrangement size mismatch");
  std::vector<int> check = order;
  std::sort(check.begin(), check.end());
  if (check != iota_vector(t.rank())) throw SignatureError("arrangement is not a permutation");
  std::map<int, IndexName> ren;
  Tensor out{{}, t.slots};
  for (int j = 0; j < t.rank(); ++j) {
    ren[j] = IndexName::free(order[j]);
    out.slots[order[j]] = t.slots[j];
  }
  out.expr = rename_free(t.expr, ren);
  return out;
}

Tensor partial(const Tensor& t) {
  Tensor out{{}, {Variance::Lower}};
  out.slots.insert(out.slots.end(), t.slots.begin(), t.slots.end());
  for (const auto& [term, c] : t.expr.terms()) {
    Term shifted = shift_free(term, 1);
    for (std::size_t i = 0; i < shifted.size(); ++i) {
      Head h = shifted[i].head;
      if (h == Head::Delta || h == Head::Dim) continue;
      if (h == Head::Conn) throw StructuralError("cannot differentiate a connection symbol");
      if (is_derivative(h)) throw StructuralError("second derivatives are outside the first-order fragment");
      Term d = shifted;
      d[i].head = derivative_of(h);
      d[i].lower.push_back(IndexName::free(0));
      out.expr.add(d, c);
    }
  }
  return out;
}

Tensor alternate(const Tensor& t, const std::vector<int>& slots) {
  for (int s : slots)
    if (s < 0 || s >= t.rank() || t.slots[s] != t.slots[slots.front()])
      throw SignatureError("alternation over slots of mixed variance");
  return {natop::alternate(t.expr, slots), t.slots};
}

Tensor symmetrize(const Tensor& t, const std::vector<int>& slots) {
  for (int s : slots)
    if (s < 0 || s >= t.rank() || t.slots[s] != t.slots[slots.front()])
      throw SignatureError("symmetrization over slots of mixed variance");
  return {natop::symmetrize(t.expr, slots), t.slots};
}

Tensor alternate_all(const Tensor& t) {
  if (t.rank() < 2) return t;
  return alternate(t, iota_vector(t.rank()));
}

Tensor ext_d(const Tensor& form, DConvention conv) {
  for (auto v : form.slots)
    if (v != Variance::Lower) throw SignatureError("exterior derivative needs a covariant tensor");
  Tensor d = alternate_all(partial(form));
  if (conv == DConvention::Determinant) d = Rational(form.rank() + 1) * d;
  return d;
}

Tensor insert(const Tensor& t, int slot, const Tensor& vector) {
  if (vector.rank() < 1 || vector.slots[0] != Variance::Upper)
    throw SignatureError("inserted tensor must lead with an upper slot");
  return contract(tensor(t, vector), t.rank(), slot);
}

Tensor feed(const Tensor& t, const std::vector<Tensor>& vectors) {
  Tensor out = t;
  for (const auto& v : vectors) {
    auto it = std::find(out.slots.begin(), out.slots.end(), Variance::Lower);
    if (it == out.slots.end()) throw SignatureError("no lower slot left for an argument");
    out = insert(out, static_cast<int>(it - out.slots.begin()), v);
  }
  return out;
}

Tensor compose(const Tensor& form, int slot, const Tensor& phi11) {
  if (phi11.slots != std::vector<Variance>{Variance::Upper, Variance::Lower})
    throw SignatureError("composition needs a (1,1) tensor");
  // insert leaves φ's lower slot last
  Tensor c = insert(form, slot, phi11);
  std::vector<int> order;
  for (int k = 0; k < c.rank(); ++k)
    if (k != slot) order.push_back(k);
  order.push_back(slot);
  return arrange(c, order);
}

Tensor i_phi(const Tensor& form, const Tensor& phi11) {
  Tensor sum{{}, form.slots};
  for (int l = 0; l < form.rank(); ++l) sum = sum + compose(form, l, phi11);
  return sum;
}

Tensor i_S(const Tensor& form, const Tensor& S) {
  if (S.slots != std::vector<Variance>{Variance::Upper, Variance::Lower, Variance::Lower})
    throw SignatureError("insertion needs a (1,2) tensor");
  int k = form.rank();
  if (k == 0) return {{}, {Variance::Lower}};
  // ω(S(X0,X1), X2, ..., Xk)
  Tensor t = insert(form, 0, S);
  std::vector<int> order;
  for (int j = 0; j < k - 1; ++j) order.push_back(j + 2);
  order.push_back(0);
  order.push_back(1);
  t = arrange(t, order);
  return Rational(factorial(k + 1), 2 * factorial(k - 1)) * alternate_all(t);
}

Tensor lie_derivative_along(const Tensor& form, const Tensor& phi11, DConvention conv) {
  return i_phi(ext_d(form, conv), phi11) - ext_d(i_phi(form, phi11), conv);
}

Tensor lie_derivative_along_S(const Tensor& form, const Tensor& S, DConvention conv) {
  return i_S(ext_d(form, conv), S) + ext_d(i_S(form, S), conv);
}

Tensor bracket(const Tensor& v, const Tensor& w) {
  auto one_way = [](const Tensor& a, const Tensor& b) { return contract(tensor(a, partial(b)), 0, 1); };
  return one_way(v, w) - one_way(w, v);
}

Tensor directional(const Tensor& v, const Tensor& f) {
  if (f.rank() != 0) throw SignatureError("directional derivative of a non-scalar");
  return contract(tensor(v, partial(f)), 0, 1);
}

Tensor lie_derivative(const Tensor& v, const Tensor& covariant) {
  for (auto s : covariant.slots)
    if (s != Variance::Lower) throw SignatureError("Lie derivative implemented for covariant tensors");
  int k = covariant.rank();
  int base = std::max(max_arg_label(v.expr), max_arg_label(covariant.expr)) + 1;
  std::vector<Tensor> args;
  std::vector<int> labels;
  for (int j = 0; j < k; ++j) {
    labels.push_back(base + j);
    args.push_back(argument(base + j));
  }
  Tensor value = directional(v, feed(covariant, args));
  for (int j = 0; j < k; ++j) {
    auto moved = args;
    moved[j] = bracket(v, args[j]);
    value = value - feed(covariant, moved);
  }
  return strip_arguments(value, labels);
}

Tensor fn_bracket(const Tensor& k, const Tensor& l) {
  int base = std::max(max_arg_label(k.expr), max_arg_label(l.expr)) + 1;
  Tensor x = argument(base), y = argument(base + 1);
  auto on = [](const Tensor& a, const Tensor& vec) { return feed(a, {vec}); };
  Tensor value = bracket(on(k, x), on(l, y)) - bracket(on(k, y), on(l, x)) -
                 on(l, bracket(on(k, x), y) - bracket(on(k, y), x)) -
                 on(k, bracket(x, on(l, y)) - bracket(y, on(l, x))) +
                 on(l, on(k, bracket(x, y))) + on(k, on(l, bracket(x, y)));
  return strip_arguments(value, {base, base + 1});
}

Tensor strip_arguments(const Tensor& t, const std::vector<int>& labels) {
  Tensor out{{}, t.slots};
  for (std::size_t n = 0; n < labels.size(); ++n) out.slots.push_back(Variance::Lower);
  for (const auto& [term, c] : t.expr.terms()) {
    Term u = term;
    for (std::size_t n = 0; n < labels.size(); ++n) {
      auto label = static_cast<std::uint8_t>(labels[n]);
      int hits = 0;
      for (auto& f : u) {
        if ((f.head != Head::Arg && f.head != Head::DArg) || f.label != label) continue;
        if (f.head == Head::DArg) throw NotTensorialError("argument derivative survives: " + to_text(term));
        ++hits;
        f = FactorSymbol{Head::Delta, 0, {f.upper[0]}, {IndexName::free(t.rank() + static_cast<int>(n))}};
      }
      if (hits != 1) throw NotTensorialError("expression is not linear in an argument: " + to_text(term));
    }
    out.expr.add(u, c);
  }
  return out;
}

}  // namespace natop
