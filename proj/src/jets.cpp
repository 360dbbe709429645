#include "natop/jets.hpp"

#include <functional>
#include <stdexcept>

#include "natop/tensor_ops.hpp"

namespace natop {

namespace {

using Matrix = std::vector<std::vector<Rational>>;

Matrix identity_matrix(int n) {
  Matrix m(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix c(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (!is_zero(a[i][k]))
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Matrix inverse(Matrix a) {
  const std::size_t n = a.size();
  Matrix inv = identity_matrix(static_cast<int>(n));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && is_zero(a[piv][col])) ++piv;
    if (piv == n) throw std::invalid_argument("singular linear part");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Rational lead = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= lead;
      inv[col][j] /= lead;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || is_zero(a[r][col])) continue;
      Rational f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

int power(int base, int exp) {
  int r = 1;
  for (int k = 0; k < exp; ++k) r *= base;
  return r;
}

std::vector<int> unflatten(int flat, int n, int dim) {
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int t = n - 1; t >= 0; --t) {
    idx[static_cast<std::size_t>(t)] = flat % dim;
    flat /= dim;
  }
  return idx;
}

std::vector<Variance> field_slots(const PolyField& f) {
  std::vector<Variance> s(static_cast<std::size_t>(f.upper), Variance::Upper);
  s.insert(s.end(), static_cast<std::size_t>(f.lower), Variance::Lower);
  return s;
}

// Value and first partials of a field at a point.
struct PointJet {
  int dim = 0;
  std::vector<Rational> value;
  std::vector<Rational> partials;  // [component * dim + k]
};

PointJet jet_at(const PolyField& f, const std::vector<Rational>& point) {
  PointJet j{f.dim, {}, {}};
  for (const auto& p : f.components) {
    j.value.push_back(p.evaluate(point));
    for (int k = 0; k < f.dim; ++k) j.partials.push_back(p.derivative(k).evaluate(point));
  }
  return j;
}

struct TransformData {
  Matrix L, Linv;
  std::vector<Matrix> H;         // H[k][a][b] = ∂_k ∂_b f^a (0)
  std::vector<Matrix> dJinv;     // ∂_k of the inverse Jacobian at 0
};

TransformData transform_data(const DiffeoJet& f) {
  TransformData t;
  t.L = f.linear;
  t.Linv = inverse(f.linear);
  std::vector<Rational> origin(static_cast<std::size_t>(f.dim), Rational(0));
  for (int k = 0; k < f.dim; ++k) {
    Matrix h(static_cast<std::size_t>(f.dim), std::vector<Rational>(static_cast<std::size_t>(f.dim), Rational(0)));
    for (int a = 0; a < f.dim; ++a)
      for (int b = 0; b < f.dim; ++b) h[a][b] = f.quadratic[a].derivative(b).derivative(k).evaluate(origin);
    t.H.push_back(h);
    Matrix d = multiply(multiply(t.Linv, h), t.Linv);
    for (auto& row : d)
      for (auto& x : row) x = -x;
    t.dJinv.push_back(d);
  }
  return t;
}

// 1-jet at the origin of f*T from the 1-jet of T at the origin. Partials may
// be empty, in which case only the value is transformed.
PointJet transform(const std::vector<Variance>& slots, const PointJet& src, const TransformData& t, bool with_partials) {
  const int dim = src.dim;
  const int n = static_cast<int>(slots.size());
  const int count = power(dim, n);
  PointJet out{dim, std::vector<Rational>(static_cast<std::size_t>(count), Rational(0)), {}};
  if (with_partials) out.partials.assign(static_cast<std::size_t>(count * dim), Rational(0));

  // factor for slot s mapping output index i from source index p
  auto base = [&](int s, int i, int p) -> const Rational& {
    return slots[s] == Variance::Upper ? t.Linv[i][p] : t.L[p][i];
  };
  auto slope = [&](int s, int k, int i, int p) -> const Rational& {
    return slots[s] == Variance::Upper ? t.dJinv[k][i][p] : t.H[k][p][i];
  };

  for (int I = 0; I < count; ++I) {
    auto iv = unflatten(I, n, dim);
    for (int P = 0; P < count; ++P) {
      auto pv = unflatten(P, n, dim);
      Rational prod = 1;
      for (int s = 0; s < n; ++s) prod *= base(s, iv[s], pv[s]);
      const Rational& v0 = src.value[static_cast<std::size_t>(P)];
      if (!is_zero(prod)) out.value[static_cast<std::size_t>(I)] += prod * v0;
      if (!with_partials) continue;
      for (int k = 0; k < dim; ++k) {
        Rational acc = 0;
        if (!is_zero(v0)) {
          for (int s = 0; s < n; ++s) {
            const Rational& sl = slope(s, k, iv[s], pv[s]);
            if (is_zero(sl)) continue;
            Rational term = sl;
            for (int u = 0; u < n; ++u)
              if (u != s) term *= base(u, iv[u], pv[u]);
            acc += term * v0;
          }
        }
        if (!is_zero(prod)) {
          Rational chain = 0;
          for (int c = 0; c < dim; ++c) chain += src.partials[static_cast<std::size_t>(P * dim + c)] * t.L[c][k];
          acc += prod * chain;
        }
        out.partials[static_cast<std::size_t>(I * dim + k)] += acc;
      }
    }
  }
  return out;
}

Rational pick(const PointJet& j, const std::vector<int>& idx, int deriv, int dim) {
  int flat = 0;
  for (int v : idx) flat = flat * dim + v;
  if (deriv < 0) return j.value.at(static_cast<std::size_t>(flat));
  return j.partials.at(static_cast<std::size_t>(flat * dim + deriv));
}

}  // namespace

Polynomial Polynomial::constant(int nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(std::vector<int>(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

Polynomial Polynomial::random(int nvars, int degree, std::mt19937_64& rng, int range) {
  std::uniform_int_distribution<int> coeff(-range, range);
  Polynomial p(nvars);
  std::vector<int> e(static_cast<std::size_t>(nvars), 0);
  // all exponent vectors with total degree <= degree, in lexicographic order
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == nvars) {
      p.add_term(e, coeff(rng));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[static_cast<std::size_t>(var)] = k;
      rec(var + 1, left - k);
    }
    e[static_cast<std::size_t>(var)] = 0;
  };
  rec(0, degree);
  return p;
}

void Polynomial::add_term(const std::vector<int>& exponents, const Rational& c) {
  if (static_cast<int>(exponents.size()) != nvars_) throw std::invalid_argument("exponent length mismatch");
  if (is_zero(c)) return;
  Rational& slot = terms_[exponents];
  slot += c;
  if (is_zero(slot)) terms_.erase(exponents);
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational v = c;
    for (int k = 0; k < nvars_; ++k)
      for (int r = 0; r < e[static_cast<std::size_t>(k)]; ++r) v *= point[static_cast<std::size_t>(k)];
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial d(nvars_);
  for (const auto& [e, c] : terms_) {
    int k = e[static_cast<std::size_t>(var)];
    if (k == 0) continue;
    auto f = e;
    f[static_cast<std::size_t>(var)] = k - 1;
    d.add_term(f, c * k);
  }
  return d;
}

int Polynomial::degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    deg = std::max(deg, s);
  }
  return deg;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial p(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      auto e = ea;
      for (std::size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
      p.add_term(e, ca * cb);
    }
  return p;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial p = a;
  for (const auto& [e, c] : b.terms_) p.add_term(e, c);
  return p;
}

PolyField PolyField::zero(int upper, int lower, int dim) {
  PolyField f{upper, lower, dim, {}};
  f.components.assign(static_cast<std::size_t>(power(dim, upper + lower)), Polynomial(dim));
  return f;
}

PolyField PolyField::random(int upper, int lower, int dim, int degree, std::mt19937_64& rng) {
  PolyField f = zero(upper, lower, dim);
  for (auto& p : f.components) p = Polynomial::random(dim, degree, rng);
  return f;
}

PolyField PolyField::scaled_identity(const Polynomial& g, int dim) {
  PolyField f = zero(1, 1, dim);
  for (int i = 0; i < dim; ++i) f.at({i, i}) = g;
  return f;
}

Polynomial& PolyField::at(const std::vector<int>& idx) {
  int flat = 0;
  for (int v : idx) flat = flat * dim + v;
  return components.at(static_cast<std::size_t>(flat));
}

const Polynomial& PolyField::at(const std::vector<int>& idx) const { return const_cast<PolyField*>(this)->at(idx); }

std::string ComponentTable::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? " " : "") + to_ratio_string(values[i]);
  return s + "]";
}

DiffeoJet DiffeoJet::identity(int dim) {
  DiffeoJet f{dim, identity_matrix(dim), {}};
  f.quadratic.assign(static_cast<std::size_t>(dim), Polynomial(dim));
  return f;
}

DiffeoJet DiffeoJet::random(int dim, bool general_linear, std::mt19937_64& rng) {
  DiffeoJet f = identity(dim);
  std::uniform_int_distribution<int> coeff(-9, 9);
  for (auto& q : f.quadratic) {
    std::vector<int> e(static_cast<std::size_t>(dim), 0);
    for (int a = 0; a < dim; ++a)
      for (int b = a; b < dim; ++b) {
        e.assign(static_cast<std::size_t>(dim), 0);
        ++e[static_cast<std::size_t>(a)];
        ++e[static_cast<std::size_t>(b)];
        q.add_term(e, coeff(rng));
      }
  }
  if (general_linear) {
    // unimodular: product of unit lower and unit upper triangular matrices
    std::uniform_int_distribution<int> small(-2, 2);
    Matrix lo = identity_matrix(dim), up = identity_matrix(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < i; ++j) {
        lo[i][j] = small(rng);
        up[j][i] = small(rng);
      }
    f.linear = multiply(lo, up);
  }
  return f;
}

ComponentTable evaluate(const IndexedExpression& op, const FieldSet& fields, const std::vector<Rational>& point,
                        const std::vector<Variance>& output_slots) {
  const int dim = fields.phi.dim;
  const int n = static_cast<int>(output_slots.size());
  if (!op.is_zero()) {
    FreeSignature sig = op.signature();
    if (static_cast<int>(sig.size()) != n) throw SignatureError("output rank mismatch in evaluate");
    for (int k = 0; k < n; ++k)
      if (!sig.count(k) || sig.at(k) != output_slots[static_cast<std::size_t>(k)])
        throw SignatureError("output slot variance mismatch in evaluate");
  }
  PointJet phi = jet_at(fields.phi, point), psi = jet_at(fields.psi, point);
  std::vector<PointJet> args;
  for (const auto& a : fields.args) args.push_back(jet_at(a, point));

  ComponentTable out{output_slots, dim, std::vector<Rational>(static_cast<std::size_t>(power(dim, n)), Rational(0))};
  for (const auto& [term, c] : op.terms()) {
    const int nd = max_dummy(term) + 1;
    const int dummy_count = power(dim, nd);
    for (int I = 0; I < static_cast<int>(out.values.size()); ++I) {
      auto free_vals = unflatten(I, n, dim);
      Rational total = 0;
      for (int D = 0; D < dummy_count; ++D) {
        auto dummy_vals = unflatten(D, nd, dim);
        auto value_of = [&](IndexName x) { return x.is_free() ? free_vals[x.ordinal] : dummy_vals[x.ordinal]; };
        Rational prod = c;
        for (const auto& f : term) {
          if (f.head == Head::Dim) {
            prod *= dim;
            continue;
          }
          if (f.head == Head::Conn) throw StructuralError("cannot evaluate a connection symbol");
          if (f.head == Head::Delta) {
            if (value_of(f.upper[0]) != value_of(f.lower[0])) prod = 0;
            if (is_zero(prod)) break;
            continue;
          }
          const bool deriv = is_derivative(f.head);
          std::vector<int> idx;
          for (auto x : f.upper) idx.push_back(value_of(x));
          for (std::size_t k = 0; k + (deriv ? 1 : 0) < f.lower.size(); ++k) idx.push_back(value_of(f.lower[k]));
          int dv = deriv ? value_of(f.lower.back()) : -1;
          const PointJet* src = nullptr;
          switch (underived(f.head)) {
            case Head::Phi: src = &phi; break;
            case Head::Psi: src = &psi; break;
            case Head::Arg:
              if (f.label >= args.size()) throw StructuralError("no field given for an argument");
              src = &args[f.label];
              break;
            default: throw StructuralError("unexpected factor in evaluate");
          }
          prod *= pick(*src, idx, dv, dim);
          if (is_zero(prod)) break;
        }
        total += prod;
      }
      out.values[static_cast<std::size_t>(I)] += total;
    }
  }
  return out;
}

PolyField pullback(const PolyField& field, const DiffeoJet& f) {
  std::vector<Rational> origin(static_cast<std::size_t>(field.dim), Rational(0));
  PointJet j = transform(field_slots(field), jet_at(field, origin), transform_data(f), true);
  PolyField out = PolyField::zero(field.upper, field.lower, field.dim);
  std::vector<int> e(static_cast<std::size_t>(field.dim), 0);
  for (std::size_t comp = 0; comp < out.components.size(); ++comp) {
    Polynomial p = Polynomial::constant(field.dim, j.value[comp]);
    for (int k = 0; k < field.dim; ++k) {
      e.assign(static_cast<std::size_t>(field.dim), 0);
      e[static_cast<std::size_t>(k)] = 1;
      p.add_term(e, j.partials[comp * static_cast<std::size_t>(field.dim) + static_cast<std::size_t>(k)]);
    }
    out.components[comp] = p;
  }
  return out;
}

ComponentTable pullback(const ComponentTable& value, const DiffeoJet& f) {
  PointJet src{value.dim, value.values, {}};
  PointJet j = transform(value.slots, src, transform_data(f), false);
  return {value.slots, value.dim, j.value};
}

NaturalityReport check_naturality(const std::string& op_id, const IndexedExpression& op, const TensorSignature& sig,
                                  const NaturalityOptions& opts) {
  NaturalityReport rep{op_id, opts.trials, opts.seed, opts.dim, true, std::nullopt};
  std::vector<Variance> out_slots(static_cast<std::size_t>(sig.out_contra), Variance::Upper);
  out_slots.insert(out_slots.end(), static_cast<std::size_t>(sig.out_cov), Variance::Lower);
  std::vector<Rational> origin(static_cast<std::size_t>(opts.dim), Rational(0));
  std::mt19937_64 rng(opts.seed);
  for (int t = 0; t < opts.trials; ++t) {
    FieldSet fs{PolyField::random(1, sig.phi_p, opts.dim, opts.degree, rng),
                PolyField::random(sig.psi_r, sig.psi_s, opts.dim, opts.degree, rng), {}};
    // odd trials also exercise a non-identity linear part
    DiffeoJet f = DiffeoJet::random(opts.dim, t % 2 == 1, rng);
    FieldSet pulled{pullback(fs.phi, f), pullback(fs.psi, f), {}};
    ComponentTable lhs = evaluate(op, pulled, origin, out_slots);
    ComponentTable rhs = pullback(evaluate(op, fs, origin, out_slots), f);
    if (lhs == rhs) continue;
    rep.pass = false;
    for (std::size_t i = 0; i < lhs.values.size(); ++i)
      if (lhs.values[i] != rhs.values[i]) {
        rep.witness = nlohmann::json{{"trial", t},
                                     {"component", unflatten(static_cast<int>(i), static_cast<int>(out_slots.size()), opts.dim)},
                                     {"operator_of_pullbacks", to_ratio_string(lhs.values[i])},
                                     {"pullback_of_operator", to_ratio_string(rhs.values[i])},
                                     {"identity_linear_part", t % 2 == 0}};
        break;
      }
    break;
  }
  return rep;
}

IndexedExpression pure_pair_operator() {
  Tensor phi = phi_field(1), psi = psi_field(0, 2);
  Tensor X = argument(0), Y = argument(1), Z = argument(2);
  Tensor v = feed(lie_derivative(feed(phi, {X}), psi) - lie_derivative(X, compose(psi, 0, phi)), {Y, Z});
  return v.expr;
}

PureCaseReport check_pure_case(int trials, std::uint64_t seed, int dim) {
  PureCaseReport rep;
  rep.trials = trials;
  const IndexedExpression op = pure_pair_operator();
  std::vector<Rational> origin(static_cast<std::size_t>(dim), Rational(0));
  std::mt19937_64 rng(seed);

  auto constant_vector = [&](const PolyField& v) {
    PolyField c = PolyField::zero(1, 0, dim);
    for (int i = 0; i < dim; ++i) c.at({i}) = Polynomial::constant(dim, v.at({i}).evaluate(origin));
    return c;
  };
  auto basis_vector = [&](int i) {
    PolyField c = PolyField::zero(1, 0, dim);
    c.at({i}) = Polynomial::constant(dim, 1);
    return c;
  };
  // components T_ijk(0) from constant basis arguments
  auto table = [&](const PolyField& phi, const PolyField& psi) {
    ComponentTable t{{Variance::Lower, Variance::Lower, Variance::Lower}, dim, {}};
    for (int I = 0; I < power(dim, 3); ++I) {
      auto idx = unflatten(I, 3, dim);
      FieldSet fs{phi, psi, {basis_vector(idx[0]), basis_vector(idx[1]), basis_vector(idx[2])}};
      t.values.push_back(evaluate(op, fs, origin, {}).values.at(0));
    }
    return t;
  };
  auto tensorial_on = [&](const PolyField& phi, const PolyField& psi, const std::vector<PolyField>& args) {
    FieldSet moving{phi, psi, args};
    FieldSet frozen{phi, psi, {constant_vector(args[0]), constant_vector(args[1]), constant_vector(args[2])}};
    return evaluate(op, moving, origin, {}) == evaluate(op, frozen, origin, {});
  };

  rep.identity_case_zero = true;
  rep.tensorial = true;
  rep.natural = true;
  for (int t = 0; t < trials; ++t) {
    Polynomial g = Polynomial::random(dim, 2, rng);
    PolyField phi = PolyField::scaled_identity(g, dim);
    PolyField psi = PolyField::random(0, 2, dim, 2, rng);
    std::vector<PolyField> args;
    for (int k = 0; k < 3; ++k) args.push_back(PolyField::random(1, 0, dim, 2, rng));
    DiffeoJet f = DiffeoJet::random(dim, t % 2 == 1, rng);

    PolyField unit = PolyField::scaled_identity(Polynomial::constant(dim, 1), dim);
    FieldSet id_case{unit, psi, args};
    ComponentTable id_value = evaluate(op, id_case, origin, {});
    if (!is_zero(id_value.values.at(0)) && rep.identity_case_zero) {
      rep.identity_case_zero = false;
      if (!rep.witness) rep.witness = nlohmann::json{{"trial", t}, {"check", "identity"}, {"value", id_value.to_string()}};
    }
    if (!tensorial_on(phi, psi, args) && rep.tensorial) {
      rep.tensorial = false;
      if (!rep.witness) rep.witness = nlohmann::json{{"trial", t}, {"check", "tensorial"}};
    }
    ComponentTable lhs = table(pullback(phi, f), pullback(psi, f));
    ComponentTable rhs = pullback(table(phi, psi), f);
    if (!(lhs == rhs) && rep.natural) {
      rep.natural = false;
      if (!rep.witness)
        rep.witness = nlohmann::json{{"trial", t}, {"check", "natural"}, {"lhs", lhs.to_string()}, {"rhs", rhs.to_string()}};
    }
  }
  // outside the hypothesis: a generic φ, reported but never asserted
  {
    PolyField phi = PolyField::random(1, 1, dim, 2, rng);
    PolyField psi = PolyField::random(0, 2, dim, 2, rng);
    std::vector<PolyField> args;
    for (int k = 0; k < 3; ++k) args.push_back(PolyField::random(1, 0, dim, 2, rng));
    rep.generic_pair_tensorial = tensorial_on(phi, psi, args);
  }
  rep.pass = rep.identity_case_zero && rep.tensorial && rep.natural;
  return rep;
}

nlohmann::json to_json(const NaturalityReport& r) {
  nlohmann::json j{{"operator", r.op_id}, {"trials", r.trials}, {"seed", r.seed}, {"dim", r.dim}, {"pass", r.pass}};
  if (r.witness) j["witness"] = *r.witness;
  return j;
}

nlohmann::json to_json(const PureCaseReport& r) {
  nlohmann::json j{{"trials", r.trials},
                   {"identity_case_zero", r.identity_case_zero},
                   {"tensorial", r.tensorial},
                   {"natural", r.natural},
                   {"pass", r.pass},
                   {"generic_pair_tensorial_informational", r.generic_pair_tensorial}};
  if (r.witness) j["witness"] = *r.witness;
  return j;
}

}  // namespace natop
