#include "natop/expr.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>

namespace natop {

namespace {

constexpr const char* kFreeLetters = "ijklabcefgh";
constexpr const char* kDummyLetters = "mpqtuvwnrsxyzo";

std::uint8_t code(IndexName idx) {
  return idx.is_free() ? idx.ordinal : static_cast<std::uint8_t>(128 + idx.ordinal);
}
constexpr std::uint8_t kMasked = 255;

struct FactorKey {
  Head head;
  std::uint8_t label;
  std::vector<std::uint8_t> upper;
  std::vector<std::uint8_t> lower;
  auto operator<=>(const FactorKey&) const = default;
};

FactorKey masked_key(const FactorSymbol& f) {
  FactorKey k{f.head, f.label, {}, {}};
  for (auto i : f.upper) k.upper.push_back(i.is_free() ? code(i) : kMasked);
  for (auto i : f.lower) k.lower.push_back(i.is_free() ? code(i) : kMasked);
  if (f.head == Head::Conn) std::sort(k.lower.begin(), k.lower.end());
  return k;
}

long factorial(int n) {
  long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Renumbers dummies in first-use order along the given arrangement.
Term renumbered(const std::vector<FactorSymbol>& arranged) {
  std::map<std::uint8_t, std::uint8_t> fresh;
  auto relabel = [&](IndexName idx) {
    if (idx.is_free()) return idx;
    auto [it, inserted] = fresh.try_emplace(idx.ordinal, static_cast<std::uint8_t>(fresh.size()));
    return IndexName::dummy(it->second);
  };
  Term out;
  out.reserve(arranged.size());
  for (const auto& f : arranged) {
    FactorSymbol g{f.head, f.label, {}, {}};
    for (auto i : f.upper) g.upper.push_back(relabel(i));
    for (auto i : f.lower) g.lower.push_back(relabel(i));
    out.push_back(std::move(g));
  }
  return out;
}

void sort_conn_pairs(Term& t) {
  for (auto& f : t)
    if (f.head == Head::Conn && f.lower.size() == 2 && f.lower[1] < f.lower[0])
      std::swap(f.lower[0], f.lower[1]);
}

}  // namespace

const char* head_name(Head head) {
  switch (head) {
    case Head::Delta: return "Delta";
    case Head::Phi: return "Phi";
    case Head::Psi: return "Psi";
    case Head::DPhi: return "DPhi";
    case Head::DPsi: return "DPsi";
    case Head::Conn: return "Conn";
    case Head::Arg: return "Arg";
    case Head::DArg: return "DArg";
    case Head::Dim: return "Dim";
  }
  return "?";
}

Head head_from_name(const std::string& name) {
  for (Head h : {Head::Delta, Head::Phi, Head::Psi, Head::DPhi, Head::DPsi, Head::Conn, Head::Arg,
                 Head::DArg, Head::Dim})
    if (name == head_name(h)) return h;
  throw std::invalid_argument("unknown factor head: " + name);
}

bool is_derivative(Head head) {
  return head == Head::DPhi || head == Head::DPsi || head == Head::DArg;
}

Head derivative_of(Head head) {
  switch (head) {
    case Head::Phi: return Head::DPhi;
    case Head::Psi: return Head::DPsi;
    case Head::Arg: return Head::DArg;
    default:
      throw StructuralError(std::string("cannot differentiate factor ") + head_name(head) +
                            " within the first-order fragment");
  }
}

Head underived(Head head) {
  switch (head) {
    case Head::DPhi: return Head::Phi;
    case Head::DPsi: return Head::Psi;
    case Head::DArg: return Head::Arg;
    default: return head;
  }
}

void validate(const Monomial& m) {
  std::map<IndexName, std::pair<int, int>> seen;
  for (const auto& f : m.factors) {
    for (auto i : f.upper) ++seen[i].first;
    for (auto i : f.lower) ++seen[i].second;
    if (f.head == Head::Conn && (f.upper.size() != 1 || f.lower.size() != 2))
      throw StructuralError("connection symbol needs 1 upper and 2 lower indices");
    if (f.head == Head::Delta && (f.upper.size() != 1 || f.lower.size() != 1))
      throw StructuralError("delta needs exactly 1 upper and 1 lower index");
  }
  for (const auto& [idx, count] : seen) {
    if (idx.is_free()) {
      if (count.first + count.second != 1)
        throw StructuralError("free index " + index_letter(idx) + " occurs " +
                              std::to_string(count.first + count.second) + " times");
    } else if (count.first != 1 || count.second != 1) {
      throw StructuralError("dummy index " + index_letter(idx) + " occurs " +
                            std::to_string(count.first) + "x upper and " +
                            std::to_string(count.second) + "x lower");
    }
  }
}

Monomial canonicalize(const Monomial& m) {
  validate(m);
  const auto& fs = m.factors;
  const std::size_t n = fs.size();

  std::vector<FactorKey> keys;
  keys.reserve(n);
  for (const auto& f : fs) keys.push_back(masked_key(f));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });

  // Groups of factors indistinguishable without dummy names.
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && keys[order[j]] == keys[order[i]]) ++j;
    groups.emplace_back(i, j);
    i = j;
  }
  std::vector<std::size_t> conn_slots;
  for (std::size_t i = 0; i < n; ++i)
    if (fs[i].head == Head::Conn && fs[i].lower[0] != fs[i].lower[1]) conn_slots.push_back(i);

  long budget = 1L << conn_slots.size();
  for (auto [b, e] : groups) budget *= factorial(static_cast<int>(e - b));
  if (budget > 2'000'000) throw StructuralError("monomial too symmetric to canonicalize");

  std::optional<Term> best;
  std::vector<FactorSymbol> arranged(n);

  auto evaluate = [&](const std::vector<std::size_t>& ord) {
    for (unsigned mask = 0; mask < (1u << conn_slots.size()); ++mask) {
      for (std::size_t pos = 0; pos < n; ++pos) {
        arranged[pos] = fs[ord[pos]];
        auto it = std::find(conn_slots.begin(), conn_slots.end(), ord[pos]);
        if (it != conn_slots.end() && (mask >> (it - conn_slots.begin())) & 1u)
          std::swap(arranged[pos].lower[0], arranged[pos].lower[1]);
      }
      Term t = renumbered(arranged);
      if (!best || t < *best) best = std::move(t);
    }
  };

  // Enumerate the product of per-group permutations.
  std::vector<std::size_t> ord = order;
  auto recurse = [&](auto&& self, std::size_t g) -> void {
    if (g == groups.size()) {
      evaluate(ord);
      return;
    }
    auto [b, e] = groups[g];
    std::sort(ord.begin() + b, ord.begin() + e);
    do {
      self(self, g + 1);
    } while (std::next_permutation(ord.begin() + b, ord.begin() + e));
  };
  recurse(recurse, 0);

  Term out = best ? std::move(*best) : Term{};
  sort_conn_pairs(out);
  std::sort(out.begin(), out.end());
  return Monomial{m.coefficient, std::move(out)};
}

Monomial substitute_delta(const Monomial& m) {
  validate(m);
  Term t = m.factors;
  for (;;) {
    auto it = std::find_if(t.begin(), t.end(), [](const FactorSymbol& f) {
      return f.head == Head::Delta && (f.upper[0].is_dummy() || f.lower[0].is_dummy());
    });
    if (it == t.end()) break;
    IndexName up = it->upper[0];
    IndexName lo = it->lower[0];
    std::size_t pos = static_cast<std::size_t>(it - t.begin());
    if (up.is_dummy() && up == lo) {
      t[pos] = FactorSymbol{Head::Dim, 0, {}, {}};
      continue;
    }
    t.erase(t.begin() + static_cast<long>(pos));
    // Replace the partner occurrence of the contracted index.
    IndexName target = up.is_dummy() ? up : lo;
    IndexName replacement = up.is_dummy() ? lo : up;
    bool replaced = false;
    for (auto& f : t) {
      auto& slots = up.is_dummy() ? f.lower : f.upper;
      for (auto& i : slots)
        if (i == target && !replaced) {
          i = replacement;
          replaced = true;
        }
    }
    if (!replaced) throw StructuralError("dangling delta contraction");
  }
  return canonicalize(Monomial{m.coefficient, std::move(t)});
}

FreeSignature free_signature(const Term& term) {
  FreeSignature sig;
  for (const auto& f : term) {
    for (auto i : f.upper)
      if (i.is_free()) sig[i.ordinal] = Variance::Upper;
    for (auto i : f.lower)
      if (i.is_free()) sig[i.ordinal] = Variance::Lower;
  }
  return sig;
}

void IndexedExpression::accumulate(const Term& canonical, const Rational& c) {
  if (natop::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(canonical, c);
  if (!inserted) {
    it->second += c;
    if (natop::is_zero(it->second)) terms_.erase(it);
  }
}

void IndexedExpression::add(const Monomial& m) {
  if (natop::is_zero(m.coefficient)) return;
  Monomial n = substitute_delta(m);
  accumulate(n.factors, n.coefficient);
}

Rational IndexedExpression::coefficient(const Term& canonical) const {
  auto it = terms_.find(canonical);
  return it == terms_.end() ? Rational(0) : it->second;
}

FreeSignature IndexedExpression::signature() const {
  if (terms_.empty()) return {};
  FreeSignature sig = free_signature(terms_.begin()->first);
  for (const auto& [t, c] : terms_)
    if (free_signature(t) != sig) throw SignatureError("expression terms carry different free indices");
  return sig;
}

IndexedExpression& IndexedExpression::operator+=(const IndexedExpression& other) {
  if (!is_zero() && !other.is_zero() && signature() != other.signature())
    throw SignatureError("cannot add expressions with different free indices");
  for (const auto& [t, c] : other.terms_) accumulate(t, c);
  return *this;
}

IndexedExpression& IndexedExpression::operator-=(const IndexedExpression& other) {
  return *this += scale(other, -1);
}

IndexedExpression operator+(const IndexedExpression& a, const IndexedExpression& b) {
  IndexedExpression r = a;
  r += b;
  return r;
}

IndexedExpression operator-(const IndexedExpression& a, const IndexedExpression& b) {
  IndexedExpression r = a;
  r -= b;
  return r;
}

IndexedExpression add(const IndexedExpression& a, const IndexedExpression& b) { return a + b; }

IndexedExpression scale(const IndexedExpression& e, const Rational& c) {
  IndexedExpression r;
  if (is_zero(c)) return r;
  for (const auto& [t, v] : e.terms()) r.add(t, v * c);
  return r;
}

IndexedExpression operator*(const Rational& c, const IndexedExpression& e) { return scale(e, c); }
IndexedExpression operator-(const IndexedExpression& e) { return scale(e, -1); }

IndexedExpression substitute_delta(const IndexedExpression& e) {
  // Terms are stored delta-resolved already; rebuilding is a no-op guard.
  IndexedExpression r;
  for (const auto& [t, c] : e.terms()) r.add(t, c);
  return r;
}

IndexedExpression rename_free(const IndexedExpression& e, const std::map<int, IndexName>& renaming) {
  IndexedExpression r;
  for (const auto& [t, c] : e.terms()) {
    Term u = t;
    for (auto& f : u) {
      for (auto* slots : {&f.upper, &f.lower})
        for (auto& i : *slots)
          if (i.is_free()) {
            auto it = renaming.find(i.ordinal);
            if (it != renaming.end()) i = it->second;
          }
    }
    r.add(u, c);
  }
  return r;
}

int max_dummy(const Term& term) {
  int mx = -1;
  for (const auto& f : term) {
    for (auto i : f.upper)
      if (i.is_dummy()) mx = std::max(mx, static_cast<int>(i.ordinal));
    for (auto i : f.lower)
      if (i.is_dummy()) mx = std::max(mx, static_cast<int>(i.ordinal));
  }
  return mx;
}

IndexedExpression multiply(const IndexedExpression& a, const IndexedExpression& b) {
  IndexedExpression r;
  for (const auto& [ta, ca] : a.terms()) {
    auto sa = free_signature(ta);
    int shift = max_dummy(ta) + 1;
    for (const auto& [tb, cb] : b.terms()) {
      for (const auto& [ord, var] : free_signature(tb))
        if (sa.count(ord)) throw SignatureError("product operands share free index " + index_letter(IndexName::free(ord)));
      Term t = ta;
      for (auto f : tb) {
        for (auto* slots : {&f.upper, &f.lower})
          for (auto& i : *slots)
            if (i.is_dummy()) i = IndexName::dummy(i.ordinal + shift);
        t.push_back(std::move(f));
      }
      r.add(t, ca * cb);
    }
  }
  return r;
}

namespace {

IndexedExpression permutation_average(const IndexedExpression& e, const std::vector<int>& ords,
                                      bool signed_average) {
  auto sig = e.signature();
  std::optional<Variance> variance;
  for (int o : ords) {
    auto it = sig.find(o);
    if (it == sig.end()) {
      if (!e.is_zero()) throw SignatureError("index " + index_letter(IndexName::free(o)) + " is not free in the expression");
      continue;
    }
    if (variance && *variance != it->second) throw SignatureError("mixed-variance index set");
    variance = it->second;
  }
  std::vector<int> perm(ords.size());
  std::iota(perm.begin(), perm.end(), 0);
  IndexedExpression sum;
  long count = 0;
  do {
    std::map<int, IndexName> ren;
    for (std::size_t i = 0; i < ords.size(); ++i) ren[ords[i]] = IndexName::free(ords[perm[i]]);
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) ++inversions;
    Rational sign = (signed_average && inversions % 2) ? -1 : 1;
    sum += scale(rename_free(e, ren), sign);
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return scale(sum, Rational(1, count));
}

}  // namespace

IndexedExpression symmetrize(const IndexedExpression& e, const std::vector<int>& free_ordinals) {
  return permutation_average(e, free_ordinals, false);
}

IndexedExpression alternate(const IndexedExpression& e, const std::vector<int>& free_ordinals) {
  return permutation_average(e, free_ordinals, true);
}

bool contains_head(const Term& term, Head head) {
  return std::any_of(term.begin(), term.end(), [&](const FactorSymbol& f) { return f.head == head; });
}

bool contains_head(const IndexedExpression& e, Head head) {
  for (const auto& [t, c] : e.terms())
    if (contains_head(t, head)) return true;
  return false;
}

std::string index_letter(IndexName idx) {
  const std::string letters = idx.is_free() ? kFreeLetters : kDummyLetters;
  if (idx.ordinal < letters.size()) return std::string(1, letters[idx.ordinal]);
  return std::string(idx.is_free() ? "i" : "m") + std::to_string(idx.ordinal);
}

namespace {

std::string joined(const std::vector<IndexName>& v, std::size_t from = 0, std::size_t to = std::string::npos) {
  std::string s;
  for (std::size_t i = from; i < std::min(to, v.size()); ++i) s += index_letter(v[i]);
  return s;
}

std::string field_text(const char* symbol, const std::vector<IndexName>& up, const std::vector<IndexName>& lo,
                       std::size_t lo_count) {
  std::string s = symbol;
  if (!up.empty()) s += "^" + joined(up);
  if (lo_count) s += "_" + joined(lo, 0, lo_count);
  return s;
}

const char* arg_symbol(std::uint8_t label) {
  static const char* names[] = {"X", "Y", "Z", "W"};
  return label < 4 ? names[label] : "V";
}

}  // namespace

std::string to_text(const FactorSymbol& f) {
  switch (f.head) {
    case Head::Delta: return "δ^" + joined(f.upper) + "_" + joined(f.lower);
    case Head::Phi: return field_text("φ", f.upper, f.lower, f.lower.size());
    case Head::Psi: return field_text("ψ", f.upper, f.lower, f.lower.size());
    case Head::Arg: return field_text(arg_symbol(f.label), f.upper, f.lower, f.lower.size());
    case Head::DPhi:
    case Head::DPsi:
    case Head::DArg: {
      const char* sym = f.head == Head::DPhi ? "φ" : f.head == Head::DPsi ? "ψ" : arg_symbol(f.label);
      return "∂_" + index_letter(f.lower.back()) + " " + field_text(sym, f.upper, f.lower, f.lower.size() - 1);
    }
    case Head::Conn:
      return "K_" + index_letter(f.lower[0]) + "^" + joined(f.upper) + "_" + index_letter(f.lower[1]);
    case Head::Dim: return "dim";
  }
  return "?";
}

std::string to_text(const Term& t) {
  std::string s;
  for (const auto& f : t) {
    if (!s.empty()) s += " ";
    s += to_text(f);
  }
  return s.empty() ? "1" : s;
}

std::string to_text(const IndexedExpression& e) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, c] : e.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    if (mag != 1) os << mag.get_str() << " ";
    os << to_text(t);
    first = false;
  }
  return os.str();
}

namespace {

nlohmann::json index_list(const std::vector<IndexName>& v) {
  auto arr = nlohmann::json::array();
  for (auto i : v) arr.push_back(index_letter(i));
  return arr;
}

IndexName parse_index_name(const std::string& s) {
  std::string free_letters = kFreeLetters, dummy_letters = kDummyLetters;
  if (s.size() == 1) {
    if (auto p = free_letters.find(s[0]); p != std::string::npos) return IndexName::free(static_cast<int>(p));
    if (auto p = dummy_letters.find(s[0]); p != std::string::npos) return IndexName::dummy(static_cast<int>(p));
  } else if (s.size() > 1 && (s[0] == 'i' || s[0] == 'm')) {
    int ord = std::stoi(s.substr(1));
    return s[0] == 'i' ? IndexName::free(ord) : IndexName::dummy(ord);
  }
  throw std::invalid_argument("unknown index name: " + s);
}

}  // namespace

nlohmann::json to_json(const Term& t) {
  auto factors = nlohmann::json::array();
  for (const auto& f : t) {
    nlohmann::json jf{{"head", head_name(f.head)}, {"upper", index_list(f.upper)}, {"lower", index_list(f.lower)}};
    if (f.head == Head::Arg || f.head == Head::DArg) jf["arg"] = arg_symbol(f.label);
    factors.push_back(std::move(jf));
  }
  return factors;
}

nlohmann::json to_json(const IndexedExpression& e) {
  auto terms = nlohmann::json::array();
  for (const auto& [t, c] : e.terms())
    terms.push_back({{"coefficient", to_ratio_string(c)}, {"factors", to_json(t)}});
  return {{"terms", terms}};
}

IndexedExpression expression_from_json(const nlohmann::json& j) {
  IndexedExpression e;
  for (const auto& jt : j.at("terms")) {
    Monomial m;
    m.coefficient = parse_rational(jt.at("coefficient").get<std::string>());
    for (const auto& jf : jt.at("factors")) {
      FactorSymbol f;
      f.head = head_from_name(jf.at("head").get<std::string>());
      if (jf.contains("arg")) {
        std::string a = jf.at("arg").get<std::string>();
        f.label = static_cast<std::uint8_t>(a == "X" ? 0 : a == "Y" ? 1 : a == "Z" ? 2 : 3);
      }
      for (const auto& s : jf.at("upper")) f.upper.push_back(parse_index_name(s.get<std::string>()));
      for (const auto& s : jf.at("lower")) f.lower.push_back(parse_index_name(s.get<std::string>()));
      m.factors.push_back(std::move(f));
    }
    e.add(m);
  }
  return e;
}

}  // namespace natop
