#include "natop/parse.hpp"

#include <cctype>
#include <map>
#include <utility>
#include <vector>

namespace natop {

namespace {

struct RawFactor {
  Head head;
  std::string upper;
  std::string lower;
};

using RawTerm = std::pair<Rational, std::vector<RawFactor>>;
using RawSum = std::vector<RawTerm>;

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  RawSum parse() {
    RawSum e = expression();
    skip_space();
    if (pos_ != s_.size()) fail("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool at_item_start() {
    skip_space();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return c == '(' || c == '*' || std::isalnum(static_cast<unsigned char>(c));
  }

  RawSum expression() {
    RawSum sum;
    bool first = true;
    for (;;) {
      skip_space();
      Rational sign = 1;
      if (peek('+') || peek('-')) {
        if (s_[pos_] == '-') sign = -1;
        ++pos_;
      } else if (!first) {
        break;
      }
      RawSum p = product();
      for (auto& [c, fs] : p) sum.emplace_back(sign * c, std::move(fs));
      first = false;
    }
    return sum;
  }

  RawSum product() {
    RawSum acc{{Rational(1), {}}};
    bool any = false;
    while (at_item_start()) {
      if (peek('*')) {
        ++pos_;
        continue;
      }
      RawSum item = primary();
      RawSum next;
      for (const auto& [ca, fa] : acc)
        for (const auto& [cb, fb] : item) {
          auto fs = fa;
          fs.insert(fs.end(), fb.begin(), fb.end());
          next.emplace_back(ca * cb, std::move(fs));
        }
      acc = std::move(next);
      any = true;
    }
    if (!any) fail("expected a term");
    return acc;
  }

  RawSum primary() {
    skip_space();
    if (s_[pos_] == '(') {
      ++pos_;
      RawSum inner = expression();
      if (!peek(')')) fail("missing ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
      return {{parse_rational(s_.substr(start, pos_ - start)), {}}};
    }
    return {{Rational(1), {factor()}}};
  }

  std::string letters() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::islower(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected index letters");
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string word() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  RawFactor factor() {
    skip_space();
    std::string derivative;
    if (s_.substr(pos_, 2) == "d_") {
      pos_ += 2;
      if (pos_ >= s_.size() || !std::islower(static_cast<unsigned char>(s_[pos_]))) fail("expected derivative index");
      derivative = std::string(1, s_[pos_++]);
      skip_space();
    }
    std::string name = word();
    RawFactor f{};
    if (name == "phi" || name == "S" || name == "X") {
      f.head = Head::Phi;
    } else if (name == "psi" || name == "Y") {
      f.head = Head::Psi;
    } else if (name == "K") {
      f.head = Head::Conn;
    } else if (name == "delta") {
      f.head = Head::Delta;
    } else if (name == "dim") {
      f.head = Head::Dim;
    } else {
      fail("unknown factor name '" + name + "'");
    }
    while (pos_ < s_.size() && (s_[pos_] == '^' || s_[pos_] == '_')) {
      char kind = s_[pos_++];
      if (f.head == Head::Conn) {
        // K_a^p_b: one letter per group
        if (pos_ >= s_.size() || !std::islower(static_cast<unsigned char>(s_[pos_]))) fail("expected index letter");
        (kind == '^' ? f.upper : f.lower) += s_[pos_++];
      } else {
        (kind == '^' ? f.upper : f.lower) += letters();
      }
    }
    if (!derivative.empty()) {
      if (f.head != Head::Phi && f.head != Head::Psi) fail("derivative of a non-field factor");
      f.head = derivative_of(f.head);
      f.lower += derivative;
    }
    return f;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

IndexedExpression parse_expression(std::string_view text, std::string_view free_letters) {
  RawSum raw = Parser(text).parse();
  IndexedExpression e;
  for (const auto& [c, fs] : raw) {
    std::map<char, int> dummies;
    auto index = [&](char ch) {
      if (auto p = free_letters.find(ch); p != std::string_view::npos) return IndexName::free(static_cast<int>(p));
      auto [it, inserted] = dummies.try_emplace(ch, static_cast<int>(dummies.size()));
      return IndexName::dummy(it->second);
    };
    Monomial m;
    m.coefficient = c;
    for (const auto& rf : fs) {
      FactorSymbol f{rf.head, 0, {}, {}};
      for (char ch : rf.upper) f.upper.push_back(index(ch));
      for (char ch : rf.lower) f.lower.push_back(index(ch));
      m.factors.push_back(std::move(f));
    }
    try {
      e.add(m);
    } catch (const StructuralError& err) {
      throw ParseError(std::string(err.what()) + " in \"" + std::string(text) + "\"");
    }
  }
  return e;
}

}  // namespace natop
