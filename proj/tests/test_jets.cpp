#include <gtest/gtest.h>

#include "natop/catalog.hpp"
#include "natop/jets.hpp"
#include "natop/parse.hpp"

using namespace natop;

TEST(Polynomial, EvaluateAndDifferentiate) {
  Polynomial p(2);
  p.add_term({2, 1}, 3);  // 3 x^2 y
  p.add_term({0, 0}, -1);
  EXPECT_EQ(p.evaluate({2, 5}), Rational(59));
  auto dx = p.derivative(0);
  EXPECT_EQ(dx.evaluate({2, 5}), Rational(60));
  EXPECT_EQ(p.degree(), 3);
  EXPECT_EQ((p * p).degree(), 6);
  EXPECT_EQ((p + p).evaluate({1, 1}), Rational(4));
}

TEST(Polynomial, RandomIsSeedStable) {
  std::mt19937_64 a(9), b(9);
  auto p = Polynomial::random(3, 2, a);
  auto q = Polynomial::random(3, 2, b);
  EXPECT_EQ(p.terms(), q.terms());
}

TEST(Jets, IdentityPullbackChangesNothing) {
  std::mt19937_64 rng(1);
  auto f = DiffeoJet::identity(3);
  auto field = PolyField::random(0, 2, 3, 2, rng);
  ComponentTable t{{Variance::Lower, Variance::Lower}, 3, {}};
  for (const auto& c : field.components) t.values.push_back(c.evaluate({0, 0, 0}));
  EXPECT_EQ(pullback(t, f), t);
  auto pulled = pullback(field, f);
  for (std::size_t k = 0; k < field.components.size(); ++k)
    EXPECT_EQ(pulled.components[k].evaluate({0, 0, 0}), field.components[k].evaluate({0, 0, 0}));
}

TEST(Jets, LieBracketIsNatural) {
  const auto& op = find_operator("lie_bracket");
  auto r = check_naturality(op.name, op.expansion, op.signature, {});
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.trials, 50);
  EXPECT_FALSE(r.witness.has_value());
}

TEST(Jets, NonexampleFailsWithWitness) {
  const auto& op = find_operator("nonexample_a2");
  auto r = check_naturality(op.name, op.expansion, op.signature, {});
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(r.witness->contains("pullback_of_operator"));
  EXPECT_NE((*r.witness)["pullback_of_operator"], (*r.witness)["operator_of_pullbacks"]);
}

TEST(Jets, SameSeedSameVerdict) {
  auto op = parse_expression("phi^m_i d_m psi_j", "ij");
  auto sig = TensorSignature::standard(1, 0, 1);
  auto a = check_naturality("x", op, sig, {10, 42, 3, 2});
  auto b = check_naturality("x", op, sig, {10, 42, 3, 2});
  EXPECT_EQ(a.pass, b.pass);
  EXPECT_EQ(to_json(a), to_json(b));
  EXPECT_FALSE(a.pass);
}

TEST(Jets, PureCase) {
  auto r = check_pure_case(20, 7);
  EXPECT_TRUE(r.identity_case_zero);
  EXPECT_TRUE(r.tensorial);
  EXPECT_TRUE(r.natural);
  EXPECT_TRUE(r.pass);
}

// Symbolic and numeric verdicts agree on every catalog entry.
TEST(JetsProperty, NumericAgreesWithConnectionPart) {
  for (const auto& op : catalog()) {
    auto r = check_naturality(op.name, op.expansion, op.signature, {20, 7, 3, 2});
    EXPECT_EQ(r.pass, is_natural(op)) << op.name;
  }
}
