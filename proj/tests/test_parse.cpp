#include <gtest/gtest.h>

#include "natop/parse.hpp"

using namespace natop;

TEST(Parse, FieldNamesMapToHeads) {
  auto e = parse_expression("S^m_ij d_k psi_m", "ijk");
  ASSERT_EQ(e.size(), 1u);
  EXPECT_TRUE(contains_head(e, Head::Phi));
  EXPECT_TRUE(contains_head(e, Head::DPsi));
  auto v = parse_expression("X^m d_m Y^i", "i");
  EXPECT_TRUE(contains_head(v, Head::Phi));
  EXPECT_TRUE(contains_head(v, Head::DPsi));
}

TEST(Parse, ParenthesesDistribute) {
  EXPECT_EQ(parse_expression("phi^m_i (d_m psi_j - d_j psi_m)", "ij"),
            parse_expression("phi^m_i d_m psi_j - phi^m_i d_j psi_m", "ij"));
}

TEST(Parse, CoefficientsAreExact) {
  auto e = parse_expression("-3/4 psi_i d_j phi^m_m", "ij");
  EXPECT_EQ(e.terms().begin()->second, Rational(-3, 4));
}

TEST(Parse, FreeLettersFixOrdinals) {
  EXPECT_NE(parse_expression("psi_ij", "ij"), parse_expression("psi_ij", "ji"));
  EXPECT_EQ(parse_expression("psi_ij", "ji"), parse_expression("psi_ji", "ij"));
}

TEST(Parse, RejectsMalformedInput) {
  EXPECT_THROW(parse_expression("phi^m_i d_m", "i"), ParseError);
  EXPECT_THROW(parse_expression("psi_ij +", "ij"), ParseError);
  EXPECT_THROW(parse_expression("foo_i", "i"), ParseError);
}

TEST(Parse, RejectsBadIndexDiscipline) {
  EXPECT_ANY_THROW(parse_expression("psi_mm d_m phi^m_i", "i"));
}
