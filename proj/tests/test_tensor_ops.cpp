#include <gtest/gtest.h>

#include "natop/parse.hpp"
#include "natop/tensor_ops.hpp"

using namespace natop;

namespace {

Tensor lower(const char* text, const char* free, int rank) {
  return {parse_expression(text, free), std::vector<Variance>(static_cast<std::size_t>(rank), Variance::Lower)};
}

}  // namespace

TEST(TensorOps, ExteriorDerivativeOfOneForm) {
  auto d = ext_d(psi_field(0, 1), DConvention::Determinant);
  EXPECT_EQ(d.expr, parse_expression("d_i psi_j - d_j psi_i", "ij"));
  auto a = ext_d(psi_field(0, 1), DConvention::Alternation);
  EXPECT_EQ(Rational(2) * a.expr, d.expr);
}

TEST(TensorOps, DerivativeNormalizationsDifferByDegreeFactor) {
  Tensor two_form{alternate(psi_field(0, 2).expr, {0, 1}), {Variance::Lower, Variance::Lower}};
  auto det = ext_d(two_form, DConvention::Determinant);
  auto alt = ext_d(two_form, DConvention::Alternation);
  EXPECT_EQ(det.expr, Rational(3) * alt.expr);
}

TEST(TensorOps, ExteriorDerivativeIsAlternating) {
  auto d = ext_d(psi_field(0, 2), DConvention::Alternation);
  EXPECT_TRUE(symmetrize(d.expr, {0, 1}).is_zero());
  EXPECT_TRUE(symmetrize(d.expr, {1, 2}).is_zero());
}

TEST(TensorOps, LieBracketIsAntisymmetric) {
  auto xy = bracket(argument(0), argument(1));
  auto yx = bracket(argument(1), argument(0));
  EXPECT_EQ(xy.expr, -yx.expr);
}

TEST(TensorOps, CartanFormulaOnOneForms) {
  // L_X ψ = i_X dψ + d i_X ψ, both computed independently.
  Tensor x = argument(0);
  auto lhs = lie_derivative(x, psi_field(0, 1));
  auto rhs = insert(ext_d(psi_field(0, 1), DConvention::Determinant), 0, x) +
             ext_d(insert(psi_field(0, 1), 0, x), DConvention::Determinant);
  EXPECT_EQ(lhs.expr, rhs.expr);
}

TEST(TensorOps, TraceOfIdentityIsDimension) {
  auto tr = contract(identity_tensor(), 0, 1);
  ASSERT_EQ(tr.expr.size(), 1u);
  EXPECT_TRUE(contains_head(tr.expr, Head::Dim));
}

TEST(TensorOps, ComposeWithIdentityIsNoOp) {
  auto f = psi_field(0, 2);
  EXPECT_EQ(compose(f, 1, identity_tensor()).expr, f.expr);
  EXPECT_EQ(i_phi(f, identity_tensor()).expr, Rational(2) * f.expr);
}

TEST(TensorOps, StripArgumentsRecoversComponents) {
  auto fed = feed(psi_field(0, 2), {argument(0), argument(1)});
  auto back = strip_arguments(fed, {0, 1});
  EXPECT_EQ(back.expr, psi_field(0, 2).expr);
}

TEST(TensorOps, StripArgumentsRefusesNonTensorialForms) {
  auto xy = bracket(argument(0), argument(1));
  EXPECT_THROW(strip_arguments(xy, {0, 1}), NotTensorialError);
}

TEST(TensorOps, FroelicherNijenhuisIsSymmetric) {
  Tensor phi = phi_field(1);
  Tensor psi{parse_expression("psi^i_j", "ij"), {Variance::Upper, Variance::Lower}};
  auto kl = fn_bracket(phi, psi);
  auto lk = fn_bracket(psi, phi);
  EXPECT_EQ(kl.expr, lk.expr);
  EXPECT_EQ(kl.rank(), 3);
}

TEST(TensorOps, ArrangePermutesSlots) {
  auto t = lower("psi_ij", "ij", 2);
  EXPECT_EQ(arrange(t, {1, 0}).expr, parse_expression("psi_ji", "ij"));
}
