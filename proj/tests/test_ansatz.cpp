#include <gtest/gtest.h>

#include <set>

#include "fixture_io.hpp"
#include "natop/ansatz.hpp"
#include "natop/parse.hpp"

using namespace natop;
using S = SymmetryConstraint;

namespace {

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

TEST(Ansatz, SizesAreTwiceTheNumberOfPairings) {
  for (const auto& entry : fixtures::classification_entries("unconstrained")) {
    auto sig = fixtures::signature_of(entry["signature"]);
    auto fam = generate(sig);
    long n = factorial(sig.psi_r + sig.psi_s + sig.phi_p + 1);
    EXPECT_EQ(static_cast<long>(fam.a_terms.size()), n) << sig.to_string();
    EXPECT_EQ(static_cast<long>(fam.b_terms.size()), n) << sig.to_string();
    std::set<Term> distinct;
    for (const auto& t : fam.all()) distinct.insert(t.term);
    EXPECT_EQ(static_cast<long>(distinct.size()), 2 * n);
  }
}

TEST(Ansatz, IdsAreSequential) {
  auto fam = generate(TensorSignature::standard(0, 0, 1));
  ASSERT_EQ(fam.size(), 4u);
  EXPECT_EQ(fam.all()[0].id, "a1");
  EXPECT_EQ(fam.all()[3].id, "b2");
  EXPECT_NO_THROW(fam.by_id("b1"));
}

TEST(Ansatz, VectorFieldTermsMatchHandWrittenList) {
  auto fam = generate(TensorSignature::standard(0, 1, 0));
  std::set<Term> got;
  for (const auto& t : fam.all()) got.insert(t.term);
  for (const char* text : {"X^m d_m Y^i", "X^i d_m Y^m", "Y^m d_m X^i", "Y^i d_m X^m"}) {
    auto e = parse_expression(text, "i");
    EXPECT_TRUE(got.count(e.terms().begin()->first)) << text;
  }
}

TEST(Ansatz, ConstraintsMustFitTheSignature) {
  EXPECT_THROW(check_constraint(TensorSignature::standard(1, 0, 1), S::PsiSymmetric), SignatureError);
  EXPECT_THROW(check_constraint(TensorSignature::standard(1, 1, 1), S::PsiClosedForm), SignatureError);
  EXPECT_THROW(check_constraint(TensorSignature::standard(1, 0, 1), S::PhiAntisymmetric), SignatureError);
  EXPECT_THROW(check_constraint(TensorSignature::standard(0, 1, 0), S::OutputAlternating), SignatureError);
  EXPECT_NO_THROW(check_constraint(TensorSignature::standard(1, 0, 2), S::PsiClosedForm));
  EXPECT_NO_THROW(check_constraint(TensorSignature::standard(2, 0, 1), S::PhiAntisymmetric));
}

TEST(Ansatz, ConstraintNamesRoundTrip) {
  for (auto c : {S::PsiSymmetric, S::PsiAntisymmetric, S::PsiClosedForm, S::PhiAntisymmetric, S::OutputAlternating})
    EXPECT_EQ(constraint_from_name(constraint_name(c)), c);
  EXPECT_THROW(constraint_from_name("sym"), std::invalid_argument);
}

// Every constraint acts as a projection: applying it twice changes nothing,
// and symmetric and antisymmetric parts of ψ are complementary.
TEST(AnsatzProperty, ProjectionsAreIdempotent) {
  struct Case {
    TensorSignature sig;
    std::vector<S> cons;
  };
  std::vector<Case> cases = {{TensorSignature::standard(1, 0, 2), {S::PsiSymmetric}},
                             {TensorSignature::standard(1, 0, 2), {S::PsiAntisymmetric}},
                             {TensorSignature::standard(1, 0, 2), {S::PsiClosedForm}},
                             {TensorSignature::standard(1, 0, 1), {S::PsiClosedForm, S::OutputAlternating}},
                             {TensorSignature::standard(2, 0, 1), {S::PhiAntisymmetric}},
                             {TensorSignature::standard(1, 1, 1), {S::OutputAlternating}}};
  for (const auto& c : cases) {
    for (const auto& t : generate(c.sig).all()) {
      IndexedExpression e(Monomial{1, t.term});
      auto once = project(e, c.sig, c.cons);
      EXPECT_EQ(project(once, c.sig, c.cons), once) << t.id;
    }
  }
  auto sig = TensorSignature::standard(1, 0, 2);
  for (const auto& t : generate(sig).all()) {
    IndexedExpression e(Monomial{1, t.term});
    EXPECT_EQ(project(e, sig, {S::PsiSymmetric}) + project(e, sig, {S::PsiAntisymmetric}), e);
    EXPECT_TRUE(project(project(e, sig, {S::PsiSymmetric}), sig, {S::PsiAntisymmetric}).is_zero());
  }
}

TEST(Ansatz, RepresentativesSpanTheProjectedTerms) {
  auto sig = TensorSignature::standard(1, 0, 2);
  auto fam = apply_symmetry(generate(sig), S::PsiSymmetric);
  auto reps = representatives(fam);
  TermSpace space;
  std::vector<RationalVector> all, chosen;
  auto terms = fam.all();
  for (const auto& t : terms) space.vectorize(project(IndexedExpression(Monomial{1, t.term}), sig, {S::PsiSymmetric}));
  for (std::size_t k = 0; k < terms.size(); ++k) {
    auto v = space.vectorize(project(IndexedExpression(Monomial{1, terms[k].term}), sig, {S::PsiSymmetric}));
    all.push_back(v);
    if (std::find(reps.begin(), reps.end(), k) != reps.end()) chosen.push_back(v);
  }
  EXPECT_EQ(rank_of(chosen, space.dimension()), static_cast<int>(reps.size()));
  EXPECT_EQ(rank_of(all, space.dimension()), static_cast<int>(reps.size()));
  EXPECT_LT(reps.size(), terms.size());
}

TEST(Ansatz, JsonListsEveryTerm) {
  auto fam = generate(TensorSignature::standard(1, 0, 1));
  auto j = to_json(fam);
  EXPECT_EQ(j.dump().find("b6") != std::string::npos, true);
}
