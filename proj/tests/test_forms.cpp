#include <gtest/gtest.h>

#include <random>

#include "nilhodge/form.hpp"
#include "random_data.hpp"

using namespace nilhodge;

namespace {

const Scalar I = Scalar::imag_unit();
Form t(int k) { return Form::tau(3, k); }
Form tb(int k) { return Form::taubar(3, k); }

}  // namespace

TEST(Wedge, Examples) {
  EXPECT_EQ(wedge(t(1), t(2)), Form::monomial(3, 0b11));
  EXPECT_TRUE(wedge(t(1), t(1)).is_zero());
  // (t1^~t1)^(t2^~t2) = -t1^t2^~t1^~t2
  Form lhs = wedge(wedge(t(1), tb(1)), wedge(t(2), tb(2)));
  EXPECT_EQ(lhs, -wedge(wedge(t(1), t(2)), wedge(tb(1), tb(2))));
  EXPECT_EQ(lhs.coeff(make_mask(3, 0b11, 0b11)), Scalar(-1));
}

TEST(Wedge, GradedCommutativeOnMonomials) {
  const int n = 3;
  for (Mask a = 0; a < (1u << 6); ++a)
    for (Mask b = 0; b < (1u << 6); ++b) {
      Form fa = Form::monomial(n, a), fb = Form::monomial(n, b);
      int sign = (popcount(a) * popcount(b)) % 2 ? -1 : 1;
      EXPECT_EQ(wedge(fa, fb), wedge(fb, fa) * Scalar(sign));
    }
}

TEST(Wedge, AssociativeOnRandomForms) {
  std::mt19937 rng(1);
  for (int k = 0; k < 50; ++k) {
    Form a = testgen::random_form(rng, 3, 1, 0), b = testgen::random_form(rng, 3, 0, 1),
         c = testgen::random_form(rng, 3, 1, 1);
    EXPECT_EQ(wedge(wedge(a, b), c), wedge(a, wedge(b, c)));
  }
}

TEST(Wedge, RejectsMismatchedCoframes) { EXPECT_THROW(wedge(Form::tau(2, 1), Form::tau(3, 1)), PresentationMismatch); }

TEST(Conjugate, Examples) {
  EXPECT_EQ(conjugate(t(1)), tb(1));
  // conj(i t1^~t2) = -i ~t1^t2 = i t2^~t1
  EXPECT_EQ(conjugate(wedge(t(1), tb(2)) * I), wedge(t(2), tb(1)) * I);
}

TEST(Conjugate, IsAnInvolutionSwappingBidegree) {
  std::mt19937 rng(2);
  for (int p = 0; p <= 3; ++p)
    for (int q = 0; q <= 3; ++q) {
      Form a = testgen::random_form(rng, 3, p, q);
      EXPECT_EQ(conjugate(conjugate(a)), a);
      if (!a.is_zero()) { EXPECT_EQ(conjugate(a).bidegree(), (std::pair{q, p})); }
    }
}

TEST(Conjugate, IsMultiplicative) {
  std::mt19937 rng(4);
  for (int k = 0; k < 50; ++k) {
    Form a = testgen::random_form(rng, 3, 1, 1), b = testgen::random_form(rng, 3, 1, 0);
    EXPECT_EQ(conjugate(wedge(a, b)), wedge(conjugate(a), conjugate(b)));
  }
}

TEST(Interior, IsAnAntiderivation) {
  std::mt19937 rng(6);
  for (int k = 0; k < 50; ++k) {
    Form a = testgen::random_form(rng, 3, 1, 1), b = testgen::random_form(rng, 3, 1, 0);
    for (int s = 0; s < 6; ++s)
      EXPECT_EQ(interior(s, wedge(a, b)), wedge(interior(s, a), b) + wedge(a, interior(s, b)));
  }
}

TEST(BidegreeBasis, LexicographicOrder) {
  BidegreeBasis b(3, 1, 1);
  ASSERT_EQ(b.size(), 9u);
  EXPECT_EQ(b[0], make_mask(3, 0b001, 0b001));
  EXPECT_EQ(b[1], make_mask(3, 0b001, 0b010));
  EXPECT_EQ(b[3], make_mask(3, 0b010, 0b001));
  BidegreeBasis c(4, 2, 0);
  std::vector<Mask> expected{0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100};
  EXPECT_EQ(c.monomials(), expected);
  EXPECT_EQ(BidegreeBasis(3, 4, 0).size(), 0u);
}

TEST(Form, ProjectionAndText) {
  Form f = t(1) + wedge(t(2), tb(3)) * Scalar::fraction(1, 2, 1, 3);
  EXPECT_EQ(f.project(1, 0), t(1));
  EXPECT_FALSE(f.bidegree());
  EXPECT_EQ(f.str(), "1*t1 + (1/2+1/3i)*t2^~t3");
}
