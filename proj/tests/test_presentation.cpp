#include <gtest/gtest.h>

#include "nilhodge/presentation.hpp"

using namespace nilhodge;

namespace {

const Scalar I = Scalar::imag_unit();

std::vector<LiePresentation> shipped() { return {torus(2), iwasawa(), cfp()}; }

}  // namespace

TEST(Builtin, Iwasawa) {
  auto P = builtin("iwasawa");
  EXPECT_EQ(P.n(), 3);
  EXPECT_TRUE(P.d_tau(1).is_zero());
  EXPECT_TRUE(P.d_tau(2).is_zero());
  EXPECT_EQ(P.d_tau(3), -wedge(Form::tau(3, 1), Form::tau(3, 2)));
  EXPECT_TRUE(P.complex_parallelizable());
  EXPECT_TRUE(P.nilpotent_adapted());
}

TEST(Builtin, Torus) {
  auto P = builtin("torus(2)");
  EXPECT_EQ(P.n(), 2);
  for (Mask m = 0; m < 16; ++m) EXPECT_TRUE(P.d(Form::monomial(2, m)).is_zero());
  EXPECT_THROW(builtin("torus(0)"), UnknownBuiltin);
  EXPECT_THROW(builtin("heisenberg"), UnknownBuiltin);
}

TEST(Builtin, Cfp) {
  auto P = builtin("cfp");
  auto t = [](int k) { return Form::tau(5, k); };
  auto tb = [](int k) { return Form::taubar(5, k); };
  EXPECT_EQ(P.d_tau(3), wedge(t(1), t(4)) * (Scalar(1) - I) - wedge(t(1), tb(1)) -
                           wedge(t(1), tb(4)) * Scalar(Rational(1), Rational(1)));
  EXPECT_EQ(P.d_tau(5), (wedge(t(1), tb(3)) + wedge(t(3), tb(1)) - wedge(t(2), tb(2))) * Scalar::fraction(1, 2));
  EXPECT_FALSE(P.complex_parallelizable());
  EXPECT_TRUE(P.nilpotent_adapted());
  // d conj(tau^5) = -d tau^5
  EXPECT_EQ(P.d(tb(5)), -P.d(t(5)));
}

TEST(Builtin, CfpFrameBrackets) {
  auto P = cfp();
  const int n = 5;
  // [conj theta_1, theta_4] = (1-i) conj theta_3, and zero for conj theta_2..5
  auto b = P.bracket(n + 0, 3);
  for (int c = 0; c < 2 * n; ++c) EXPECT_EQ(b[static_cast<std::size_t>(c)], c == n + 2 ? Scalar(1) - I : Scalar(0));
  for (int i = 2; i <= 5; ++i)
    for (const auto& s : P.bracket(n + i - 1, 3)) EXPECT_TRUE(s.is_zero());
}

TEST(Validation, CfpWithoutTheHolomorphicTermViolatesJacobi) {
  const int n = 5;
  auto t = [](int k) { return Form::tau(5, k); };
  auto tb = [](int k) { return Form::taubar(5, k); };
  std::vector<Form> d(5, Form(n));
  d[2] = -(wedge(t(1), tb(1)) + Scalar(Rational(1), Rational(1)) * wedge(t(1), tb(4)));
  d[4] = Scalar(Rational(1, 2)) * (wedge(t(1), tb(3)) + wedge(t(3), tb(1)) - wedge(t(2), tb(2)));
  EXPECT_THROW(LiePresentation(default_names(n), d), JacobiError);
}

TEST(Validation, CyclicAlgebraIsAccepted) {
  const int n = 3;
  auto t = [](int k) { return Form::tau(3, k); };
  std::vector<Form> d{wedge(t(2), t(3)), wedge(t(3), t(1)), wedge(t(1), t(2))};
  LiePresentation P(default_names(n), d);
  EXPECT_TRUE(P.d(P.d_tau(1)).is_zero());
  EXPECT_FALSE(P.nilpotent_adapted());
}

TEST(Validation, RejectsZeroTwoComponent) {
  const int n = 2;
  std::vector<Form> d{wedge(Form::taubar(n, 1), Form::taubar(n, 2)), Form(n)};
  EXPECT_THROW(LiePresentation(default_names(n), d), IntegrabilityError);
}

TEST(Validation, RejectsJacobiViolation) {
  // d tau^2 = tau^1^conj tau^1 is closed, but d tau^3 = tau^2^conj tau^2 is not.
  const int n = 3;
  std::vector<Form> d{Form(n), wedge(Form::tau(n, 1), Form::taubar(n, 1)), wedge(Form::tau(n, 2), Form::taubar(n, 2))};
  try {
    LiePresentation P(default_names(n), d);
    FAIL() << "expected JacobiError";
  } catch (const JacobiError& e) {
    EXPECT_NE(std::string(e.what()).find("t3"), std::string::npos);
  }
}

TEST(Validation, DifferentialsSquareToZeroOnEveryMonomial) {
  for (const auto& P : shipped()) {
    const int n = P.n();
    for (Mask m = 0; m < (Mask{1} << (2 * n)); ++m) {
      Form f = Form::monomial(n, m);
      EXPECT_TRUE(P.d(P.d(f)).is_zero());
      EXPECT_TRUE(P.del(P.del(f)).is_zero());
      EXPECT_TRUE(P.delbar(P.delbar(f)).is_zero());
      EXPECT_TRUE((P.del(P.delbar(f)) + P.delbar(P.del(f))).is_zero());
      EXPECT_EQ(P.d(f), P.del(f) + P.delbar(f)) << P.name();
      EXPECT_EQ(conjugate(P.d(f)), P.d(conjugate(f)));
    }
  }
}

TEST(Validation, DIsAnAntiderivation) {
  auto P = cfp();
  for (Mask a = 1; a < (1u << 10); a = a * 3 + 1)
    for (Mask b = 1; b < (1u << 10); b = b * 5 + 2) {
      Form fa = Form::monomial(5, a & 0x3ff), fb = Form::monomial(5, b & 0x3ff);
      Scalar sign = popcount(a & 0x3ff) % 2 ? Scalar(-1) : Scalar(1);
      EXPECT_EQ(P.d(wedge(fa, fb)), wedge(P.d(fa), fb) + wedge(fa, P.d(fb)) * sign);
    }
}
