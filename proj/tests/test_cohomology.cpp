#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <complex>

#include "nilhodge/cohomology.hpp"
#include "nilhodge/parse.hpp"

using namespace nilhodge;
using T = Theory;

namespace {

std::size_t binom(int n, int k) {
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

// Floating-point oracle: the operator on A^{p,q} assembled monomial by
// monomial from the presentation and ranked by SVD.
Eigen::MatrixXcd dense(const LiePresentation& P, int p, int q, int tp, int tq, Form (LiePresentation::*op)(const Form&) const) {
  BidegreeBasis src(P.n(), p, q), dst(P.n(), tp, tq);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dst.size()), static_cast<Eigen::Index>(src.size()));
  for (std::size_t c = 0; c < src.size(); ++c) {
    Form img = (P.*op)(Form::monomial(P.n(), src[c]));
    for (const auto& [mask, v] : img.terms()) {
      auto r = dst.index(mask);
      if (r) m(static_cast<Eigen::Index>(*r), static_cast<Eigen::Index>(c)) = {v.re().get_d(), v.im().get_d()};
    }
  }
  return m;
}

std::size_t float_rank(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) r += svd.singularValues()(i) > 1e-9;
  return r;
}

std::size_t float_dolbeault(const LiePresentation& P, int p, int q) {
  std::size_t dim = BidegreeBasis(P.n(), p, q).size();
  std::size_t out = q < P.n() ? float_rank(dense(P, p, q, p, q + 1, &LiePresentation::delbar)) : 0;
  std::size_t in = q > 0 ? float_rank(dense(P, p, q - 1, p, q, &LiePresentation::delbar)) : 0;
  return dim - out - in;
}

}  // namespace

TEST(Cohomology, IwasawaGoldenNumbers) {
  CohomologyEngine E(iwasawa());
  EXPECT_EQ(E.dimension(T::dolbeault, 1, 1), 6u);
  EXPECT_EQ(E.dimension(T::aeppli, 1, 1), 8u);
  EXPECT_EQ(E.dimension(T::bott_chern, 2, 0), 3u);
  EXPECT_EQ(E.dimension(T::del, 2, 0), 2u);
  EXPECT_EQ(E.dimension(T::bott_chern, 3, 0), 1u);
  EXPECT_EQ(E.dimension(T::del, 3, 0), 1u);
  EXPECT_EQ(E.dimension(T::dolbeault, 2, 1), 6u);
  EXPECT_EQ(E.dimension(T::aeppli, 2, 1), 6u);
  EXPECT_EQ(E.dimension(T::bott_chern, 3, 3), 1u);
  EXPECT_EQ(E.dimension(T::del, 3, 3), 1u);
}

TEST(Cohomology, IwasawaBettiNumbers) {
  CohomologyEngine E(iwasawa());
  std::vector<std::size_t> b;
  for (int k = 0; k <= 6; ++k) b.push_back(E.betti(k));
  EXPECT_EQ(b, (std::vector<std::size_t>{1, 4, 8, 10, 8, 4, 1}));
}

TEST(Cohomology, TorusIsTheFullExteriorAlgebra) {
  for (int n = 1; n <= 3; ++n) {
    CohomologyEngine E(torus(n));
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= n; ++q)
        for (T t : {T::dolbeault, T::del, T::bott_chern, T::aeppli})
          EXPECT_EQ(E.dimension(t, p, q), binom(n, p) * binom(n, q)) << to_string(t) << " " << p << q;
  }
}

TEST(Cohomology, OutOfRangeIsZero) {
  CohomologyEngine E(iwasawa());
  EXPECT_EQ(E.dimension(T::dolbeault, -1, 0), 0u);
  EXPECT_EQ(E.dimension(T::aeppli, 4, 0), 0u);
  EXPECT_EQ(E.betti(7), 0u);
  EXPECT_EQ(E.group(T::de_rham, 7).representatives.size(), 0u);
}

TEST(Cohomology, DolbeaultAgreesWithFloatingPointOracle) {
  for (const auto& P : {iwasawa(), cfp(), load_presentation(NILHODGE_DATA_DIR "/non_sgg.alg")}) {
    CohomologyEngine E(P);
    for (int p = 0; p <= P.n(); ++p)
      for (int q = 0; q <= P.n(); ++q) EXPECT_EQ(E.dimension(T::dolbeault, p, q), float_dolbeault(P, p, q)) << P.name() << p << q;
  }
}

TEST(Cohomology, CfpNumbersOfTheShippedStructure) {
  // Frozen after cross-checking Dolbeault against the floating-point oracle.
  CohomologyEngine E(cfp());
  EXPECT_EQ(E.dimension(T::dolbeault, 1, 1), 12u);
  EXPECT_EQ(E.dimension(T::bott_chern, 1, 1), 10u);
  EXPECT_EQ(E.dimension(T::dolbeault, 1, 0), 3u);
  EXPECT_EQ(E.dimension(T::dolbeault, 0, 1), 4u);
}

TEST(Cohomology, RepresentativesAreCocyclesAndIndependent) {
  CohomologyEngine E(iwasawa());
  const auto& P = E.presentation();
  for (int p = 0; p <= 3; ++p)
    for (int q = 0; q <= 3; ++q) {
      auto bc = E.group(T::bott_chern, p, q);
      EXPECT_EQ(bc.representatives.size(), bc.dim);
      for (const auto& f : bc.representatives) EXPECT_TRUE(P.d(f).is_zero());
      auto a = E.group(T::aeppli, p, q);
      EXPECT_EQ(a.representatives.size(), a.dim);
      for (const auto& f : a.representatives) EXPECT_TRUE(P.del(P.delbar(f)).is_zero());
    }
  for (int k = 0; k <= 6; ++k) {
    auto g = E.group(T::de_rham, k);
    EXPECT_EQ(g.representatives.size(), g.dim);
    for (const auto& f : g.representatives) EXPECT_TRUE(P.d(f).is_zero());
  }
}

TEST(InducedMaps, IwasawaVerdicts) {
  CohomologyEngine E(iwasawa());
  EXPECT_FALSE(E.induced_map(T::bott_chern, T::del, 2, 0).injective());
  EXPECT_TRUE(E.induced_map(T::dolbeault, T::aeppli, 1, 1).injective());
  EXPECT_TRUE(E.induced_map(T::bott_chern, T::del, 3, 0).injective());
  EXPECT_FALSE(E.induced_map(T::dolbeault, T::aeppli, 2, 1).injective());
  EXPECT_TRUE(E.induced_map(T::bott_chern, T::del, 3, 3).injective());
}

TEST(InducedMaps, TorusArrowsAreBijective) {
  CohomologyEngine E(torus(2));
  for (auto [s, t] : std::vector<std::pair<T, T>>{{T::bott_chern, T::del},
                                                  {T::bott_chern, T::dolbeault},
                                                  {T::del, T::aeppli},
                                                  {T::dolbeault, T::aeppli},
                                                  {T::bott_chern, T::aeppli}})
    for (int p = 0; p <= 2; ++p)
      for (int q = 0; q <= 2; ++q) {
        auto m = E.induced_map(s, t, p, q);
        EXPECT_TRUE(m.injective() && m.surjective()) << m.id();
      }
}

TEST(InducedMaps, RankNullityAcrossTheDiagram) {
  // dim source - kernel = dim target - cokernel for every arrow.
  for (const auto& P : {iwasawa(), cfp()}) {
    CohomologyEngine E(P);
    for (int p = 0; p <= P.n(); ++p)
      for (int q = 0; q <= P.n(); ++q)
        for (auto [s, t] : std::vector<std::pair<T, T>>{{T::bott_chern, T::del}, {T::dolbeault, T::aeppli}}) {
          auto m = E.induced_map(s, t, p, q);
          EXPECT_EQ(E.dimension(s, p, q) - m.kernel_dim, E.dimension(t, p, q) - m.cokernel_dim) << m.id();
        }
  }
}

TEST(InducedMaps, RejectsArrowsOutsideTheDiagram) {
  CohomologyEngine E(iwasawa());
  EXPECT_THROW(E.induced_map(T::aeppli, T::bott_chern, 1, 1), InvalidArrow);
  EXPECT_THROW(E.induced_map(T::de_rham, T::aeppli, 1, 1), InvalidArrow);
}

TEST(Conditions, IwasawaExamples) {
  CohomologyEngine E(iwasawa());
  EXPECT_FALSE(E.cond_B(2, 0));
  for (int q = 1; q <= 3; ++q) EXPECT_TRUE(E.cond_calB(1, q)) << q;
  EXPECT_TRUE(E.sgg());
}

TEST(Conditions, TopHolomorphicDegreeAlwaysSatisfiesS) {
  for (const auto& P : {torus(2), iwasawa(), cfp()}) EXPECT_TRUE(CohomologyEngine(P).cond_S(P.n(), 0)) << P.name();
}

TEST(Conditions, SggHoldsOnTorusAndFailsOnShippedCounterexample) {
  EXPECT_TRUE(CohomologyEngine(torus(3)).sgg());
  auto P = load_presentation(NILHODGE_DATA_DIR "/non_sgg.alg");
  CohomologyEngine E(P);
  EXPECT_FALSE(E.sgg());
  EXPECT_GT(E.induced_map(T::bott_chern, T::dolbeault, 0, 1).cokernel_dim, 0u);
}

TEST(Conditions, CalSFollowsFromItsDefinition) {
  // calS^{p,q} by brute force: every dbar-closed g in A^{p-1,q} has del g in im dbar.
  for (const auto& P : {iwasawa(), cfp()}) {
    CohomologyEngine E(P);
    const auto& D = E.complex();
    for (int p = 1; p <= P.n(); ++p)
      for (int q = 0; q <= P.n(); ++q) {
        bool holds = true;
        for (const auto& v : kernel_basis(D.delbar(p - 1, q))) {
          Form g = D.basis(p - 1, q).form(v);
          Vector target = D.basis(p, q).coords(P.del(g));
          if (q == 0) {
            holds = holds && is_zero(target);
          } else {
            holds = holds && solve(D.delbar(p, q - 1), target).has_value();
          }
        }
        EXPECT_EQ(E.cond_calS(p, q), holds) << P.name() << " " << p << q;
      }
  }
}

TEST(Duality, BottChernAndAeppliDimensions) {
  for (const auto& P : {torus(2), iwasawa(), cfp()}) {
    CohomologyEngine E(P);
    int n = P.n();
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= n; ++q) {
        auto bc = E.dimension(T::bott_chern, p, q);
        EXPECT_EQ(bc, E.dimension(T::bott_chern, q, p));
        EXPECT_EQ(bc, E.dimension(T::aeppli, n - q, n - p));
        EXPECT_EQ(bc, E.dimension(T::aeppli, n - p, n - q));
        EXPECT_EQ(E.dimension(T::dolbeault, p, q), E.dimension(T::dolbeault, n - p, n - q));
      }
  }
}

TEST(Pairing, Examples) {
  CohomologyEngine T1(torus(1));
  EXPECT_EQ(T1.pairing(Form::constant(1, 1), wedge(Form::tau(1, 1), Form::taubar(1, 1))), Scalar(1));
  CohomologyEngine E(iwasawa());
  Form zero(3);
  Form bc = wedge(Form::tau(3, 1), Form::taubar(3, 1));
  EXPECT_EQ(E.pairing(zero, bc), Scalar(0));
  // t2^t3^~t2^~t3 ^ t1^~t1 reaches t1 t2 t3 ~t1 ~t2 ~t3 by six transpositions.
  Form a = wedge(wedge(Form::tau(3, 2), Form::tau(3, 3)), wedge(Form::taubar(3, 2), Form::taubar(3, 3)));
  EXPECT_EQ(E.pairing(a, bc), Scalar(1));
}

TEST(Pairing, IsWellDefinedOnClasses) {
  CohomologyEngine E(iwasawa());
  const auto& P = E.presentation();
  Form a = wedge(wedge(Form::tau(3, 2), Form::tau(3, 3)), wedge(Form::taubar(3, 2), Form::taubar(3, 3)));
  Form b = wedge(Form::tau(3, 1), Form::taubar(3, 1));
  Scalar base = E.pairing(a, b);
  // Adding del eta + dbar xi to an Aeppli cocycle leaves the value unchanged.
  Form eta = wedge(Form::tau(3, 3), wedge(Form::taubar(3, 2), Form::taubar(3, 3)));
  Form xi = wedge(wedge(Form::tau(3, 2), Form::tau(3, 3)), Form::taubar(3, 3));
  Form a2 = a + P.del(eta) + P.delbar(xi);
  Form b2 = b;
  EXPECT_EQ(E.pairing(a2, b2), base);
}

TEST(Pairing, RejectsWrongBidegreesAndNonCocycles) {
  CohomologyEngine E(iwasawa());
  EXPECT_THROW(E.pairing(Form::tau(3, 1), Form::tau(3, 2)), DegreeMismatch);
  Form a = wedge(wedge(Form::tau(3, 1), Form::tau(3, 2)), wedge(Form::taubar(3, 1), Form::taubar(3, 2)));
  EXPECT_THROW(E.pairing(a, wedge(Form::tau(3, 3), Form::taubar(3, 3))), NotCocycle);
}

TEST(Pairing, MatricesAreNondegenerate) {
  for (const auto& P : {torus(2), iwasawa(), cfp()}) {
    CohomologyEngine E(P);
    for (int p = 0; p <= P.n(); ++p)
      for (int q = 0; q <= P.n(); ++q) {
        Matrix m = E.pairing_matrix(p, q);
        EXPECT_EQ(m.rows(), m.cols());
        EXPECT_EQ(rank(m), m.rows()) << P.name() << " " << p << q;
      }
  }
}

TEST(Frolicher, EulerCharacteristicsAgree) {
  for (const auto& P : {torus(3), iwasawa(), cfp()}) {
    CohomologyEngine E(P);
    long dol = 0, dr = 0;
    for (int p = 0; p <= P.n(); ++p)
      for (int q = 0; q <= P.n(); ++q) dol += ((p + q) % 2 ? -1 : 1) * static_cast<long>(E.dimension(T::dolbeault, p, q));
    for (int k = 0; k <= 2 * P.n(); ++k) dr += (k % 2 ? -1 : 1) * static_cast<long>(E.betti(k));
    EXPECT_EQ(dol, dr) << P.name();
  }
}
