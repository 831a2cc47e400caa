#include <gtest/gtest.h>

#include <random>

#include "nilhodge/deformation.hpp"
#include "nilhodge/parse.hpp"
#include "nilhodge/verify.hpp"
#include "random_data.hpp"

using namespace nilhodge;

namespace {

Matrix invertible(std::mt19937& rng, std::size_t n) {
  for (;;) {
    Matrix m = testgen::random_matrix(rng, n, n, 0.7);
    if (!determinant(m).is_zero()) return m;
  }
}

// Coframe tau^k(t) and its conjugates as forms over the base coframe.
std::vector<Form> deformed_slots(const Beltrami& phi) {
  const int n = phi.n();
  Matrix plus = slot_one_plus_phi(phi);
  std::vector<Form> out(static_cast<std::size_t>(2 * n), Form(n));
  for (int k = 1; k <= n; ++k) {
    out[static_cast<std::size_t>(k - 1)] = simul_contract(plus, Form::tau(n, k));
    out[static_cast<std::size_t>(n + k - 1)] = conjugate(out[static_cast<std::size_t>(k - 1)]);
  }
  return out;
}

}  // namespace

TEST(BlockInverse, InvertsRandomFrames) {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + static_cast<std::size_t>(trial % 3);
    FrameMatrix F{invertible(rng, n), testgen::random_beltrami(rng, static_cast<int>(n)).grid()};
    Matrix inv = block_inverse(F);
    Matrix one = Matrix::identity(2 * n);
    EXPECT_EQ(inv * F.assembled(), one);
    EXPECT_EQ(F.assembled() * inv, one);
  }
}

TEST(BlockInverse, OneDimensionalExample) {
  Matrix J(1, 1), phi(1, 1);
  J(0, 0) = 2;
  phi(0, 0) = Scalar::fraction(1, 2, 0, 1);
  // [[2, 1], [1, 2]]^{-1} = [[2, -1], [-1, 2]] / 3
  Matrix inv = block_inverse({J, phi});
  EXPECT_EQ(inv(0, 0), Scalar::fraction(2, 3, 0, 1));
  EXPECT_EQ(inv(0, 1), Scalar::fraction(-1, 3, 0, 1));
  EXPECT_EQ(inv(1, 0), Scalar::fraction(-1, 3, 0, 1));
  EXPECT_EQ(inv(1, 1), Scalar::fraction(2, 3, 0, 1));
}

TEST(BlockInverse, ZeroPhiGivesBlockDiagonal) {
  std::mt19937 rng(1);
  Matrix J = invertible(rng, 3);
  Matrix inv = block_inverse({J, Matrix(3, 3)});
  Matrix expected = Matrix::vstack(Matrix::hstack(inverse(J), Matrix(3, 3)), Matrix::hstack(Matrix(3, 3), inverse(J).conj()));
  EXPECT_EQ(inv, expected);
}

TEST(BlockInverse, RejectsSingularFrames) {
  Matrix one = Matrix::identity(1);
  EXPECT_THROW(block_inverse({one, one}), SingularFrame);
  EXPECT_THROW(block_inverse({Matrix(1, 1), Matrix(1, 1)}), SingularFrame);
  EXPECT_THROW(block_inverse({Matrix::identity(2), Matrix(1, 1)}), DegreeMismatch);
}

TEST(DeformStructure, IwasawaCentralDirectionsKeepTheEquations) {
  auto P = iwasawa();
  Beltrami phi(3);
  phi.at(3, 1) = Scalar::fraction(1, 3, 1, 2);
  phi.at(3, 2) = Scalar::fraction(0, 1, -1, 4);
  auto D = deform_structure(P, phi);
  EXPECT_TRUE(D.derived.d(Form::tau(3, 1)).is_zero());
  EXPECT_TRUE(D.derived.d(Form::tau(3, 2)).is_zero());
  EXPECT_EQ(D.derived.d(Form::tau(3, 3)), -wedge(Form::tau(3, 1), Form::tau(3, 2)));
}

TEST(DeformStructure, CfpFamilyMatchesTheShippedEquations) {
  auto P = cfp();
  auto fam = load_beltrami(NILHODGE_DATA_DIR "/cfp_phi.blt", P.names());
  auto bindings = parse_bindings("t1=i/2,t2=1/3");
  auto D = deform_structure(P, fam.at(bindings));
  EXPECT_EQ(D.derived.d(Form::tau(5, 4)), D.derived.d(Form::tau(5, 5)) * -bindings.at("t1"));
  CohomologyEngine E(D.derived);
  EXPECT_EQ(E.dimension(Theory::dolbeault, 1, 1), 12u);
  EXPECT_EQ(E.dimension(Theory::bott_chern, 1, 1), 10u);
}

TEST(DeformStructure, DerivedEquationsReproduceDifferentialsOfTheNewCoframe) {
  // d(tau^k(t)) computed on the base equals the derived equations with each
  // slot replaced by the corresponding deformed coframe element.
  std::mt19937 rng(9);
  for (const auto& P : {iwasawa(), cfp()}) {
    sample::IntegrableSampler sampler(P);
    for (int trial = 0; trial < 6; ++trial) {
      Beltrami phi = sampler.draw(rng);
      auto D = deform_structure(P, phi);
      auto slots = deformed_slots(phi);
      for (int k = 1; k <= P.n(); ++k)
        EXPECT_EQ(P.d(slots[static_cast<std::size_t>(k - 1)]), substitute_slots(D.derived.d(Form::tau(P.n(), k)), slots))
            << P.name() << " phi=" << phi.str(P.names()) << " k=" << k;
    }
  }
}

TEST(DeformStructure, ZeroPhiIsTheIdentity) {
  auto P = iwasawa();
  auto D = deform_structure(P, Beltrami(3));
  for (int k = 1; k <= 3; ++k) EXPECT_EQ(D.derived.d(Form::tau(3, k)), P.d(Form::tau(3, k)));
}

TEST(DeformStructure, RejectsNonIntegrableAndMismatchedInput) {
  auto P = iwasawa();
  EXPECT_THROW(deform_structure(P, Beltrami::elementary(3, 3, 3)), NotIntegrable);
  EXPECT_THROW(deform_structure(P, Beltrami(2)), PresentationMismatch);
  EXPECT_THROW(deform_structure(torus(1), Beltrami::elementary(1, 1, 1)), SingularFrame);
}

TEST(DeformedHodge, IsUpperSemicontinuousOnSamples) {
  std::mt19937 rng(17);
  auto P = iwasawa();
  CohomologyEngine E(P);
  sample::IntegrableSampler sampler(P);
  for (int trial = 0; trial < 5; ++trial) {
    Beltrami phi = sampler.draw(rng);
    CohomologyEngine Et(deform_structure(P, phi).derived);
    for (int p = 0; p <= 3; ++p)
      for (int q = 0; q <= 3; ++q)
        for (Theory t : {Theory::dolbeault, Theory::bott_chern, Theory::aeppli})
          EXPECT_LE(Et.dimension(t, p, q), E.dimension(t, p, q)) << phi.str(P.names()) << " " << to_string(t) << p << q;
  }
}

TEST(Obstruction, ZeroPhiGivesDelbar) {
  std::mt19937 rng(2);
  auto P = iwasawa();
  for (int trial = 0; trial < 20; ++trial) {
    Form s = testgen::random_form(rng, 3, trial % 4, (trial / 4) % 4);
    EXPECT_EQ(obstruction(P, Beltrami(3), s), P.delbar(s));
  }
}

TEST(Obstruction, VanishesInTopAntiholomorphicDegree) {
  std::mt19937 rng(4);
  auto P = cfp();
  for (int trial = 0; trial < 10; ++trial) {
    Form s = testgen::random_form(rng, 5, trial % 6, 5);
    EXPECT_TRUE(obstruction(P, testgen::random_beltrami(rng, 5), s).is_zero());
  }
}

TEST(Obstruction, HolomorphicFormsOfTheCfpFamilyExtend) {
  auto P = cfp();
  auto fam = load_beltrami(NILHODGE_DATA_DIR "/cfp_phi.blt", P.names());
  Beltrami phi = fam.at(parse_bindings("t1=1/2,t2=0"));
  EXPECT_TRUE(obstruction(P, phi, Form::tau(5, 1)).is_zero());
  EXPECT_TRUE(obstruction(P, phi, wedge(Form::tau(5, 1), Form::tau(5, 2))).is_zero());
}

TEST(Obstruction, AgreesWithDelbarOfTheExtension) {
  std::mt19937 rng(23);
  for (const auto& P : {iwasawa(), cfp()}) {
    sample::IntegrableSampler sampler(P);
    for (int trial = 0; trial < 4; ++trial) {
      auto D = deform_structure(P, sampler.draw(rng));
      for (int k = 0; k < 10; ++k) {
        std::uniform_int_distribution<int> deg(0, P.n());
        Form s = testgen::random_form(rng, P.n(), deg(rng), deg(rng), 2);
        EXPECT_EQ(obstruction(P, D.phi, s).is_zero(), delbar_t_of_extension(D, s).is_zero());
      }
    }
  }
}
