#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "nilhodge/cohomology.hpp"
#include "nilhodge/deformation.hpp"
#include "nilhodge/harmonic.hpp"
#include "nilhodge/series.hpp"

namespace nilhodge {

namespace sample {

inline Scalar small_scalar(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-1, 1), den(2, 4);
  return Scalar::fraction(num(rng), den(rng), num(rng), den(rng));
}

/// Sparse Beltrami differential with entries of size at most 1/2, which
/// keeps det(1 - conj(phi) phi) away from zero for n <= 16.
inline Beltrami small_beltrami(std::mt19937& rng, int n, int entries = 3) {
  std::uniform_int_distribution<int> idx(1, n);
  Beltrami phi(n);
  for (int k = 0; k < entries; ++k) phi.at(idx(rng), idx(rng)) = small_scalar(rng);
  return phi;
}

/// Integrable Beltrami differential: the Kuranishi series truncated at order
/// two and evaluated at random small parameters, accepted when exactly
/// integrable; otherwise a scaled harmonic direction that is, else zero.
class IntegrableSampler {
public:
  explicit IntegrableSampler(const LiePresentation& P) : P_(P), series_(kuranishi_series(P, 2).phi) {
    for (const auto& b : VectorFormComplex(P).harmonic_beltrami_basis())
      if (is_integrable(P, b)) singles_.push_back(b);
  }

  Beltrami draw(std::mt19937& rng) const {
    const int n = P_.n();
    for (int attempt = 0; attempt < 8 && series_.slots() > 0; ++attempt) {
      std::vector<Scalar> t;
      std::bernoulli_distribution use(0.5);
      for (int k = 0; k < series_.slots(); ++k) t.push_back(use(rng) ? small_scalar(rng) : Scalar());
      Beltrami phi(n);
      for (const auto& [I, c] : series_.terms()) {
        Scalar w = 1;
        for (std::size_t k = 0; k < I.size(); ++k)
          for (int e = 0; e < I[k]; ++e) w *= t[k];
        phi += c * w;
      }
      if (is_integrable(P_, phi) && !smallness_det(phi).is_zero()) return phi;
    }
    if (!singles_.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, singles_.size() - 1);
      Beltrami phi = singles_[pick(rng)] * small_scalar(rng);
      if (!smallness_det(phi).is_zero()) return phi;
    }
    return Beltrami(n);
  }

private:
  const LiePresentation& P_;
  BeltramiSeries series_;
  std::vector<Beltrami> singles_;
};

}  // namespace sample

struct CheckResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::string first_failure;

  void record(bool ok, const std::function<std::string()>& detail) {
    if (ok) {
      ++passed;
      return;
    }
    if (failed == 0) first_failure = detail();
    ++failed;
  }
};

struct VerifyReport {
  std::string presentation;
  std::vector<CheckResult> checks;

  std::size_t failures() const {
    std::size_t f = 0;
    for (const auto& c : checks) f += c.failed;
    return f;
  }
  bool ok() const { return failures() == 0; }
};

struct VerifyOptions {
  std::size_t samples = 50;
  /// Cap on (phi, monomial) pairs per identity; every monomial is covered
  /// at least once regardless.
  std::size_t pair_budget = 1024;
  std::uint32_t seed = 20240601;
};

/// Identities relating d, the extension map and the obstruction operator,
/// checked on every basis monomial against random small phi.
inline std::vector<CheckResult> identity_suite(const LiePresentation& P, const VerifyOptions& opt = {}) {
  const int n = P.n();
  std::mt19937 rng(opt.seed);
  std::vector<Beltrami> phis, psis, integrable;
  sample::IntegrableSampler sampler(P);
  for (std::size_t k = 0; k < opt.samples; ++k) {
    phis.push_back(sample::small_beltrami(rng, n));
    psis.push_back(sample::small_beltrami(rng, n));
    integrable.push_back(sampler.draw(rng));
  }
  std::vector<DeformedPresentation> deformed;
  for (const auto& phi : integrable) deformed.push_back(deform_structure(P, phi));

  CheckResult op{"operator identity e^{-i_phi} d e^{i_phi} = d - L_phi + i_{dbar phi - [phi,phi]/2}", 0, 0, {}};
  CheckResult comm{"commutator i_[phi,psi] = [L_phi, i_psi]", 0, 0, {}};
  CheckResult real{"extension map commutes with conjugation", 0, 0, {}};
  CheckResult inv{"extension map is two-sided invertible", 0, 0, {}};
  CheckResult equiv{"obstruction vanishes iff dbar_t of the extension vanishes", 0, 0, {}};
  CheckResult fact{"e^{-i_phi} e^{i_phi|i_conj(phi)} = (1 - conj(phi) phi + conj(phi)) simultaneous contraction", 0, 0, {}};

  const std::size_t monomials = std::size_t{1} << (2 * n);
  const std::size_t per_monomial =
      std::max<std::size_t>(1, std::min(opt.samples, opt.pair_budget / std::max<std::size_t>(1, monomials)));
  auto who = [&](const Beltrami& phi, const Form& a) { return "phi=" + phi.str(P.names()) + " a=" + a.str(P.names()); };
  for (std::size_t m = 0; m < monomials; ++m) {
    Form a = Form::monomial(n, static_cast<Mask>(m));
    for (std::size_t r = 0; r < per_monomial; ++r) {
      std::size_t k = (m * per_monomial + r) % opt.samples;
      const Beltrami& phi = phis[k];
      const Beltrami& psi = psis[k];
      Beltrami minus = phi * Scalar(-1);

      Form lhs = exp_contract(minus, P.d(exp_contract(phi, a)));
      Form rhs = P.d(a) - lie_derivative_10(P, phi, a) + contract(integrability_defect(P, phi), a);
      op.record(lhs == rhs, [&] { return who(phi, a); });

      Form c1 = contract(schouten_bracket(P, phi, psi), a);
      Form c2 = lie_derivative_10(P, phi, contract(psi, a)) - contract(psi, lie_derivative_10(P, phi, a));
      comm.record(c1 == c2, [&] { return who(phi, a) + " psi=" + psi.str(P.names()); });

      Form ext = extension_map(phi, a).base;
      real.record(conjugate(ext) == extension_map(phi, conjugate(a)).base, [&] { return who(phi, a); });
      bool left = extension_inverse({phi, ext}) == a;
      bool right = extension_map(phi, extension_inverse({phi, a})).base == a;
      inv.record(left && right, [&] { return who(phi, a); });
      fact.record(exp_contract(minus, ext) == simul_contract(slot_one_minus_phibar_phi_plus_phibar(phi), a),
                  [&] { return who(phi, a); });

      const auto& D = deformed[k];
      bool obstruction_zero = obstruction(P, D.phi, a).is_zero();
      bool closed = delbar_t_of_extension(D, a).is_zero();
      equiv.record(obstruction_zero == closed, [&] { return who(D.phi, a); });
    }
  }
  return {op, comm, real, inv, equiv, fact};
}

/// Duality and Hodge-theory consistency of the cohomology tables.
inline std::vector<CheckResult> hodge_suite(const LiePresentation& P) {
  auto cx = std::make_shared<DoubleComplex>(P);
  CohomologyEngine E(cx);
  HarmonicContext H(cx);
  const int n = P.n();
  using T = Theory;
  CheckResult dual{"h_BC^{p,q} = h_BC^{q,p} = h_A^{n-q,n-p} = h_A^{n-p,n-q}", 0, 0, {}};
  CheckResult serre{"h_dbar^{p,q} = h_dbar^{n-p,n-q} and h_del^{p,q} = h_dbar^{q,p}", 0, 0, {}};
  CheckResult pairing{"Aeppli / Bott-Chern pairing matrices have full rank", 0, 0, {}};
  CheckResult harm{"dim ker Laplacian equals the cohomology dimension", 0, 0, {}};
  CheckResult euler{"sum (-1)^{p+q} h_dbar^{p,q} = sum (-1)^k b_k", 0, 0, {}};
  auto at = [](int p, int q) { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; };
  long chi_dbar = 0, chi_dr = 0;
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      auto bc = E.dimension(T::bott_chern, p, q);
      bool d_ok = bc == E.dimension(T::bott_chern, q, p) && bc == E.dimension(T::aeppli, n - q, n - p) &&
                  bc == E.dimension(T::aeppli, n - p, n - q);
      dual.record(d_ok, [&] { return at(p, q); });
      auto hd = E.dimension(T::dolbeault, p, q);
      serre.record(hd == E.dimension(T::dolbeault, n - p, n - q) && E.dimension(T::del, p, q) == E.dimension(T::dolbeault, q, p),
                   [&] { return at(p, q); });
      Matrix gram = E.pairing_matrix(p, q);
      bool full = gram.rows() == gram.cols() && rank(gram) == gram.rows();
      pairing.record(full, [&] { return at(p, q) + " rank " + std::to_string(rank(gram)) + " of " + std::to_string(gram.rows()) + "x" + std::to_string(gram.cols()); });
      auto kd = H.laplacian(Laplacian::dolbeault, p, q);
      auto kb = H.laplacian(Laplacian::bott_chern, p, q);
      bool h_ok = kd.cols() - rank(kd) == hd && kb.cols() - rank(kb) == bc;
      harm.record(h_ok, [&] { return at(p, q); });
      chi_dbar += ((p + q) % 2 ? -1 : 1) * static_cast<long>(hd);
    }
  for (int k = 0; k <= 2 * n; ++k) chi_dr += (k % 2 ? -1 : 1) * static_cast<long>(E.betti(k));
  euler.record(chi_dbar == chi_dr, [&] { return std::to_string(chi_dbar) + " vs " + std::to_string(chi_dr); });
  return {dual, serre, pairing, harm, euler};
}

inline VerifyReport verify(const LiePresentation& P, const VerifyOptions& opt = {}) {
  VerifyReport r{P.name(), identity_suite(P, opt)};
  for (auto& c : hodge_suite(P)) r.checks.push_back(std::move(c));
  return r;
}

}  // namespace nilhodge
