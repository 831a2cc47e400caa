#pragma once

#include <string>
#include <utility>

#include "nilhodge/beltrami.hpp"
#include "nilhodge/cohomology.hpp"
#include "nilhodge/errors.hpp"
#include "nilhodge/matrix.hpp"

namespace nilhodge {

/// Frame data of a deformed coframe: J plays the role of the holomorphic
/// Jacobian and phi is an n x n grid.
struct FrameMatrix {
  Matrix J;
  Matrix phi;

  /// [[J, J phi], [conj(J phi), conj J]].
  Matrix assembled() const {
    Matrix jp = J * phi;
    return Matrix::vstack(Matrix::hstack(J, jp), Matrix::hstack(jp.conj(), J.conj()));
  }
};

/// Inverse of the assembled frame matrix from its four closed-form blocks:
/// (1 - phi phibar)^{-1} J^{-1}, -phi (1 - phibar phi)^{-1} Jbar^{-1},
/// -(1 - phibar phi)^{-1} phibar J^{-1}, (1 - phibar phi)^{-1} Jbar^{-1}.
inline Matrix block_inverse(const FrameMatrix& F) {
  std::size_t n = F.J.rows();
  if (F.J.cols() != n || F.phi.rows() != n || F.phi.cols() != n)
    throw DegreeMismatch("frame blocks must be square of equal size");
  Matrix one = Matrix::identity(n);
  Matrix phibar = F.phi.conj();
  Scalar d1 = determinant(one - F.phi * phibar);
  Scalar d2 = determinant(one - phibar * F.phi);
  Scalar dj = determinant(F.J);
  if (d1.is_zero() || d2.is_zero() || dj.is_zero()) throw SingularFrame("frame matrix is not invertible");
  Matrix jinv = inverse(F.J);
  Matrix jbarinv = jinv.conj();
  Matrix a = inverse(one - F.phi * phibar);
  Matrix b = inverse(one - phibar * F.phi);
  Matrix tl = a * jinv;
  Matrix tr = -(F.phi * b * jbarinv);
  Matrix bl = -(b * phibar * jinv);
  Matrix br = b * jbarinv;
  return Matrix::vstack(Matrix::hstack(tl, tr), Matrix::hstack(bl, br));
}

/// A presentation together with the structure equations of the coframe
/// tau^k(t) = tau^k + phi -| tau^k.
struct DeformedPresentation {
  LiePresentation base;
  Beltrami phi;
  LiePresentation derived;
};

inline void require_integrable(const LiePresentation& P, const Beltrami& phi) {
  auto defect = integrability_defect(P, phi);
  if (!defect.is_zero())
    throw NotIntegrable("dbar phi - 1/2 [phi, phi] = " + defect.str(P.names()) + " != 0");
}

/// Structure equations in the deformed coframe. The derived presentation is
/// validated on construction, so d^2 = 0 and the missing (0,2)-parts are
/// checked rather than assumed.
inline DeformedPresentation deform_structure(const LiePresentation& P, const Beltrami& phi) {
  if (phi.n() != P.n()) throw PresentationMismatch("Beltrami differential and presentation differ in n");
  require_integrable(P, phi);
  require_small(phi);
  const int n = P.n();
  Matrix plus = slot_one_plus_phi(phi);
  Matrix ninv = inverse(deformed_frame_matrix(phi));
  Matrix to_new = ninv.transpose();
  std::vector<Form> d_new;
  for (int k = 1; k <= n; ++k) {
    Form tk = simul_contract(plus, Form::tau(n, k));
    d_new.push_back(simul_contract(to_new, P.d(tk)));
  }
  std::string note = "deformed by phi = " + phi.as_vector_form().str(P.names());
  LiePresentation derived(P.names(), d_new, P.name() + "_t", note);
  return {P, phi, std::move(derived)};
}

inline std::size_t deformed_hodge(const LiePresentation& P, const Beltrami& phi, Theory t, int p, int q) {
  return CohomologyEngine(deform_structure(P, phi).derived).dimension(t, p, q);
}

/// ([del, i_phi] + dbar)((1 - phibar phi) -| sigma); zero exactly when the
/// extension of sigma is dbar_t-closed.
inline Form obstruction(const LiePresentation& P, const Beltrami& phi, const Form& sigma) {
  P.check(sigma);
  require_small(phi);
  Form s = simul_contract(slot_one_minus_phibar_phi(phi), sigma);
  return P.del(contract(phi, s)) - contract(phi, P.del(s)) + P.delbar(s);
}

/// dbar_t of the extension of sigma, computed in the deformed presentation and
/// returned as coefficients over the deformed coframe.
inline Form delbar_t_of_extension(const DeformedPresentation& D, const Form& sigma) {
  Form ext = extension_map(D.phi, sigma).base;
  return D.derived.delbar(to_deformed_frame(D.phi, ext));
}

/// Compares the two characterisations of dbar_t-closedness of the extension.
inline bool obstruction_equivalence_check(const LiePresentation& P, const Beltrami& phi, const Form& sigma) {
  auto D = deform_structure(P, phi);
  return obstruction(P, phi, sigma).is_zero() == delbar_t_of_extension(D, sigma).is_zero();
}

}  // namespace nilhodge
