#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>

#include "nilhodge/complex.hpp"
#include "nilhodge/errors.hpp"
#include "nilhodge/matrix.hpp"

namespace nilhodge {

enum class Laplacian { dolbeault, bott_chern };

/// Name of the fixed metric, quoted in every report that depends on it.
inline constexpr const char* kMetricNote = "coframe-orthonormal Hermitian metric (tau^k, conj tau^k orthonormal)";

/// Adjoints, Laplacians and Green operators for the coframe-orthonormal
/// metric, in which adjoints are conjugate transposes.
class HarmonicContext {
public:
  explicit HarmonicContext(std::shared_ptr<DoubleComplex> cx) : cx_(std::move(cx)) {}
  explicit HarmonicContext(LiePresentation P) : cx_(std::make_shared<DoubleComplex>(std::move(P))) {}

  const DoubleComplex& complex() const { return *cx_; }
  std::shared_ptr<DoubleComplex> complex_ptr() const { return cx_; }
  int n() const { return cx_->n(); }

  /// Adjoint of op : A^{p,q} -> target, mapping target back to A^{p,q}.
  Matrix adjoint(Op op, int p, int q) const { return cx_->matrix(op, p, q).adjoint(); }

  Matrix laplacian(Laplacian kind, int p, int q) const {
    const auto& D = *cx_;
    if (kind == Laplacian::dolbeault) {
      const Matrix& a = D.delbar(p, q);
      const Matrix& b = D.delbar(p, q - 1);
      return a.adjoint() * a + b * b.adjoint();
    }
    const Matrix& dd_in = D.ddbar(p - 1, q - 1);
    const Matrix& dd_out = D.ddbar(p, q);
    const Matrix& db = D.delbar(p, q);
    const Matrix& dl = D.del(p, q);
    const Matrix& dl_up = D.del(p - 1, q + 1);
    const Matrix& db_up = D.delbar(p + 1, q - 1);
    Matrix box = dd_in * dd_in.adjoint();
    box += dd_out.adjoint() * dd_out;
    box += db.adjoint() * (dl_up * (dl_up.adjoint() * db));
    box += dl.adjoint() * (db_up * (db_up.adjoint() * dl));
    box += db.adjoint() * db;
    box += dl.adjoint() * dl;
    return box;
  }

  struct Green {
    Matrix G;  ///< pinv of the Laplacian
    Matrix H;  ///< orthogonal projector onto its kernel
  };

  const Green& green(Laplacian kind, int p, int q) const {
    auto key = std::tuple{kind, p, q};
    {
      std::lock_guard lock(mu_);
      auto it = green_.find(key);
      if (it != green_.end()) return it->second;
    }
    Matrix box = laplacian(kind, p, q);
    Green g;
    g.G = pinv(box);
    g.H = Matrix::identity(box.rows()) - box * g.G;
    std::lock_guard lock(mu_);
    return green_.emplace(key, std::move(g)).first->second;
  }

  /// Applies a matrix from A^{p,q} to A^{tp,tq} on forms.
  Form apply(const Matrix& m, int p, int q, int tp, int tq, const Form& f) const {
    const auto& src = cx_->basis(p, q);
    const auto& dst = cx_->basis(tp, tq);
    return dst.form(m * src.coords(f));
  }

  Form harmonic_part(Laplacian kind, int p, int q, const Form& f) const {
    return apply(green(kind, p, q).H, p, q, p, q, f);
  }

  /// dbar* G_dbar y for y in A^{p,q+1}: the minimum-norm solution of
  /// dbar x = y whenever y is dbar-exact.
  Form delbar_star_green(int p, int q, const Form& y) const {
    Vector gy = green(Laplacian::dolbeault, p, q + 1).G * cx_->basis(p, q + 1).coords(y);
    return cx_->basis(p, q).form(cx_->delbar(p, q).adjoint() * gy);
  }

  /// (del dbar)* G_BC y for y in A^{p+1,q+1}: the minimum-norm solution of
  /// del dbar x = y whenever one exists.
  Form ddbar_star_green(int p, int q, const Form& y) const {
    Vector gy = green(Laplacian::bott_chern, p + 1, q + 1).G * cx_->basis(p + 1, q + 1).coords(y);
    return cx_->basis(p, q).form(cx_->ddbar(p, q).adjoint() * gy);
  }

  /// d-closed representative gamma = H sigma + dbar beta of the Dolbeault
  /// class of sigma in A^{p,q}, with beta = -(del dbar)* G_BC del H sigma.
  Form canonical_rep(const Form& sigma, int p, int q) const {
    const auto& P = cx_->presentation();
    P.check(sigma);
    if (!sigma.is_zero() && sigma.bidegree() != std::pair{p, q})
      throw DegreeMismatch("form is not of bidegree (" + std::to_string(p) + "," + std::to_string(q) + ")");
    if (!P.delbar(sigma).is_zero()) throw NotCocycle("form is not dbar-closed: " + P.delbar(sigma).str(P.names()));
    Form harm = harmonic_part(Laplacian::dolbeault, p, q, sigma);
    Form obstruction = P.del(harm);
    if (obstruction.is_zero()) return harm;
    Form beta = -ddbar_star_green(p, q - 1, obstruction);
    Form gamma = harm + P.delbar(beta);
    if (!P.d(gamma).is_zero())
      throw NotSolvable("del dbar beta = -del sigma has no solution; del of the harmonic part is " +
                        obstruction.str(P.names()));
    return gamma;
  }

private:
  std::shared_ptr<DoubleComplex> cx_;
  mutable std::mutex mu_;
  mutable std::map<std::tuple<Laplacian, int, int>, Green> green_;
};

}  // namespace nilhodge
