#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilhodge/complex.hpp"
#include "nilhodge/errors.hpp"
#include "nilhodge/matrix.hpp"

namespace nilhodge {

enum class Theory { dolbeault, del, bott_chern, aeppli, de_rham };

inline std::string to_string(Theory t) {
  switch (t) {
    case Theory::dolbeault: return "dolbeault";
    case Theory::del: return "del";
    case Theory::bott_chern: return "bott_chern";
    case Theory::aeppli: return "aeppli";
    case Theory::de_rham: return "de_rham";
  }
  return "?";
}

inline Theory theory_from_string(const std::string& s) {
  if (s == "dolbeault" || s == "delbar") return Theory::dolbeault;
  if (s == "del") return Theory::del;
  if (s == "bott_chern" || s == "bc") return Theory::bott_chern;
  if (s == "aeppli" || s == "a") return Theory::aeppli;
  if (s == "de_rham" || s == "derham") return Theory::de_rham;
  throw std::invalid_argument("unknown cohomology theory '" + s + "'");
}

/// Dimension plus a basis of harmonic representatives (cocycles orthogonal
/// to the coboundaries in the coframe-orthonormal metric).
struct CohomologyGroup {
  std::size_t dim = 0;
  std::vector<Form> representatives;
};

/// Cocycles Z and coboundaries B of a bigraded theory at (p,q), both as
/// spanning columns in the coordinates of A^{p,q}.
struct CocycleData {
  Matrix cocycles;
  Matrix coboundaries;
};

struct InducedMapReport {
  Theory source, target;
  int p, q;
  std::size_t kernel_dim = 0;
  std::size_t cokernel_dim = 0;
  bool injective() const { return kernel_dim == 0; }
  bool surjective() const { return cokernel_dim == 0; }
  std::string id() const {
    return "iota^{" + std::to_string(p) + "," + std::to_string(q) + "}_{" + to_string(source) + "," +
           to_string(target) + "}";
  }
};

namespace detail {

inline Matrix empty_span(std::size_t dim) { return Matrix(dim, 0); }

inline Matrix span_of_image(const Matrix& op, std::size_t dim) {
  if (op.cols() == 0 || op.rows() == 0) return empty_span(dim);
  return op;
}

}  // namespace detail

/// Cohomology of the invariant double complex of one presentation.
class CohomologyEngine {
public:
  explicit CohomologyEngine(LiePresentation P) : cx_(std::make_shared<DoubleComplex>(std::move(P))) {}
  explicit CohomologyEngine(std::shared_ptr<DoubleComplex> cx) : cx_(std::move(cx)) {}

  const DoubleComplex& complex() const { return *cx_; }
  std::shared_ptr<DoubleComplex> complex_ptr() const { return cx_; }
  const LiePresentation& presentation() const { return cx_->presentation(); }
  int n() const { return cx_->n(); }

  bool in_range(int p, int q) const { return p >= 0 && q >= 0 && p <= n() && q <= n(); }

  std::size_t dimension(Theory t, int p, int q = 0) const {
    auto key = std::tuple{t, p, q};
    {
      std::lock_guard lock(mu_);
      auto it = dims_.find(key);
      if (it != dims_.end()) return it->second;
    }
    std::size_t h = compute_dimension(t, p, q);
    std::lock_guard lock(mu_);
    dims_.emplace(key, h);
    return h;
  }

  /// de Rham Betti number b_k of the complexified complex.
  std::size_t betti(int k) const { return dimension(Theory::de_rham, k, 0); }

  CohomologyGroup group(Theory t, int p, int q = 0) const {
    CohomologyGroup g;
    g.dim = dimension(t, p, q);
    if (t == Theory::de_rham) {
      if (p < 0 || p > 2 * n()) return g;
      auto basis = cx_->degree_basis(p);
      Matrix harm = Matrix::vstack(cx_->d_total(p), cx_->d_total(p - 1).adjoint());
      for (const auto& v : kernel_basis(harm)) {
        Form f(n());
        for (std::size_t k = 0; k < v.size(); ++k) f.add(basis[k], v[k]);
        g.representatives.push_back(std::move(f));
      }
      return g;
    }
    if (!in_range(p, q)) return g;
    const auto& basis = cx_->basis(p, q);
    for (const auto& v : kernel_basis(harmonic_system(t, p, q))) g.representatives.push_back(basis.form(v));
    return g;
  }

  /// Z and B for a bigraded theory.
  CocycleData cocycle_data(Theory t, int p, int q) const {
    std::size_t dim = cx_->dim(p, q);
    const auto& D = *cx_;
    switch (t) {
      case Theory::dolbeault:
        return {kernel_span(D.delbar(p, q)), detail::span_of_image(D.delbar(p, q - 1), dim)};
      case Theory::del:
        return {kernel_span(D.del(p, q)), detail::span_of_image(D.del(p - 1, q), dim)};
      case Theory::bott_chern:
        return {kernel_span(Matrix::vstack(D.del(p, q), D.delbar(p, q))),
                detail::span_of_image(D.ddbar(p - 1, q - 1), dim)};
      case Theory::aeppli:
        return {kernel_span(D.ddbar(p, q)),
                Matrix::hstack(detail::span_of_image(D.del(p - 1, q), dim),
                               detail::span_of_image(D.delbar(p, q - 1), dim))};
      case Theory::de_rham: break;
    }
    throw InvalidArrow("de Rham cohomology is not bigraded");
  }

  /// Map in the comparison diagram BC -> del, BC -> delbar, del -> A,
  /// delbar -> A, BC -> A.
  InducedMapReport induced_map(Theory source, Theory target, int p, int q) const {
    using T = Theory;
    bool valid = (source == T::bott_chern && (target == T::del || target == T::dolbeault || target == T::aeppli)) ||
                 ((source == T::del || source == T::dolbeault) && target == T::aeppli);
    if (!valid) throw InvalidArrow("no comparison map " + to_string(source) + " -> " + to_string(target));
    InducedMapReport r{source, target, p, q};
    if (!in_range(p, q)) return r;
    auto s = cocycle_data(source, p, q);
    auto t = cocycle_data(target, p, q);
    std::size_t b_src = span_dim(s.coboundaries);
    std::size_t b_tgt = span_dim(t.coboundaries);
    r.kernel_dim = intersection_dim(s.cocycles, t.coboundaries) - b_src;
    std::size_t image = sum_dim(s.cocycles, t.coboundaries) - b_tgt;
    r.cokernel_dim = dimension(target, p, q) - image;
    return r;
  }

  // Condition classes; out-of-range bidegrees are zero spaces, where each
  // condition holds.

  /// iota^{p,q}_{BC,del} injective.
  bool cond_B(int p, int q) const {
    return !in_range(p, q) || induced_map(Theory::bott_chern, Theory::del, p, q).injective();
  }
  /// iota^{p,q}_{delbar,A} injective.
  bool cond_S(int p, int q) const {
    return !in_range(p, q) || induced_map(Theory::dolbeault, Theory::aeppli, p, q).injective();
  }
  /// iota^{p-1,q}_{BC,delbar} surjective.
  bool cond_calB(int p, int q) const {
    return !in_range(p - 1, q) || induced_map(Theory::bott_chern, Theory::dolbeault, p - 1, q).surjective();
  }
  /// del(ker delbar on A^{p-1,q}) is contained in delbar(A^{p,q-1}).
  bool cond_calS(int p, int q) const {
    if (!in_range(p - 1, q) || !in_range(p, q)) return true;
    const auto& D = *cx_;
    Matrix closed = kernel_span(D.delbar(p - 1, q));
    if (closed.cols() == 0) return true;
    Matrix lhs = D.del(p - 1, q) * closed;
    return contained_in(lhs, detail::span_of_image(D.delbar(p, q - 1), cx_->dim(p, q)));
  }

  /// iota^{0,1}_{BC,delbar} surjective.
  bool sgg() const { return induced_map(Theory::bott_chern, Theory::dolbeault, 0, 1).surjective(); }

  /// Coefficient of the volume monomial in a ^ b.
  Scalar pairing(const Form& a, const Form& b) const {
    presentation().check(a);
    presentation().check(b);
    auto da = a.bidegree(), db = b.bidegree();
    if (!a.is_zero() && !b.is_zero()) {
      if (!da || !db || da->first + db->first != n() || da->second + db->second != n())
        throw DegreeMismatch("pairing needs pure forms of complementary bidegrees");
    }
    if (!presentation().del(presentation().delbar(a)).is_zero()) throw NotCocycle("first argument is not ddbar-closed");
    if (!presentation().d(b).is_zero()) throw NotCocycle("second argument is not d-closed");
    return wedge(a, b).coeff(low_bits(2 * n()));
  }

  /// Gram matrix of the pairing between harmonic bases of H_A^{n-p,n-q} and
  /// H_BC^{p,q}.
  Matrix pairing_matrix(int p, int q) const {
    auto a = group(Theory::aeppli, n() - p, n() - q).representatives;
    auto b = group(Theory::bott_chern, p, q).representatives;
    Matrix m(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = pairing(a[i], b[j]);
    return m;
  }

private:
  std::size_t compute_dimension(Theory t, int p, int q) const {
    if (t == Theory::de_rham) {
      if (p < 0 || p > 2 * n()) return 0;
      Matrix dk = cx_->d_total(p);
      return dk.cols() - rank(dk) - rank(cx_->d_total(p - 1));
    }
    if (!in_range(p, q)) return 0;
    const auto& D = *cx_;
    std::size_t dim = D.dim(p, q);
    switch (t) {
      case Theory::dolbeault: return dim - rank(D.delbar(p, q)) - rank(D.delbar(p, q - 1));
      case Theory::del: return dim - rank(D.del(p, q)) - rank(D.del(p - 1, q));
      case Theory::bott_chern:
        return dim - rank(Matrix::vstack(D.del(p, q), D.delbar(p, q))) - rank(D.ddbar(p - 1, q - 1));
      case Theory::aeppli: {
        auto cb = cocycle_data(Theory::aeppli, p, q).coboundaries;
        return dim - rank(D.ddbar(p, q)) - span_dim(cb);
      }
      case Theory::de_rham: break;
    }
    return 0;
  }

  /// Stacked operator whose kernel is the harmonic space of a theory.
  Matrix harmonic_system(Theory t, int p, int q) const {
    const auto& D = *cx_;
    switch (t) {
      case Theory::dolbeault: return Matrix::vstack(D.delbar(p, q), D.delbar(p, q - 1).adjoint());
      case Theory::del: return Matrix::vstack(D.del(p, q), D.del(p - 1, q).adjoint());
      case Theory::bott_chern:
        return Matrix::vstack(Matrix::vstack(D.del(p, q), D.delbar(p, q)), D.ddbar(p - 1, q - 1).adjoint());
      case Theory::aeppli:
        return Matrix::vstack(Matrix::vstack(D.ddbar(p, q), D.del(p - 1, q).adjoint()),
                              D.delbar(p, q - 1).adjoint());
      case Theory::de_rham: break;
    }
    throw InvalidArrow("de Rham cohomology is not bigraded");
  }

  std::shared_ptr<DoubleComplex> cx_;
  mutable std::mutex mu_;
  mutable std::map<std::tuple<Theory, int, int>, std::size_t> dims_;
};

}  // namespace nilhodge
