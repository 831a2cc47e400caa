#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nilhodge/errors.hpp"
#include "nilhodge/form.hpp"
#include "nilhodge/matrix.hpp"
#include "nilhodge/presentation.hpp"

namespace nilhodge {

/// sum_i beta^i (x) theta_i, where theta_1..theta_n is the (1,0)-frame dual
/// to tau^1..tau^n and each beta^i is a form.
class VectorValuedForm {
public:
  VectorValuedForm() = default;
  explicit VectorValuedForm(int n) : comps_(static_cast<std::size_t>(n), Form(n)) {}
  explicit VectorValuedForm(std::vector<Form> comps) : comps_(std::move(comps)) {}

  int n() const { return static_cast<int>(comps_.size()); }
  /// Component along theta_i, 1-based.
  const Form& operator[](int i) const { return comps_[static_cast<std::size_t>(i - 1)]; }
  Form& operator[](int i) { return comps_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<Form>& components() const { return comps_; }

  bool is_zero() const {
    for (const auto& f : comps_)
      if (!f.is_zero()) return false;
    return true;
  }

  VectorValuedForm& operator+=(const VectorValuedForm& o) {
    check_same(o);
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
    return *this;
  }
  VectorValuedForm& operator-=(const VectorValuedForm& o) {
    check_same(o);
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
    return *this;
  }
  VectorValuedForm& operator*=(const Scalar& s) {
    for (auto& f : comps_) f *= s;
    return *this;
  }
  friend VectorValuedForm operator+(VectorValuedForm a, const VectorValuedForm& b) { return a += b; }
  friend VectorValuedForm operator-(VectorValuedForm a, const VectorValuedForm& b) { return a -= b; }
  friend VectorValuedForm operator*(VectorValuedForm a, const Scalar& s) { return a *= s; }
  friend VectorValuedForm operator*(const Scalar& s, VectorValuedForm a) { return a *= s; }
  friend bool operator==(const VectorValuedForm& a, const VectorValuedForm& b) { return a.comps_ == b.comps_; }

  void check_same(const VectorValuedForm& o) const {
    if (o.n() != n()) throw PresentationMismatch("vector-valued forms over different coframes");
  }

  std::string str(const std::vector<std::string>& names = {}) const {
    std::string s;
    for (int i = 1; i <= n(); ++i) {
      if ((*this)[i].is_zero()) continue;
      if (!s.empty()) s += " + ";
      std::string v = names.empty() ? "t" + std::to_string(i) : names[static_cast<std::size_t>(i - 1)];
      s += "(" + (*this)[i].str(names) + ")(x)theta_" + v;
    }
    return s.empty() ? "0" : s;
  }

private:
  std::vector<Form> comps_;
};

/// phi = sum phi(i,j) conj(tau^j) (x) theta_i with i, j 0-based in the grid.
class Beltrami {
public:
  Beltrami() = default;
  explicit Beltrami(int n) : grid_(static_cast<std::size_t>(n), static_cast<std::size_t>(n)) {}
  explicit Beltrami(Matrix grid) : grid_(std::move(grid)) {
    if (grid_.rows() != grid_.cols()) throw DegreeMismatch("Beltrami grid must be square");
  }

  /// c * conj(tau^j) (x) theta_i, 1-based.
  static Beltrami elementary(int n, int i, int j, Scalar c = 1) {
    Beltrami b(n);
    b.grid_(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) = std::move(c);
    return b;
  }

  int n() const { return static_cast<int>(grid_.rows()); }
  const Matrix& grid() const { return grid_; }
  /// Coefficient of conj(tau^j) (x) theta_i, 1-based.
  const Scalar& at(int i, int j) const { return grid_(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)); }
  Scalar& at(int i, int j) { return grid_(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)); }
  bool is_zero() const { return grid_.is_zero(); }

  VectorValuedForm as_vector_form() const {
    int n = this->n();
    VectorValuedForm v(n);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (!at(i, j).is_zero()) v[i].add(Mask{1} << (n + j - 1), at(i, j));
    return v;
  }

  /// Recovers the grid from a vector-valued (0,1)-form.
  static Beltrami from_vector_form(const VectorValuedForm& v) {
    int n = v.n();
    Beltrami b(n);
    for (int i = 1; i <= n; ++i)
      for (const auto& [m, c] : v[i].terms()) {
        if (holo_part(n, m) != 0 || popcount(m) != 1) throw DegreeMismatch("not a vector-valued (0,1)-form");
        b.at(i, std::countr_zero(m) - n + 1) = c;
      }
    return b;
  }

  Beltrami& operator+=(const Beltrami& o) {
    grid_ += o.grid_;
    return *this;
  }
  Beltrami& operator-=(const Beltrami& o) {
    grid_ -= o.grid_;
    return *this;
  }
  Beltrami& operator*=(const Scalar& s) {
    grid_ *= s;
    return *this;
  }
  friend Beltrami operator+(Beltrami a, const Beltrami& b) { return a += b; }
  friend Beltrami operator-(Beltrami a, const Beltrami& b) { return a -= b; }
  friend Beltrami operator*(Beltrami a, const Scalar& s) { return a *= s; }
  friend Beltrami operator*(const Scalar& s, Beltrami a) { return a *= s; }
  friend bool operator==(const Beltrami& a, const Beltrami& b) { return a.grid_ == b.grid_; }

  std::string str(const std::vector<std::string>& names = {}) const { return as_vector_form().str(names); }

private:
  Matrix grid_;
};

/// i_v a = sum_i beta^i ^ (theta_i -| a).
inline Form contract(const VectorValuedForm& v, const Form& a) {
  if (v.n() != a.n()) throw PresentationMismatch("contraction across coframes of different size");
  Form out(a.n());
  for (int i = 1; i <= v.n(); ++i) {
    if (v[i].is_zero()) continue;
    Form inner = interior(i - 1, a);
    if (!inner.is_zero()) out += wedge(v[i], inner);
  }
  return out;
}

inline Form contract(const Beltrami& phi, const Form& a) { return contract(phi.as_vector_form(), a); }

/// i_{conj phi}: contraction with sum conj(phi(i,j)) tau^j (x) conj(theta_i).
inline Form contract_conj(const Beltrami& phi, const Form& a) {
  int n = phi.n();
  if (n != a.n()) throw PresentationMismatch("contraction across coframes of different size");
  Form out(n);
  for (int i = 1; i <= n; ++i) {
    Form inner = interior(n + i - 1, a);
    if (inner.is_zero()) continue;
    Form leg(n);
    for (int j = 1; j <= n; ++j)
      if (!phi.at(i, j).is_zero()) leg.add(Mask{1} << (j - 1), phi.at(i, j).conj());
    if (!leg.is_zero()) out += wedge(leg, inner);
  }
  return out;
}

/// e^{i_phi} a = sum_k i_phi^k a / k!, finite since i_phi lowers p.
inline Form exp_contract(const Beltrami& phi, const Form& a) {
  Form out = a;
  Form term = a;
  for (int k = 1; k <= a.n() && !term.is_zero(); ++k) {
    term = contract(phi, term) * Scalar(Rational(1, k));
    out += term;
  }
  return out;
}

inline Form exp_contract_conj(const Beltrami& phi, const Form& a) {
  Form out = a;
  Form term = a;
  for (int k = 1; k <= a.n() && !term.is_zero(); ++k) {
    term = contract_conj(phi, term) * Scalar(Rational(1, k));
    out += term;
  }
  return out;
}

/// Replaces every one-form slot e^a of every monomial by sum_b M(b,a) e^b;
/// M is a 2n x 2n grid over the slots.
inline Form simul_contract(const Matrix& m, const Form& a) {
  int n = a.n();
  if (m.rows() != static_cast<std::size_t>(2 * n) || m.cols() != m.rows())
    throw DegreeMismatch("slot operator must be 2n x 2n");
  std::vector<Form> images;
  for (int s = 0; s < 2 * n; ++s) {
    Form img(n);
    for (int b = 0; b < 2 * n; ++b) img.add(Mask{1} << b, m(static_cast<std::size_t>(b), static_cast<std::size_t>(s)));
    images.push_back(std::move(img));
  }
  return substitute_slots(a, images);
}

// Slot operators built from phi. Their columns are images of slots.

/// 1 + phi + conj(phi): tau^k -> tau^k + phi -| tau^k, conj likewise.
inline Matrix slot_one_plus_phi(const Beltrami& phi) {
  std::size_t n = static_cast<std::size_t>(phi.n());
  Matrix m = Matrix::identity(2 * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) {
      m(n + j, k) = phi.grid()(k, j);
      m(j, n + k) = phi.grid()(k, j).conj();
    }
  return m;
}

/// n x n product (conj(phi) phi)(j,l) = sum_k conj(phi(j,k)) phi(k,l), the
/// operator on (0,1)-slots conj(tau^j) -> sum_l (conj(phi) phi)(j,l) conj(tau^l).
inline Matrix phibar_phi(const Beltrami& phi) { return phi.grid().conj() * phi.grid(); }

/// 1 - conj(phi) phi: identity on tau-slots.
inline Matrix slot_one_minus_phibar_phi(const Beltrami& phi) {
  std::size_t n = static_cast<std::size_t>(phi.n());
  Matrix m = Matrix::identity(2 * n);
  Matrix pp = phibar_phi(phi);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < n; ++l) m(n + l, n + j) -= pp(j, l);
  return m;
}

inline Scalar smallness_det(const Beltrami& phi) {
  return determinant(Matrix::identity(static_cast<std::size_t>(phi.n())) - phibar_phi(phi));
}

inline void require_small(const Beltrami& phi) {
  if (smallness_det(phi).is_zero()) throw SingularFrame("det(1 - conj(phi) phi) = 0");
}

/// (1 - conj(phi) phi)^{-1}, extended by the identity on tau-slots.
inline Matrix slot_inverse_one_minus_phibar_phi(const Beltrami& phi) {
  require_small(phi);
  return inverse(slot_one_minus_phibar_phi(phi));
}

/// 1 - conj(phi) phi + conj(phi): conj(tau^j) additionally picks up
/// conj(phi) -| conj(tau^j) = sum_k conj(phi(j,k)) tau^k.
inline Matrix slot_one_minus_phibar_phi_plus_phibar(const Beltrami& phi) {
  std::size_t n = static_cast<std::size_t>(phi.n());
  Matrix m = slot_one_minus_phibar_phi(phi);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) m(k, n + j) = phi.grid()(j, k).conj();
  return m;
}

/// phi as a slot operator: tau^k -> phi -| tau^k, zero on conj(tau)-slots.
inline Matrix slot_phi(const Beltrami& phi) {
  std::size_t n = static_cast<std::size_t>(phi.n());
  Matrix m(2 * n, 2 * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) m(n + j, k) = phi.grid()(k, j);
  return m;
}

/// conj(phi) as a slot operator: conj(tau^j) -> sum_k conj(phi(j,k)) tau^k.
inline Matrix slot_phibar(const Beltrami& phi) {
  std::size_t n = static_cast<std::size_t>(phi.n());
  Matrix m(2 * n, 2 * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) m(k, n + j) = phi.grid()(j, k).conj();
  return m;
}

/// (1 - conj(phi) phi)^{-1} - (1 - conj(phi) phi)^{-1} conj(phi). A product AB
/// of slot operators applies A first, so its grid is M_B * M_A.
inline Matrix slot_inverse_factor(const Beltrami& phi) {
  Matrix inv = slot_inverse_one_minus_phibar_phi(phi);
  return inv - slot_phibar(phi) * inv;
}

// Brackets and differentials of vector-valued forms.

/// [theta_i, theta_k] as a vector-valued 0-form (values in the (1,0)-part),
/// 1-based.
inline std::vector<Scalar> holomorphic_bracket(const LiePresentation& P, int i, int k) {
  auto full = P.bracket(i - 1, k - 1);
  full.resize(static_cast<std::size_t>(P.n()));
  return full;
}

/// [b (x) theta_i, g (x) theta_k] for (0,s)-forms b, g:
/// b^g (x) [theta_i, theta_k] + b ^ (i_{theta_i} d g) (x) theta_k
///   + g ^ (i_{theta_k} d b) (x) theta_i.
inline VectorValuedForm bracket_term(const LiePresentation& P, const Form& b, int i, const Form& g, int k) {
  int n = P.n();
  VectorValuedForm out(n);
  Form bg = wedge(b, g);
  if (!bg.is_zero()) {
    auto br = holomorphic_bracket(P, i, k);
    for (int c = 1; c <= n; ++c)
      if (!br[static_cast<std::size_t>(c - 1)].is_zero()) out[c] += bg * br[static_cast<std::size_t>(c - 1)];
  }
  Form idg = interior(i - 1, P.d(g));
  if (!idg.is_zero()) out[k] += wedge(b, idg);
  Form idb = interior(k - 1, P.d(b));
  if (!idb.is_zero()) out[i] += wedge(g, idb);
  return out;
}

inline VectorValuedForm schouten_bracket(const LiePresentation& P, const VectorValuedForm& a,
                                         const VectorValuedForm& b) {
  if (a.n() != P.n() || b.n() != P.n()) throw PresentationMismatch("bracket across coframes of different size");
  VectorValuedForm out(P.n());
  for (int i = 1; i <= P.n(); ++i) {
    if (a[i].is_zero()) continue;
    for (int k = 1; k <= P.n(); ++k) {
      if (b[k].is_zero()) continue;
      out += bracket_term(P, a[i], i, b[k], k);
    }
  }
  return out;
}

inline VectorValuedForm schouten_bracket(const LiePresentation& P, const Beltrami& a, const Beltrami& b) {
  return schouten_bracket(P, a.as_vector_form(), b.as_vector_form());
}

/// dbar theta_i = sum_j conj(tau^j) (x) [conj(theta_j), theta_i]^{1,0}.
inline VectorValuedForm delbar_frame(const LiePresentation& P, int i) {
  int n = P.n();
  VectorValuedForm out(n);
  for (int j = 1; j <= n; ++j) {
    auto br = P.bracket(n + j - 1, i - 1);
    for (int c = 1; c <= n; ++c)
      if (!br[static_cast<std::size_t>(c - 1)].is_zero())
        out[c].add(Mask{1} << (n + j - 1), br[static_cast<std::size_t>(c - 1)]);
  }
  return out;
}

/// dbar(b (x) theta_i) = dbar b (x) theta_i + (-1)^{|b|} b ^ dbar theta_i.
inline VectorValuedForm delbar(const LiePresentation& P, const VectorValuedForm& v) {
  int n = P.n();
  if (v.n() != n) throw PresentationMismatch("vector-valued form over a different coframe");
  VectorValuedForm out(n);
  for (int i = 1; i <= n; ++i) {
    if (v[i].is_zero()) continue;
    out[i] += P.delbar(v[i]);
    VectorValuedForm frame = delbar_frame(P, i);
    for (int c = 1; c <= n; ++c) {
      if (frame[c].is_zero()) continue;
      for (const auto& [m, coef] : v[i].terms()) {
        Form piece = wedge(Form::monomial(n, m, coef), frame[c]);
        if (popcount(m) & 1) piece = -piece;
        out[c] += piece;
      }
    }
  }
  return out;
}

inline VectorValuedForm delbar_beltrami(const LiePresentation& P, const Beltrami& phi) {
  return delbar(P, phi.as_vector_form());
}

/// dbar phi - 1/2 [phi, phi]; zero iff phi is integrable.
inline VectorValuedForm integrability_defect(const LiePresentation& P, const Beltrami& phi) {
  return delbar_beltrami(P, phi) - schouten_bracket(P, phi, phi) * Scalar(Rational(1, 2));
}

inline bool is_integrable(const LiePresentation& P, const Beltrami& phi) {
  return integrability_defect(P, phi).is_zero();
}

/// L^{1,0}_phi a = -del(i_phi a) + i_phi(del a).
inline Form lie_derivative_10(const LiePresentation& P, const Beltrami& phi, const Form& a) {
  return contract(phi, P.del(a)) - P.del(contract(phi, a));
}

/// Image of a form under the extension map, kept in the base coframe.
struct ExtendedForm {
  Beltrami phi;
  Form base;
};

/// e^{i_phi|i_conj(phi)}: each tau-block through e^{i_phi}, each conj(tau)-block
/// through e^{i_conj(phi)}.
inline ExtendedForm extension_map(const Beltrami& phi, const Form& a) {
  require_small(phi);
  int n = a.n();
  Form out(n);
  for (const auto& [m, c] : a.terms()) {
    Form holo = exp_contract(phi, Form::monomial(n, holo_part(n, m)));
    Form anti = exp_contract_conj(phi, Form::monomial(n, make_mask(n, 0, anti_part(n, m))));
    out += wedge(holo, anti) * c;
  }
  return {phi, std::move(out)};
}

/// Coefficients of the deformed coframe tau^k(t) = tau^k + phi -| tau^k and
/// its conjugate, as rows of the 2n x 2n frame matrix [[1, phi], [conj phi, 1]].
inline Matrix deformed_frame_matrix(const Beltrami& phi) { return slot_one_plus_phi(phi).transpose(); }

/// Rewrites a base-coframe form in the deformed coframe: returns c such that
/// the form equals sum c_m tau(t)^m.
inline Form to_deformed_frame(const Beltrami& phi, const Form& base) {
  require_small(phi);
  Matrix ninv = inverse(deformed_frame_matrix(phi));
  // old slot e^a = sum_b ninv(a,b) f^b
  return simul_contract(ninv.transpose(), base);
}

inline Form from_deformed_frame(const Beltrami& phi, const Form& coeffs) {
  return simul_contract(slot_one_plus_phi(phi), coeffs);
}

/// e^{-i_phi|-i_conj(phi)}: writes the form in the deformed coframe and maps
/// each block of deformed slots back through e^{-i_phi} / e^{-i_conj(phi)}.
inline Form extension_inverse(const ExtendedForm& e) {
  const Beltrami& phi = e.phi;
  int n = phi.n();
  Beltrami minus = phi * Scalar(-1);
  Form coeffs = to_deformed_frame(phi, e.base);
  Matrix plus = slot_one_plus_phi(phi);
  Form out(n);
  for (const auto& [m, c] : coeffs.terms()) {
    Form holo = simul_contract(plus, Form::monomial(n, holo_part(n, m)));
    Form anti = simul_contract(plus, Form::monomial(n, make_mask(n, 0, anti_part(n, m))));
    out += wedge(exp_contract(minus, holo), exp_contract_conj(minus, anti)) * c;
  }
  return out;
}

}  // namespace nilhodge
