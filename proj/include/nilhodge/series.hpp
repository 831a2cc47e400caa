#pragma once

#include <bit>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilhodge/beltrami.hpp"
#include "nilhodge/cohomology.hpp"
#include "nilhodge/errors.hpp"
#include "nilhodge/harmonic.hpp"

namespace nilhodge {

/// Exponent vector over the parameter slots of a series.
using MultiIndex = std::vector<int>;

inline int total_degree(const MultiIndex& I) { return std::accumulate(I.begin(), I.end(), 0); }

/// All exponent vectors of m slots with total degree k, in lexicographically
/// decreasing order (t1^k first).
inline std::vector<MultiIndex> multi_indices(int m, int k) {
  std::vector<MultiIndex> out;
  MultiIndex cur(static_cast<std::size_t>(m), 0);
  std::function<void(int, int)> rec = [&](int slot, int left) {
    if (slot == m - 1) {
      cur[static_cast<std::size_t>(slot)] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[static_cast<std::size_t>(slot)] = e;
      rec(slot + 1, left - e);
    }
  };
  if (m == 0) {
    if (k == 0) out.emplace_back();
    return out;
  }
  rec(0, k);
  return out;
}

/// Pairs (J, L) with J + L = I, J != 0 and L != 0 unless allowed.
inline std::vector<std::pair<MultiIndex, MultiIndex>> splittings(const MultiIndex& I, bool allow_zero_left,
                                                                  bool allow_zero_right) {
  std::vector<std::pair<MultiIndex, MultiIndex>> out;
  int k = total_degree(I);
  for (int a = 0; a <= k; ++a)
    for (const auto& J : multi_indices(static_cast<int>(I.size()), a)) {
      bool fits = true;
      for (std::size_t s = 0; s < I.size(); ++s) fits = fits && J[s] <= I[s];
      if (!fits) continue;
      if (a == 0 && !allow_zero_left) continue;
      if (a == k && !allow_zero_right) continue;
      MultiIndex L(I.size());
      for (std::size_t s = 0; s < I.size(); ++s) L[s] = I[s] - J[s];
      out.emplace_back(J, std::move(L));
    }
  return out;
}

inline std::string monomial_name(const MultiIndex& I, const std::vector<std::string>& params) {
  std::string s;
  for (std::size_t k = 0; k < I.size(); ++k) {
    if (I[k] == 0) continue;
    if (!s.empty()) s += '*';
    s += params[k];
    if (I[k] > 1) s += "^" + std::to_string(I[k]);
  }
  return s.empty() ? "1" : s;
}

/// Truncated power series sum_I c_I t^I. Parameter slots may include
/// conjugate parameters (named "~t1", ...); all exponents have total degree
/// at most the truncation order. Zero coefficients are not stored.
template <class T>
class Series {
public:
  Series() = default;
  Series(std::vector<std::string> params, int order) : params_(std::move(params)), order_(order) {}

  const std::vector<std::string>& params() const { return params_; }
  int order() const { return order_; }
  int slots() const { return static_cast<int>(params_.size()); }
  const std::map<MultiIndex, T>& terms() const { return terms_; }

  std::optional<T> get(const MultiIndex& I) const {
    auto it = terms_.find(I);
    if (it == terms_.end()) return std::nullopt;
    return it->second;
  }
  T at_or(const MultiIndex& I, const T& zero) const {
    auto it = terms_.find(I);
    return it == terms_.end() ? zero : it->second;
  }

  void set(const MultiIndex& I, T value) {
    if (total_degree(I) > order_) return;
    if (value.is_zero()) {
      terms_.erase(I);
      return;
    }
    terms_.insert_or_assign(I, std::move(value));
  }

  /// Terms of total degree k.
  std::vector<std::pair<MultiIndex, T>> degree(int k) const {
    std::vector<std::pair<MultiIndex, T>> out;
    for (const auto& [I, c] : terms_)
      if (total_degree(I) == k) out.emplace_back(I, c);
    return out;
  }

  bool is_zero() const { return terms_.empty(); }

private:
  std::vector<std::string> params_;
  int order_ = 0;
  std::map<MultiIndex, T> terms_;
};

using FormSeries = Series<Form>;
using BeltramiSeries = Series<Beltrami>;

/// A linear family sum_k t_k phi_k as a series of order `order`.
inline BeltramiSeries linear_family(const std::vector<std::string>& params, const std::vector<Beltrami>& directions,
                                    int order) {
  BeltramiSeries s(params, order);
  for (std::size_t k = 0; k < directions.size(); ++k) {
    MultiIndex I(params.size(), 0);
    I[k] = 1;
    s.set(I, directions[k]);
  }
  return s;
}

// Vector-valued forms of type (0,s) in coordinates.

/// Basis of Lambda^{0,s} (x) g^{1,0}: for each (0,s)-monomial J in bidegree
/// order, the vectors theta_1..theta_n.
class VectorFormBasis {
public:
  VectorFormBasis(int n, int s) : n_(n), forms_(n, 0, s) {}

  std::size_t size() const { return forms_.size() * static_cast<std::size_t>(n_); }

  Vector coords(const VectorValuedForm& v) const {
    Vector out(size());
    for (int i = 1; i <= n_; ++i)
      for (const auto& [m, c] : v[i].terms()) {
        auto k = forms_.index(m);
        if (k) out[*k * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i - 1)] = c;
      }
    return out;
  }

  VectorValuedForm form(const Vector& x) const {
    VectorValuedForm v(n_);
    for (std::size_t k = 0; k < x.size(); ++k)
      v[static_cast<int>(k % static_cast<std::size_t>(n_)) + 1].add(forms_[k / static_cast<std::size_t>(n_)], x[k]);
    return v;
  }

  VectorValuedForm element(std::size_t k) const {
    Vector x(size());
    x[k] = 1;
    return form(x);
  }

private:
  int n_;
  BidegreeBasis forms_;
};

/// dbar : Lambda^{0,s} (x) g^{1,0} -> Lambda^{0,s+1} (x) g^{1,0} and the
/// associated Laplacian and Green operator, with coframe-orthonormal metric.
class VectorFormComplex {
public:
  explicit VectorFormComplex(const LiePresentation& P) : P_(P) {}

  const VectorFormBasis& basis(int s) const {
    auto it = bases_.find(s);
    if (it == bases_.end()) it = bases_.emplace(s, VectorFormBasis(P_.n(), s)).first;
    return it->second;
  }

  /// Columns are images of basis elements; empty for s out of range.
  const Matrix& delbar(int s) const {
    auto it = dbar_.find(s);
    if (it != dbar_.end()) return it->second;
    Matrix m;
    if (s < 0 || s > P_.n()) {
      std::size_t src = (s < 0 || s > P_.n()) ? 0 : basis(s).size();
      std::size_t dst = (s + 1 < 0 || s + 1 > P_.n()) ? 0 : basis(s + 1).size();
      m = Matrix(dst, src);
    } else {
      const auto& src = basis(s);
      std::size_t dst = s + 1 > P_.n() ? 0 : basis(s + 1).size();
      m = Matrix(dst, src.size());
      if (dst > 0)
        for (std::size_t c = 0; c < src.size(); ++c) {
          Vector col = basis(s + 1).coords(nilhodge::delbar(P_, src.element(c)));
          for (std::size_t r = 0; r < dst; ++r) m(r, c) = col[r];
        }
    }
    return dbar_.emplace(s, std::move(m)).first->second;
  }

  struct Green {
    Matrix G;
    Matrix H;
  };

  const Green& green(int s) const {
    auto it = green_.find(s);
    if (it != green_.end()) return it->second;
    const Matrix& a = delbar(s);
    const Matrix& b = delbar(s - 1);
    Matrix box = a.adjoint() * a + b * b.adjoint();
    Green g;
    g.G = pinv(box);
    g.H = Matrix::identity(box.rows()) - box * g.G;
    return green_.emplace(s, std::move(g)).first->second;
  }

  /// Harmonic (0,1)-forms with values in g^{1,0}: kernel of dbar and dbar*.
  std::vector<Beltrami> harmonic_beltrami_basis() const {
    Matrix system = Matrix::vstack(delbar(1), delbar(0).adjoint());
    std::vector<Beltrami> out;
    for (const auto& v : kernel_basis(system)) out.push_back(Beltrami::from_vector_form(basis(1).form(v)));
    return out;
  }

  /// dbar* G y for y of type (0,s+1).
  VectorValuedForm delbar_star_green(int s, const VectorValuedForm& y) const {
    Vector gy = green(s + 1).G * basis(s + 1).coords(y);
    return basis(s).form(delbar(s).adjoint() * gy);
  }

  VectorValuedForm harmonic_part(int s, const VectorValuedForm& y) const {
    return basis(s).form(green(s).H * basis(s).coords(y));
  }

private:
  const LiePresentation& P_;
  mutable std::map<int, VectorFormBasis> bases_;
  mutable std::map<int, Matrix> dbar_;
  mutable std::map<int, Green> green_;
};

struct KuranishiResult {
  BeltramiSeries phi;
  /// Harmonic part of sum_{J+L=I} [phi_J, phi_L] per multi-index.
  std::map<MultiIndex, VectorValuedForm> obstruction;
  /// dbar phi_I - 1/2 sum [phi_J, phi_L] + 1/2 obstruction_I; zero when the
  /// recursion is consistent.
  std::map<MultiIndex, VectorValuedForm> defect;
  std::vector<Beltrami> basis;
  std::string note;

  bool obstruction_free() const {
    for (const auto& [I, v] : obstruction)
      if (!v.is_zero()) return false;
    return true;
  }
  bool consistent() const {
    for (const auto& [I, v] : defect)
      if (!v.is_zero()) return false;
    return true;
  }
};

/// Kuranishi recursion phi_I = 1/2 dbar* G sum_{J+L=I} [phi_J, phi_L] with
/// phi_1 = sum t_nu eta_nu. Without an explicit basis, eta_nu is the kernel
/// basis of the harmonic (0,1)-forms with values in g^{1,0}.
inline KuranishiResult kuranishi_series(const LiePresentation& P, int order,
                                        std::optional<std::vector<Beltrami>> directions = std::nullopt) {
  if (order < 1) throw std::invalid_argument("order must be at least 1");
  VectorFormComplex V(P);
  KuranishiResult r;
  r.basis = directions ? *directions : V.harmonic_beltrami_basis();
  std::vector<std::string> params;
  for (std::size_t k = 0; k < r.basis.size(); ++k) params.push_back("t" + std::to_string(k + 1));
  r.phi = linear_family(params, r.basis, order);
  if (r.basis.empty()) {
    r.note = "rigid: no harmonic (0,1)-forms with values in g^{1,0}";
    return r;
  }
  const int m = static_cast<int>(r.basis.size());
  const int n = P.n();
  Beltrami zero(n);
  auto bracket_sum = [&](const MultiIndex& I) {
    VectorValuedForm acc(n);
    for (const auto& [J, L] : splittings(I, false, false)) {
      auto a = r.phi.get(J);
      auto b = r.phi.get(L);
      if (a && b) acc += schouten_bracket(P, *a, *b);
    }
    return acc;
  };
  for (const auto& I : multi_indices(m, 1)) {
    VectorValuedForm d = nilhodge::delbar(P, r.phi.at_or(I, zero).as_vector_form());
    if (!d.is_zero()) r.defect[I] = d;
  }
  for (int k = 2; k <= order; ++k) {
    for (const auto& I : multi_indices(m, k)) {
      VectorValuedForm b = bracket_sum(I);
      if (b.is_zero()) continue;
      VectorValuedForm h = V.harmonic_part(2, b);
      if (!h.is_zero()) r.obstruction[I] = h;
      VectorValuedForm phi_I = V.delbar_star_green(1, b) * Scalar(Rational(1, 2));
      r.phi.set(I, Beltrami::from_vector_form(phi_I));
      VectorValuedForm d = nilhodge::delbar(P, phi_I) - b * Scalar(Rational(1, 2)) + h * Scalar(Rational(1, 2));
      if (!d.is_zero()) r.defect[I] = d;
    }
  }
  return r;
}

// Extension of Dolbeault classes along a family.

enum class ExtendMode { pq, p0, zero_q, vanishing };

inline std::string to_string(ExtendMode m) {
  switch (m) {
    case ExtendMode::pq: return "pq";
    case ExtendMode::p0: return "p0";
    case ExtendMode::zero_q: return "0q";
    case ExtendMode::vanishing: return "vanishing";
  }
  return "?";
}

inline ExtendMode extend_mode_from_string(const std::string& s) {
  if (s == "pq") return ExtendMode::pq;
  if (s == "p0") return ExtendMode::p0;
  if (s == "0q") return ExtendMode::zero_q;
  if (s == "vanishing") return ExtendMode::vanishing;
  throw std::invalid_argument("unknown extension mode '" + s + "'");
}

struct ExtensionResult {
  ExtendMode mode;
  /// Which hypotheses were checked and used.
  std::string route;
  FormSeries sigma;
  /// Per multi-index defects of the system solved in this mode.
  std::map<MultiIndex, Form> residual;
  /// Hypotheses that failed but were waived; empty when all were verified.
  std::vector<std::string> waived;

  bool residual_free() const {
    for (const auto& [I, f] : residual)
      if (!f.is_zero()) return false;
    return true;
  }
};

namespace detail {

/// sum_{J+L=I, J!=0} phi_J -| sigma_L.
inline Form contracted_history(int n, const BeltramiSeries& phi, const FormSeries& sigma, const MultiIndex& I) {
  Form acc(n);
  for (const auto& [J, L] : splittings(I, false, true)) {
    auto a = phi.get(J);
    auto b = sigma.get(L);
    if (a && b) acc += contract(*a, *b);
  }
  return acc;
}

/// Multiplies series of forms, truncating at the common order.
inline FormSeries wedge(const FormSeries& a, const FormSeries& b) {
  FormSeries out(a.params(), std::min(a.order(), b.order()));
  std::map<MultiIndex, Form> acc;
  for (const auto& [I, f] : a.terms())
    for (const auto& [J, g] : b.terms()) {
      MultiIndex K(I.size());
      for (std::size_t s = 0; s < I.size(); ++s) K[s] = I[s] + J[s];
      if (total_degree(K) > out.order()) continue;
      Form w = nilhodge::wedge(f, g);
      auto it = acc.find(K);
      if (it == acc.end())
        acc.emplace(K, std::move(w));
      else
        it->second += w;
    }
  for (auto& [K, f] : acc) out.set(K, std::move(f));
  return out;
}

/// Replaces each slot a of sigma by sum_I t^I (M_I column a), as a series.
inline FormSeries simul_contract(const Series<Matrix>& M, const Form& sigma) {
  int n = sigma.n();
  std::vector<FormSeries> images;
  for (int a = 0; a < 2 * n; ++a) {
    FormSeries img(M.params(), M.order());
    for (const auto& [I, m] : M.terms()) {
      Form f(n);
      for (int b = 0; b < 2 * n; ++b) f.add(Mask{1} << b, m(static_cast<std::size_t>(b), static_cast<std::size_t>(a)));
      img.set(I, std::move(f));
    }
    images.push_back(std::move(img));
  }
  FormSeries out(M.params(), M.order());
  std::map<MultiIndex, Form> acc;
  MultiIndex origin(M.params().size(), 0);
  for (const auto& [mask, c] : sigma.terms()) {
    FormSeries prod(M.params(), M.order());
    prod.set(origin, Form::constant(n, c));
    for (Mask rest = mask; rest && !prod.is_zero(); rest &= rest - 1)
      prod = wedge(prod, images[static_cast<std::size_t>(std::countr_zero(rest))]);
    for (const auto& [I, f] : prod.terms()) {
      auto it = acc.find(I);
      if (it == acc.end())
        acc.emplace(I, f);
      else
        it->second += f;
    }
  }
  for (auto& [I, f] : acc) out.set(I, std::move(f));
  return out;
}

template <class F>
inline FormSeries map_series(const FormSeries& s, F f) {
  FormSeries out(s.params(), s.order());
  for (const auto& [I, g] : s.terms()) out.set(I, f(g));
  return out;
}

}  // namespace detail

/// Power-series extension of the class of sigma0 in A^{p,q} along phi_series,
/// solving order by order with the Green-operator formulas of the chosen mode.
/// Hypotheses of the mode are verified first; with waive_hypotheses a failing
/// hypothesis is recorded instead of thrown and the residual report decides.
inline ExtensionResult extend_series(const LiePresentation& P, const BeltramiSeries& phi, const Form& sigma0, int p,
                                     int q, ExtendMode mode, int order, bool waive_hypotheses = false) {
  P.check(sigma0);
  if (!sigma0.is_zero() && sigma0.bidegree() != std::pair{p, q})
    throw DegreeMismatch("sigma0 is not of bidegree (" + std::to_string(p) + "," + std::to_string(q) + ")");
  if (!P.delbar(sigma0).is_zero()) throw NotCocycle("sigma0 is not dbar-closed");
  auto cx = std::make_shared<DoubleComplex>(P);
  CohomologyEngine E(cx);
  HarmonicContext H(cx);
  const int n = P.n();
  const int m = static_cast<int>(phi.params().size());
  ExtensionResult r{mode, "", FormSeries(phi.params(), order), {}, {}};
  auto require = [&](bool ok, const std::string& what) {
    if (ok) return;
    if (!waive_hypotheses) throw HypothesisFailed(what + " does not hold");
    r.waived.push_back(what);
  };
  MultiIndex origin(static_cast<std::size_t>(m), 0);
  auto bq = [](int a, int b) { return "^{" + std::to_string(a) + "," + std::to_string(b) + "}"; };

  switch (mode) {
    case ExtendMode::pq: {
      require(E.cond_B(p + 1, q), "B" + bq(p + 1, q));
      require(E.cond_S(p, q + 1), "S" + bq(p, q + 1));
      r.route = "B" + bq(p + 1, q) + " and S" + bq(p, q + 1);
      r.sigma.set(origin, H.canonical_rep(sigma0, p, q));
      for (int k = 1; k <= order; ++k)
        for (const auto& I : multi_indices(m, k)) {
          Form y = P.del(detail::contracted_history(n, phi, r.sigma, I));
          Form x = -H.delbar_star_green(p, q, y);
          Form s = x;
          if (q >= 1) s += P.delbar(H.ddbar_star_green(p, q - 1, -P.del(x)));
          r.sigma.set(I, s);
          Form res = P.del(s) + (P.delbar(s) + y);
          if (!res.is_zero()) r.residual[I] = res;
        }
      break;
    }
    case ExtendMode::p0: {
      if (q != 0) throw DegreeMismatch("p0 mode needs q = 0");
      require(E.cond_S(p + 1, 0), "S" + bq(p + 1, 0));
      if (E.cond_S(p, 1)) {
        r.route = "S" + bq(p + 1, 0) + " and S" + bq(p, 1);
      } else if (p == 1 && E.cond_calS(1, 1)) {
        r.route = "S^{2,0} and calS^{1,1}";
      } else {
        r.route = "S" + bq(p + 1, 0) + " and S" + bq(p, 1);
        require(false, "S" + bq(p, 1) + (p == 1 ? " (and calS^{1,1})" : ""));
      }
      if (!P.del(sigma0).is_zero()) throw NotSolvable("sigma0 is not d-closed");
      r.sigma.set(origin, sigma0);
      for (int k = 1; k <= order; ++k)
        for (const auto& I : multi_indices(m, k)) {
          Form y = P.del(detail::contracted_history(n, phi, r.sigma, I));
          Form s = -H.delbar_star_green(p, 0, y);
          r.sigma.set(I, s);
          Form res = P.del(s) + (P.delbar(s) + y);
          if (!res.is_zero()) r.residual[I] = res;
        }
      break;
    }
    case ExtendMode::zero_q: {
      if (p != 0) throw DegreeMismatch("0q mode needs p = 0");
      require(E.cond_calB(1, q), "calB" + bq(1, q));
      r.route = "calB" + bq(1, q);
      Form s0 = H.canonical_rep(sigma0, 0, q);
      // Parameters t_1..t_m followed by their conjugates.
      std::vector<std::string> params = phi.params();
      for (const auto& t : phi.params()) params.push_back("~" + t);
      const std::size_t slots = params.size();
      Matrix zero2n(2 * static_cast<std::size_t>(n), 2 * static_cast<std::size_t>(n));
      auto widen = [&](const MultiIndex& I, bool conj) {
        MultiIndex K(slots, 0);
        for (std::size_t s = 0; s < I.size(); ++s) K[conj ? I.size() + s : s] = I[s];
        return K;
      };
      // A = conj(phi) phi on (0,1)-slots as a series in (t, ~t).
      Series<Matrix> A(params, order);
      std::map<MultiIndex, Matrix> acc;
      for (const auto& [J, a] : phi.terms())
        for (const auto& [L, b] : phi.terms()) {
          MultiIndex K = widen(J, true);
          MultiIndex KL = widen(L, false);
          for (std::size_t s = 0; s < slots; ++s) K[s] += KL[s];
          if (total_degree(K) > order) continue;
          Matrix grid = a.grid().conj() * b.grid();
          auto it = acc.find(K);
          if (it == acc.end())
            acc.emplace(K, grid);
          else
            it->second += grid;
        }
      auto slot_extend = [&](const Matrix& g) {
        Matrix s(2 * static_cast<std::size_t>(n), 2 * static_cast<std::size_t>(n));
        for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j)
          for (std::size_t l = 0; l < static_cast<std::size_t>(n); ++l) s(n + l, n + j) = g(j, l);
        return s;
      };
      for (auto& [K, g] : acc)
        if (!g.is_zero()) A.set(K, slot_extend(g));
      // (1 - A)^{-1} = sum_k A^k and (1 - A), both as slot-operator series.
      MultiIndex zero_slots(slots, 0);
      Series<Matrix> inv(params, order), one_minus(params, order);
      inv.set(zero_slots, Matrix::identity(2 * static_cast<std::size_t>(n)));
      one_minus.set(zero_slots, Matrix::identity(2 * static_cast<std::size_t>(n)));
      for (const auto& [K, a] : A.terms()) one_minus.set(K, -a);
      Series<Matrix> power = inv;
      for (int k = 1; k <= order; ++k) {
        Series<Matrix> next(params, order);
        std::map<MultiIndex, Matrix> sum;
        for (const auto& [I, x] : power.terms())
          for (const auto& [J, a] : A.terms()) {
            MultiIndex K(slots);
            for (std::size_t s = 0; s < slots; ++s) K[s] = I[s] + J[s];
            if (total_degree(K) > order) continue;
            Matrix prod = a * x;
            auto it = sum.find(K);
            if (it == sum.end())
              sum.emplace(K, prod);
            else
              it->second += prod;
          }
        for (auto& [K, x] : sum) next.set(K, x);
        for (const auto& [K, x] : next.terms()) inv.set(K, inv.at_or(K, zero2n) + x);
        power = next;
      }
      r.sigma = detail::simul_contract(inv, s0);
      // Residual: ([del, i_phi] + dbar)((1 - A) -| sigma_t) as a series.
      FormSeries back(params, order);
      std::map<MultiIndex, Form> total;
      for (const auto& [I, f] : r.sigma.terms()) {
        FormSeries part = detail::simul_contract(one_minus, f);
        for (const auto& [J, g] : part.terms()) {
          MultiIndex K(slots);
          for (std::size_t s = 0; s < slots; ++s) K[s] = I[s] + J[s];
          if (total_degree(K) > order) continue;
          auto it = total.find(K);
          if (it == total.end())
            total.emplace(K, g);
          else
            it->second += g;
        }
      }
      for (auto& [K, f] : total) back.set(K, f);
      for (int k = 0; k <= order; ++k)
        for (const auto& K : multi_indices(static_cast<int>(slots), k)) {
          Form res(n);
          auto b = back.get(K);
          if (b) res += P.delbar(*b);
          for (const auto& [J, L] : splittings(K, false, true)) {
            bool holo = true;
            for (std::size_t s = static_cast<std::size_t>(m); s < slots; ++s) holo = holo && J[s] == 0;
            if (!holo) continue;
            MultiIndex Jh(J.begin(), J.begin() + m);
            auto a = phi.get(Jh);
            auto c = back.get(L);
            if (a && c) res += P.del(contract(*a, *c)) - contract(*a, P.del(*c));
          }
          if (!res.is_zero()) r.residual[K] = res;
        }
      break;
    }
    case ExtendMode::vanishing: {
      bool vanishes = E.dimension(Theory::dolbeault, p, q + 1) == 0;
      require(vanishes, "h" + bq(p, q + 1) + " = 0");
      r.route = "h" + bq(p, q + 1) + " = 0";
      r.sigma.set(origin, sigma0);
      for (int k = 1; k <= order; ++k)
        for (const auto& I : multi_indices(m, k)) {
          Form tau(n);
          for (const auto& [J, L] : splittings(I, false, true)) {
            auto a = phi.get(J);
            auto b = r.sigma.get(L);
            if (a && b) tau += contract(*a, P.del(*b)) - P.del(contract(*a, *b));
          }
          Form s = H.delbar_star_green(p, q, tau);
          r.sigma.set(I, s);
          Form res = P.delbar(s) - tau;
          if (!res.is_zero()) r.residual[I] = res;
        }
      break;
    }
  }
  return r;
}

}  // namespace nilhodge
