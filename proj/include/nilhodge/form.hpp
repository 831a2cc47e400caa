#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nilhodge/errors.hpp"
#include "nilhodge/scalar.hpp"

namespace nilhodge {

/// A monomial e^{a_1}^...^e^{a_k} with a_1 < ... < a_k, stored as a bit set
/// over 2n one-form slots: bits 0..n-1 are tau^1..tau^n, bits n..2n-1 are
/// conj(tau^1)..conj(tau^n). Ascending bit order is the canonical order, so
/// every monomial reads tau^I ^ conj(tau^J).
using Mask = std::uint32_t;

constexpr int kMaxDim = 16;

inline int popcount(Mask m) { return std::popcount(m); }

inline Mask low_bits(int k) { return k >= 32 ? ~Mask{0} : ((Mask{1} << k) - 1); }

inline Mask holo_part(int n, Mask m) { return m & low_bits(n); }
inline Mask anti_part(int n, Mask m) { return m >> n; }
inline Mask make_mask(int n, Mask holo, Mask anti) { return holo | (anti << n); }

inline std::pair<int, int> bidegree_of(int n, Mask m) {
  return {popcount(holo_part(n, m)), popcount(anti_part(n, m))};
}

/// Sign of e^A ^ e^B relative to the canonical monomial e^{A|B}; 0 when the
/// monomials share a slot.
inline int wedge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  int inversions = 0;
  for (Mask rest = b; rest; rest &= rest - 1) {
    int y = std::countr_zero(rest);
    inversions += popcount(a & ~low_bits(y + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

/// Mixed-degree invariant form: a sparse map monomial -> coefficient with no
/// zero entries stored.
class Form {
public:
  Form() = default;
  explicit Form(int n) : n_(n) {
    if (n < 0 || n > kMaxDim) throw std::invalid_argument("dimension out of range");
  }

  static Form monomial(int n, Mask m, Scalar c = 1) {
    Form f(n);
    f.add(m, c);
    return f;
  }
  static Form constant(int n, Scalar c) { return monomial(n, 0, std::move(c)); }
  /// tau^k, 1-based.
  static Form tau(int n, int k) { return monomial(n, Mask{1} << (k - 1)); }
  /// conj(tau^k), 1-based.
  static Form taubar(int n, int k) { return monomial(n, Mask{1} << (n + k - 1)); }

  int n() const { return n_; }
  const std::map<Mask, Scalar>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Scalar coeff(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar() : it->second;
  }

  void add(Mask m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  /// Component of bidegree (p,q).
  Form project(int p, int q) const {
    Form out(n_);
    for (const auto& [m, c] : terms_)
      if (bidegree_of(n_, m) == std::pair{p, q}) out.terms_.emplace(m, c);
    return out;
  }
  /// Component of total degree k.
  Form degree_part(int k) const {
    Form out(n_);
    for (const auto& [m, c] : terms_)
      if (popcount(m) == k) out.terms_.emplace(m, c);
    return out;
  }

  std::set<std::pair<int, int>> bidegrees() const {
    std::set<std::pair<int, int>> out;
    for (const auto& [m, c] : terms_) out.insert(bidegree_of(n_, m));
    return out;
  }
  /// The bidegree when the form is pure and nonzero.
  std::optional<std::pair<int, int>> bidegree() const {
    auto b = bidegrees();
    if (b.size() != 1) return std::nullopt;
    return *b.begin();
  }

  Form& operator+=(const Form& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  Form& operator-=(const Form& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  Form& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Form a, const Scalar& s) { return a *= s; }
  friend Form operator*(const Scalar& s, Form a) { return a *= s; }
  Form operator-() const { return *this * Scalar(-1); }

  friend bool operator==(const Form& a, const Form& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

  void check_same(const Form& o) const {
    if (o.n_ != n_) throw PresentationMismatch("forms over different coframes (n=" + std::to_string(n_) +
                                               " vs n=" + std::to_string(o.n_) + ")");
  }

  /// Human-readable rendering, e.g. "-1*t1^t2 + i*t3^~t1".
  std::string str(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      bool compound = !c.is_real() && sgn(c.re()) != 0;
      os << (compound ? "(" + c.str() + ")" : c.str());
      if (m) os << '*' << monomial_str(m, names);
    }
    return os.str();
  }

  std::string monomial_str(Mask m, const std::vector<std::string>& names = {}) const {
    std::string s;
    for (int a = 0; a < 2 * n_; ++a) {
      if (!(m >> a & 1)) continue;
      if (!s.empty()) s += '^';
      s += slot_name(a, names);
    }
    return s.empty() ? "1" : s;
  }

  std::string slot_name(int a, const std::vector<std::string>& names = {}) const {
    int k = a % n_;
    std::string base = names.empty() ? "t" + std::to_string(k + 1) : names[static_cast<std::size_t>(k)];
    return a < n_ ? base : "~" + base;
  }

private:
  int n_ = 0;
  std::map<Mask, Scalar> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const Form& f) { return os << f.str(); }

inline Form wedge(const Form& a, const Form& b) {
  a.check_same(b);
  Form out(a.n());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      int s = wedge_sign(ma, mb);
      if (s == 0) continue;
      Scalar c = ca * cb;
      if (s < 0) c = -c;
      out.add(ma | mb, c);
    }
  return out;
}

/// Conjugate of a canonical monomial: returns the conjugate mask and the sign
/// of reordering conj(tau^I ^ conj(tau^J)) = conj(tau^I) ^ tau^J into canonical
/// order, which is (-1)^{|I||J|}.
inline std::pair<Mask, int> conjugate_monomial(int n, Mask m) {
  Mask holo = holo_part(n, m), anti = anti_part(n, m);
  int s = (popcount(holo) * popcount(anti)) & 1 ? -1 : 1;
  return {make_mask(n, anti, holo), s};
}

inline Form conjugate(const Form& f) {
  Form out(f.n());
  for (const auto& [m, c] : f.terms()) {
    auto [cm, s] = conjugate_monomial(f.n(), m);
    Scalar v = c.conj();
    out.add(cm, s < 0 ? -v : v);
  }
  return out;
}

/// Interior product with the frame vector dual to slot a (0 <= a < 2n).
inline Form interior(int a, const Form& f) {
  Form out(f.n());
  Mask bit = Mask{1} << a;
  for (const auto& [m, c] : f.terms()) {
    if (!(m & bit)) continue;
    bool odd = popcount(m & low_bits(a)) & 1;
    out.add(m & ~bit, odd ? -c : c);
  }
  return out;
}

/// Degree-1 forms e^a as a list of (slot, coefficient) pairs.
inline Form one_form(int n, const std::vector<std::pair<int, Scalar>>& entries) {
  Form f(n);
  for (const auto& [a, c] : entries) f.add(Mask{1} << a, c);
  return f;
}

/// Sum of the image of each monomial under a slot-by-slot substitution:
/// slot a is replaced by the one-form images[a].
inline Form substitute_slots(const Form& f, const std::vector<Form>& images) {
  Form out(f.n());
  for (const auto& [m, c] : f.terms()) {
    Form acc = Form::constant(f.n(), c);
    for (Mask rest = m; rest && !acc.is_zero(); rest &= rest - 1)
      acc = wedge(acc, images[static_cast<std::size_t>(std::countr_zero(rest))]);
    out += acc;
  }
  return out;
}

/// All canonical monomials of bidegree (p,q), ordered lexicographically on
/// (I, J): the index sets I, J are compared as increasing sequences.
class BidegreeBasis {
public:
  BidegreeBasis(int n, int p, int q) : n_(n), p_(p), q_(q) {
    if (p < 0 || q < 0 || p > n || q > n) return;
    for (Mask i : subsets(n, p))
      for (Mask j : subsets(n, q)) monomials_.push_back(make_mask(n, i, j));
    for (std::size_t k = 0; k < monomials_.size(); ++k) index_.emplace(monomials_[k], k);
  }

  int n() const { return n_; }
  int p() const { return p_; }
  int q() const { return q_; }
  std::size_t size() const { return monomials_.size(); }
  const std::vector<Mask>& monomials() const { return monomials_; }
  Mask operator[](std::size_t k) const { return monomials_[k]; }

  std::optional<std::size_t> index(Mask m) const {
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Coefficient vector of the (p,q)-part of f in this basis.
  std::vector<Scalar> coords(const Form& f) const {
    std::vector<Scalar> v(size());
    for (const auto& [m, c] : f.terms()) {
      auto k = index(m);
      if (k) v[*k] = c;
    }
    return v;
  }

  Form form(const std::vector<Scalar>& v) const {
    Form f(n_);
    for (std::size_t k = 0; k < v.size(); ++k) f.add(monomials_[k], v[k]);
    return f;
  }

  /// k-subsets of {0..n-1} as bit sets, in lexicographic order of their
  /// increasing element sequences.
  static std::vector<Mask> subsets(int n, int k) {
    std::vector<Mask> out;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    if (k > n) return out;
    while (true) {
      Mask m = 0;
      for (int i : idx) m |= Mask{1} << i;
      out.push_back(m);
      int i = k - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
  }

private:
  int n_, p_, q_;
  std::vector<Mask> monomials_;
  std::map<Mask, std::size_t> index_;
};

}  // namespace nilhodge
