#pragma once

#include <memory>
#include <regex>
#include <string>
#include <utility>
#include <vector>

#include "nilhodge/errors.hpp"
#include "nilhodge/form.hpp"

namespace nilhodge {

/// Complex Lie algebra given by d on a (1,0)-coframe tau^1..tau^n; d on the
/// conjugate coframe is the conjugate. Construction validates d^2 = 0 and the
/// absence of (0,2)-parts, so every instance defines an integrable structure.
class LiePresentation {
public:
  LiePresentation(std::vector<std::string> names, std::vector<Form> d_tau, std::string name = {},
                  std::string note = {})
      : n_(static_cast<int>(names.size())),
        names_(std::move(names)),
        name_(std::move(name)),
        note_(std::move(note)) {
    if (n_ < 1 || n_ > kMaxDim) throw ParseError("dimension must be between 1 and " + std::to_string(kMaxDim));
    if (d_tau.size() != names_.size()) throw ParseError("need one differential per coframe element");
    for (auto& f : d_tau) {
      if (f.n() != n_) throw PresentationMismatch("differential over a coframe of different size");
      for (const auto& [m, c] : f.terms())
        if (popcount(m) != 2) throw ParseError("d of " + names_[&f - d_tau.data()] + " is not a 2-form");
    }
    d_slot_.resize(static_cast<std::size_t>(2 * n_));
    for (int k = 0; k < n_; ++k) {
      d_slot_[static_cast<std::size_t>(k)] = d_tau[static_cast<std::size_t>(k)];
      d_slot_[static_cast<std::size_t>(n_ + k)] = conjugate(d_tau[static_cast<std::size_t>(k)]);
    }
    validate();
  }

  int n() const { return n_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name() const { return name_; }
  const std::string& note() const { return note_; }

  /// d tau^k, 1-based.
  const Form& d_tau(int k) const { return d_slot_[static_cast<std::size_t>(k - 1)]; }
  /// d e^a for slot a in 0..2n-1.
  const Form& d_slot(int a) const { return d_slot_[static_cast<std::size_t>(a)]; }

  /// Every d tau^k is of pure type (2,0).
  bool complex_parallelizable() const {
    for (int k = 0; k < n_; ++k)
      for (const auto& [m, c] : d_slot_[static_cast<std::size_t>(k)].terms())
        if (bidegree_of(n_, m) != std::pair{2, 0}) return false;
    return true;
  }

  /// Lower central series of the real algebra reaches zero. The dual
  /// statement: the filtration V_0 = 0, V_{k+1} = {slots a : d e^a in
  /// Lambda^2 V_k} exhausts all 2n slots. Checked on slots, so it is sound
  /// only when the coframe is adapted; a false result is inconclusive.
  bool nilpotent_adapted() const {
    Mask reached = 0;
    Mask all = low_bits(2 * n_);
    while (reached != all) {
      Mask next = reached;
      for (int a = 0; a < 2 * n_; ++a) {
        if (reached >> a & 1) continue;
        bool inside = true;
        for (const auto& [m, c] : d_slot(a).terms())
          if ((m & ~reached) != 0) inside = false;
        if (inside) next |= Mask{1} << a;
      }
      if (next == reached) return false;
      reached = next;
    }
    return true;
  }

  Form d(const Form& f) const {
    check(f);
    Form out(n_);
    for (const auto& [m, c] : f.terms()) out += d_monomial(m) * c;
    return out;
  }
  /// Bidegree (+1,0) part of d.
  Form del(const Form& f) const { return shifted_part(f, 1, 0); }
  /// Bidegree (0,+1) part of d.
  Form delbar(const Form& f) const { return shifted_part(f, 0, 1); }

  /// [E_a, E_b] for the frame dual to the 2n slots, as coefficients over
  /// frame vectors; fixed by d w(X,Y) = -w([X,Y]) on invariant forms.
  std::vector<Scalar> bracket(int a, int b) const {
    std::vector<Scalar> out(static_cast<std::size_t>(2 * n_));
    if (a == b) return out;
    Mask m = (Mask{1} << a) | (Mask{1} << b);
    bool flip = a > b;
    for (int c = 0; c < 2 * n_; ++c) {
      Scalar v = d_slot(c).coeff(m);
      if (v.is_zero()) continue;
      out[static_cast<std::size_t>(c)] = flip ? v : -v;
    }
    return out;
  }

  void check(const Form& f) const {
    if (f.n() != n_) throw PresentationMismatch("form has n=" + std::to_string(f.n()) + ", presentation has n=" +
                                                std::to_string(n_));
  }

  std::string slot_name(int a) const { return Form(n_).slot_name(a, names_); }

  friend bool operator==(const LiePresentation& a, const LiePresentation& b) {
    return a.n_ == b.n_ && a.d_slot_ == b.d_slot_;
  }

private:
  Form d_monomial(Mask m) const {
    Form out(n_);
    int pos = 0;
    for (Mask rest = m; rest; rest &= rest - 1, ++pos) {
      int a = std::countr_zero(rest);
      Mask left = m & low_bits(a);
      Mask right = m & ~low_bits(a + 1);
      for (const auto& [dm, dc] : d_slot(a).terms()) {
        int s1 = wedge_sign(left, dm);
        if (s1 == 0) continue;
        int s2 = wedge_sign(left | dm, right);
        if (s2 == 0) continue;
        int s = s1 * s2 * ((pos & 1) ? -1 : 1);
        out.add(left | dm | right, s < 0 ? -dc : dc);
      }
    }
    return out;
  }

  Form shifted_part(const Form& f, int dp, int dq) const {
    check(f);
    Form out(n_);
    for (const auto& [m, c] : f.terms()) {
      auto [p, q] = bidegree_of(n_, m);
      Form dm_form = d_monomial(m);
      for (const auto& [dm, dc] : dm_form.terms())
        if (bidegree_of(n_, dm) == std::pair{p + dp, q + dq}) out.add(dm, dc * c);
    }
    return out;
  }

  void validate() const {
    for (int k = 1; k <= n_; ++k) {
      Form bad = d_tau(k).project(0, 2);
      if (!bad.is_zero())
        throw IntegrabilityError("d " + names_[static_cast<std::size_t>(k - 1)] + " has a (0,2)-component: " +
                                 bad.str(names_));
    }
    for (int k = 1; k <= n_; ++k) {
      Form dd = d(d_tau(k));
      if (!dd.is_zero())
        throw JacobiError("d^2 " + names_[static_cast<std::size_t>(k - 1)] + " = " + dd.str(names_) + " != 0");
    }
  }

  int n_;
  std::vector<std::string> names_;
  std::string name_, note_;
  std::vector<Form> d_slot_;
};

inline std::vector<std::string> default_names(int n) {
  std::vector<std::string> names;
  for (int k = 1; k <= n; ++k) names.push_back("t" + std::to_string(k));
  return names;
}

inline LiePresentation torus(int n) {
  return LiePresentation(default_names(n), std::vector<Form>(static_cast<std::size_t>(n), Form(n)),
                         "torus(" + std::to_string(n) + ")", "abelian");
}

/// Iwasawa manifold: d tau^3 = -tau^1 ^ tau^2.
inline LiePresentation iwasawa() {
  const int n = 3;
  std::vector<Form> d(3, Form(n));
  d[2] = -wedge(Form::tau(n, 1), Form::tau(n, 2));
  return LiePresentation(default_names(n), d, "iwasawa", "complex parallelizable, 2-step nilpotent");
}

/// Ten-dimensional 3-step nilpotent algebra with a non-parallelizable complex
/// structure, deformed by the integrable family ~tau^5, ~tau^4 -> theta_4.
/// The (1-i) tau^1^tau^4 term in d tau^3 is forced by d^2 tau^5 = 0.
inline LiePresentation cfp() {
  const int n = 5;
  auto t = [](int k) { return Form::tau(5, k); };
  auto tb = [](int k) { return Form::taubar(5, k); };
  std::vector<Form> d(5, Form(n));
  d[2] = Scalar(Rational(1), Rational(-1)) * wedge(t(1), t(4)) -
         (wedge(t(1), tb(1)) + Scalar(Rational(1), Rational(1)) * wedge(t(1), tb(4)));
  d[4] = Scalar(Rational(1, 2)) * (wedge(t(1), tb(3)) + wedge(t(3), tb(1)) - wedge(t(2), tb(2)));
  return LiePresentation(default_names(n), d, "cfp", "3-step nilpotent, not complex parallelizable");
}

/// "torus(n)", "iwasawa" or "cfp".
inline LiePresentation builtin(const std::string& name) {
  if (name == "iwasawa") return iwasawa();
  if (name == "cfp") return cfp();
  static const std::regex torus_re(R"(torus\((\d+)\))");
  std::smatch m;
  if (std::regex_match(name, m, torus_re)) {
    int n = std::stoi(m[1]);
    if (n >= 1 && n <= kMaxDim) return torus(n);
  }
  throw UnknownBuiltin("unknown builtin presentation '" + name + "' (expected torus(n), iwasawa, cfp)");
}

}  // namespace nilhodge
