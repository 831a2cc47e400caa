#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nilhodge {

using Rational = mpq_class;

/// Exact complex number a + b*i with a, b arbitrary-precision rationals.
///
/// Both parts are kept canonical (lowest terms, positive denominator) by GMP,
/// so structural equality is numeric equality.
class GaussianRational {
public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v), im_(0) {}  // NOLINT: implicit by intent
  GaussianRational(Rational re) : re_(std::move(re)), im_(0) {}  // NOLINT
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussianRational imag_unit() { return {Rational(0), Rational(1)}; }
  static GaussianRational fraction(long num, long den, long inum = 0, long iden = 1) {
    Rational r(num, den), i(inum, iden);
    r.canonicalize();
    i.canonicalize();
    return {r, i};
  }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, Rational(-im_)}; }
  /// |z|^2, always a non-negative rational.
  Rational norm2() const { return Rational(re_ * re_ + im_ * im_); }

  /// Total bit size of numerators and denominators; pivoting heuristic.
  std::size_t bit_size() const {
    return mpz_sizeinbase(re_.get_num_mpz_t(), 2) + mpz_sizeinbase(re_.get_den_mpz_t(), 2) +
           mpz_sizeinbase(im_.get_num_mpz_t(), 2) + mpz_sizeinbase(im_.get_den_mpz_t(), 2);
  }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    if (o.is_real()) {
      re_ *= o.re_;
      im_ *= o.re_;
      return *this;
    }
    if (is_real()) {
      Rational r = re_;
      re_ = r * o.re_;
      im_ = r * o.im_;
      return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw std::domain_error("GaussianRational: division by zero");
    if (o.is_real()) {
      re_ /= o.re_;
      im_ /= o.re_;
      return *this;
    }
    Rational d = o.norm2();
    Rational r = (re_ * o.re_ + im_ * o.im_) / d;
    Rational i = (im_ * o.re_ - re_ * o.im_) / d;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }

  GaussianRational operator-() const { return {Rational(-re_), Rational(-im_)}; }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// "p/q", "p/q+r/si", "r/si"; integers print without denominator and a
  /// unit imaginary coefficient prints as "i" / "-i".
  std::string str() const {
    auto imag_part = [this]() -> std::string {
      if (im_ == 1) return "i";
      if (im_ == -1) return "-i";
      return im_.get_str() + "i";
    };
    if (sgn(im_) == 0) return re_.get_str();
    if (sgn(re_) == 0) return imag_part();
    std::string s = re_.get_str();
    std::string ip = imag_part();
    if (ip.front() != '-') s += '+';
    return s + ip;
  }

  /// Accepts "a", "bi", "a+bi", "a-bi", "i", "-i", "i/2", "3/4*i", "(1+i)"
  /// with rational literals "p" or "p/q"; whitespace is ignored.
  static GaussianRational parse(std::string_view text);

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

private:
  Rational re_{0};
  Rational im_{0};
};

using Scalar = GaussianRational;

namespace detail {

inline Rational parse_rational(const std::string& s, std::string_view whole) {
  if (s.empty()) throw std::invalid_argument("malformed number: '" + std::string(whole) + "'");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+')) {
      throw std::invalid_argument("malformed number: '" + std::string(whole) + "'");
    }
  }
  std::string body = s;
  if (body.front() == '+') body.erase(0, 1);
  auto slash = body.find('/');
  try {
    if (slash == std::string::npos) return Rational(mpz_class(body));
    mpz_class num(body.substr(0, slash));
    mpz_class den(body.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed number: '" + std::string(whole) + "'");
  }
}

}  // namespace detail

inline GaussianRational GaussianRational::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '\t' && c != '(' && c != ')' && c != '*') s += c;
  }
  if (s.empty()) throw std::invalid_argument("empty number");
  // split into signed terms at top-level '+' / '-' (not the first char)
  std::vector<std::string> terms;
  std::size_t start = 0;
  for (std::size_t k = 1; k < s.size(); ++k) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') {
      terms.push_back(s.substr(start, k - start));
      start = k;
    }
  }
  terms.push_back(s.substr(start));
  Rational re(0), im(0);
  for (auto term : terms) {
    auto ipos = term.find('i');
    if (ipos == std::string::npos) {
      re += detail::parse_rational(term, text);
      continue;
    }
    if (term.find('i', ipos + 1) != std::string::npos) {
      throw std::invalid_argument("malformed number: '" + std::string(text) + "'");
    }
    term.erase(ipos, 1);
    std::string sign;
    if (!term.empty() && (term.front() == '+' || term.front() == '-')) {
      sign = term.substr(0, 1);
      term.erase(0, 1);
    }
    if (term.empty()) term = "1";
    if (term.front() == '/') term = "1" + term;
    Rational v = detail::parse_rational(term, text);
    if (sign == "-") v = -v;
    im += v;
  }
  return {re, im};
}

}  // namespace nilhodge
