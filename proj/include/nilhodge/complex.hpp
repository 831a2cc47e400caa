#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "nilhodge/form.hpp"
#include "nilhodge/matrix.hpp"
#include "nilhodge/presentation.hpp"

namespace nilhodge {

enum class Op { del, delbar, ddbar };

/// Matrices of del, delbar and del-delbar between bidegree bases, computed on
/// first use and cached. Out-of-range bidegrees are zero spaces, so the
/// matrices there have zero rows or columns.
class DoubleComplex {
public:
  explicit DoubleComplex(LiePresentation P) : P_(std::move(P)) {}

  const LiePresentation& presentation() const { return P_; }
  int n() const { return P_.n(); }

  const BidegreeBasis& basis(int p, int q) const {
    std::lock_guard lock(mu_);
    auto key = std::pair{p, q};
    auto it = bases_.find(key);
    if (it == bases_.end()) it = bases_.emplace(key, std::make_unique<BidegreeBasis>(P_.n(), p, q)).first;
    return *it->second;
  }

  std::size_t dim(int p, int q) const { return basis(p, q).size(); }

  /// Operator from A^{p,q}; target is (p+1,q), (p,q+1) or (p+1,q+1).
  const Matrix& matrix(Op op, int p, int q) const {
    {
      std::lock_guard lock(mu_);
      auto it = ops_.find({op, p, q});
      if (it != ops_.end()) return it->second;
    }
    auto [tp, tq] = target(op, p, q);
    const BidegreeBasis& src = basis(p, q);
    const BidegreeBasis& dst = basis(tp, tq);
    Matrix m(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
      Form image = apply(op, Form::monomial(P_.n(), src[c]));
      for (const auto& [mask, coef] : image.terms()) {
        auto r = dst.index(mask);
        if (r) m(*r, c) = coef;
      }
    }
    std::lock_guard lock(mu_);
    return ops_.emplace(std::tuple{op, p, q}, std::move(m)).first->second;
  }

  const Matrix& del(int p, int q) const { return matrix(Op::del, p, q); }
  const Matrix& delbar(int p, int q) const { return matrix(Op::delbar, p, q); }
  const Matrix& ddbar(int p, int q) const { return matrix(Op::ddbar, p, q); }

  Form apply(Op op, const Form& f) const {
    switch (op) {
      case Op::del: return P_.del(f);
      case Op::delbar: return P_.delbar(f);
      case Op::ddbar: return P_.del(P_.delbar(f));
    }
    return Form(P_.n());
  }

  static std::pair<int, int> target(Op op, int p, int q) {
    switch (op) {
      case Op::del: return {p + 1, q};
      case Op::delbar: return {p, q + 1};
      case Op::ddbar: return {p + 1, q + 1};
    }
    return {p, q};
  }

  /// Monomials of total degree k, ordered by bidegree (p descending from k)
  /// and then by bidegree-basis order.
  std::vector<Mask> degree_basis(int k) const {
    std::vector<Mask> out;
    for (int p = std::min(k, n()); p >= 0; --p) {
      int q = k - p;
      if (q < 0 || q > n()) continue;
      const auto& b = basis(p, q);
      out.insert(out.end(), b.monomials().begin(), b.monomials().end());
    }
    return out;
  }

  /// Matrix of d from total degree k to k+1.
  Matrix d_total(int k) const {
    auto src = degree_basis(k);
    auto dst = degree_basis(k + 1);
    std::map<Mask, std::size_t> index;
    for (std::size_t r = 0; r < dst.size(); ++r) index.emplace(dst[r], r);
    Matrix m(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
      Form image = P_.d(Form::monomial(P_.n(), src[c]));
      for (const auto& [mask, coef] : image.terms()) m(index.at(mask), c) = coef;
    }
    return m;
  }

private:
  LiePresentation P_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, std::unique_ptr<BidegreeBasis>> bases_;
  mutable std::map<std::tuple<Op, int, int>, Matrix> ops_;
};

}  // namespace nilhodge
