#pragma once

#include "symspace/subspace.hpp"

#include <string>
#include <utility>
#include <vector>

namespace symspace {

template <typename Scalar>
struct Term {
  Index index;
  Scalar coeff;
};

template <typename Scalar>
using Terms = std::vector<Term<Scalar>>;

/// Finite-dimensional real Lie algebra given by sparse structure constants:
/// [e_i, e_j] = sum_k c[i][j][k] e_k, stored per ordered pair.
template <typename Scalar>
class LieAlgebra {
 public:
  LieAlgebra() = default;
  LieAlgebra(Index dim, std::string label)
      : dim_(dim), label_(std::move(label)), table_(static_cast<std::size_t>(dim * dim)) {}

  /// Dense table c[(i*dim + j)*dim + k]; antisymmetry and Jacobi are validated.
  static LieAlgebra from_structure_constants(Index dim, const std::vector<Scalar>& c,
                                             std::string label) {
    if (static_cast<Index>(c.size()) != dim * dim * dim)
      throw Error(ErrorCode::kDimensionMismatch, "structure constant table has wrong size");
    LieAlgebra g(dim, std::move(label));
    for (Index i = 0; i < dim; ++i)
      for (Index j = 0; j < dim; ++j)
        for (Index k = 0; k < dim; ++k) {
          const Scalar& a = c[(i * dim + j) * dim + k];
          const Scalar& b = c[(j * dim + i) * dim + k];
          if (!ScalarTraits<Scalar>::is_zero(a + b))
            throw Error(ErrorCode::kJacobiFailure, "structure constants are not antisymmetric");
          if (!ScalarTraits<Scalar>::is_zero(a)) g.table_[i * dim + j].push_back({k, a});
        }
    if (!ScalarTraits<Scalar>::is_zero(jacobi_residual(g)))
      throw Error(ErrorCode::kJacobiFailure, "Jacobi identity fails for " + g.label_);
    return g;
  }

  Index dim() const { return dim_; }
  const std::string& label() const { return label_; }

  void set_bracket(Index i, Index j, Terms<Scalar> terms) {
    if (i == j) throw Error(ErrorCode::kJacobiFailure, "[e_i, e_i] must vanish");
    Terms<Scalar> neg;
    for (const auto& t : terms)
      if (!detail::exactly_zero(t.coeff)) neg.push_back({t.index, -t.coeff});
    std::erase_if(terms, [](const Term<Scalar>& t) { return detail::exactly_zero(t.coeff); });
    table_[i * dim_ + j] = std::move(terms);
    table_[j * dim_ + i] = std::move(neg);
  }

  const Terms<Scalar>& terms(Index i, Index j) const { return table_[i * dim_ + j]; }

  Scalar structure_constant(Index i, Index j, Index k) const {
    for (const auto& t : terms(i, j))
      if (t.index == k) return t.coeff;
    return Scalar(0);
  }

  template <typename To>
  LieAlgebra<To> cast() const {
    LieAlgebra<To> out(dim_, label_);
    for (Index i = 0; i < dim_; ++i)
      for (Index j = i + 1; j < dim_; ++j) {
        Terms<To> t;
        for (const auto& term : terms(i, j)) t.push_back({term.index, to_scalar<To>(term.coeff)});
        out.set_bracket(i, j, std::move(t));
      }
    return out;
  }

 private:
  template <typename To>
  static To to_scalar(const Scalar& x) {
    if constexpr (std::is_same_v<To, double>) return to_double(x);
    else return To(x);
  }

  Index dim_ = 0;
  std::string label_;
  std::vector<Terms<Scalar>> table_;
};

using LieAlgebraQ = LieAlgebra<Rational>;

namespace detail {

template <typename Scalar>
void check_length(const LieAlgebra<Scalar>& g, Index n) {
  if (n != g.dim()) throw Error(ErrorCode::kDimensionMismatch, "coefficient vector length != dim g");
}

}  // namespace detail

template <typename Scalar>
Vector<Scalar> bracket(const LieAlgebra<Scalar>& g, const Vector<Scalar>& x, const Vector<Scalar>& y) {
  detail::check_length(g, x.size());
  detail::check_length(g, y.size());
  Vector<Scalar> out = Vector<Scalar>::Zero(g.dim());
  for (Index i = 0; i < g.dim(); ++i) {
    if (detail::exactly_zero(x(i))) continue;
    for (Index j = 0; j < g.dim(); ++j) {
      if (i == j || detail::exactly_zero(y(j))) continue;
      const Scalar f = x(i) * y(j);
      for (const auto& t : g.terms(i, j)) out(t.index) += f * t.coeff;
    }
  }
  return out;
}

/// Matrix of y -> [x, y].
template <typename Scalar>
Matrix<Scalar> ad(const LieAlgebra<Scalar>& g, const Vector<Scalar>& x) {
  detail::check_length(g, x.size());
  Matrix<Scalar> m = Matrix<Scalar>::Zero(g.dim(), g.dim());
  for (Index i = 0; i < g.dim(); ++i) {
    if (detail::exactly_zero(x(i))) continue;
    for (Index j = 0; j < g.dim(); ++j)
      for (const auto& t : g.terms(i, j)) m(t.index, j) += x(i) * t.coeff;
  }
  return m;
}

/// Largest absolute component of the cyclic Jacobi sum over basis triples.
template <typename Scalar>
Scalar jacobi_residual(const LieAlgebra<Scalar>& g) {
  const Index n = g.dim();
  Vector<Scalar> acc = Vector<Scalar>::Zero(n);
  Scalar worst(0);
  auto add_nested = [&](Index a, Index b, Index c) {
    for (const auto& t : g.terms(a, b))
      for (const auto& u : g.terms(t.index, c)) acc(u.index) += t.coeff * u.coeff;
  };
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      for (Index l = j + 1; l < n; ++l) {
        add_nested(i, j, l);
        add_nested(j, l, i);
        add_nested(l, i, j);
        for (Index k = 0; k < n; ++k) {
          if (detail::exactly_zero(acc(k))) continue;
          const Scalar a = acc(k) < 0 ? Scalar(-acc(k)) : acc(k);
          if (a > worst) worst = a;
          acc(k) = Scalar(0);
        }
      }
  return worst;
}

/// B(e_i, e_j) = trace(ad e_i ad e_j).
template <typename Scalar>
BilinearForm<Scalar> killing_form(const LieAlgebra<Scalar>& g) {
  const Index n = g.dim();
  std::vector<Matrix<Scalar>> ads;
  ads.reserve(n);
  for (Index i = 0; i < n; ++i) ads.push_back(ad(g, Vector<Scalar>(Vector<Scalar>::Unit(n, i))));
  Matrix<Scalar> b = Matrix<Scalar>::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      Scalar s(0);
      // (ad e_i)(k, l) is nonzero only for k in terms(i, l).
      for (Index l = 0; l < n; ++l)
        for (const auto& t : g.terms(i, l))
          if (!detail::exactly_zero(ads[j](l, t.index))) s += t.coeff * ads[j](l, t.index);
      b(i, j) = s;
      b(j, i) = s;
    }
  return BilinearForm<Scalar>(std::move(b));
}

/// Smallest ideal containing the given vectors.
template <typename Scalar>
Subspace<Scalar> ideal_closure(const LieAlgebra<Scalar>& g, const Matrix<Scalar>& generators) {
  const Index n = g.dim();
  IncrementalSpan<Scalar> span(n);
  std::vector<Vector<Scalar>> queue;
  for (Index c = 0; c < generators.cols(); ++c)
    if (span.add(generators.col(c))) queue.push_back(generators.col(c));
  for (std::size_t q = 0; q < queue.size() && span.dim() < n; ++q)
    for (Index i = 0; i < n && span.dim() < n; ++i) {
      Vector<Scalar> z = bracket(g, Vector<Scalar>(Vector<Scalar>::Unit(n, i)), queue[q]);
      if (span.add(z)) queue.push_back(std::move(z));
    }
  return Subspace<Scalar>::span(span.basis());
}

}  // namespace symspace
