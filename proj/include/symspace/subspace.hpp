#pragma once

#include "symspace/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace symspace {

/// Subspace of a coordinate space, stored by its column-reduced echelon basis.
/// Over the rationals two subspaces are equal iff their bases are identical.
template <typename Scalar>
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(Index ambient) : ambient_(ambient), basis_(ambient, 0) {}

  static Subspace span(const Matrix<Scalar>& vectors) {
    Subspace s(vectors.rows());
    auto e = column_echelon<Scalar>(vectors);
    s.basis_ = std::move(e.reduced);
    s.pivots_ = std::move(e.pivots);
    return s;
  }

  static Subspace line(const Vector<Scalar>& v) { return span(Matrix<Scalar>(v)); }

  static Subspace full(Index ambient) {
    return span(Matrix<Scalar>::Identity(ambient, ambient));
  }

  Index ambient_dim() const { return ambient_; }
  Index dim() const { return basis_.cols(); }
  Index codim() const { return ambient_ - dim(); }
  const Matrix<Scalar>& basis() const { return basis_; }
  const std::vector<Index>& pivots() const { return pivots_; }

  /// Coordinates in the echelon basis; throws if `v` is outside.
  Vector<Scalar> coordinates(const Vector<Scalar>& v) const {
    auto c = try_coordinates(v);
    if (!c) throw Error(ErrorCode::kAmbientMismatch, "vector not in subspace");
    return *c;
  }

  std::optional<Vector<Scalar>> try_coordinates(const Vector<Scalar>& v) const {
    check_size(v.size());
    Vector<Scalar> c(dim());
    for (Index j = 0; j < dim(); ++j) c(j) = v(pivots_[j]);
    Vector<Scalar> diff = v - multiply<Scalar>(basis_, c);
    if (!symspace::is_zero<Scalar>(diff)) return std::nullopt;
    return c;
  }

  bool contains(const Vector<Scalar>& v) const { return try_coordinates(v).has_value(); }

  bool contains(const Subspace& other) const {
    check_size(other.ambient_);
    for (Index j = 0; j < other.dim(); ++j)
      if (!contains(Vector<Scalar>(other.basis_.col(j)))) return false;
    return true;
  }

  bool operator==(const Subspace& other) const {
    if (ambient_ != other.ambient_ || dim() != other.dim()) return false;
    if constexpr (ScalarTraits<Scalar>::exact) {
      return pivots_ == other.pivots_ && basis_ == other.basis_;
    } else {
      return contains(other);
    }
  }
  bool operator!=(const Subspace& other) const { return !(*this == other); }

  void check_size(Index n) const {
    if (n != ambient_) throw Error(ErrorCode::kAmbientMismatch, "ambient dimension mismatch");
  }

 private:
  Index ambient_ = 0;
  Matrix<Scalar> basis_;
  std::vector<Index> pivots_;
};

using SubspaceQ = Subspace<Rational>;

template <typename Scalar>
Subspace<Scalar> intersect(const Subspace<Scalar>& u, const Subspace<Scalar>& v) {
  u.check_size(v.ambient_dim());
  if (u.dim() == 0 || v.dim() == 0) return Subspace<Scalar>(u.ambient_dim());
  Matrix<Scalar> joined(u.ambient_dim(), u.dim() + v.dim());
  joined << u.basis(), -v.basis();
  const Matrix<Scalar> k = kernel<Scalar>(joined);
  return Subspace<Scalar>::span(multiply<Scalar>(u.basis(), Matrix<Scalar>(k.topRows(u.dim()))));
}

template <typename Scalar>
Subspace<Scalar> operator+(const Subspace<Scalar>& u, const Subspace<Scalar>& v) {
  u.check_size(v.ambient_dim());
  Matrix<Scalar> joined(u.ambient_dim(), u.dim() + v.dim());
  joined << u.basis(), v.basis();
  return Subspace<Scalar>::span(joined);
}

struct Signature {
  Index positive = 0;
  Index negative = 0;
  Index zero = 0;
  bool operator==(const Signature&) const = default;
};

/// Inertia of a symmetric matrix by congruence (exact) or eigenvalues (float).
template <typename Scalar>
Signature signature(const Matrix<Scalar>& m) {
  const Index n = m.rows();
  Signature s;
  if constexpr (ScalarTraits<Scalar>::exact) {
    Matrix<Scalar> a = m;
    for (Index k = 0; k < n; ++k) {
      Index piv = -1;
      for (Index i = k; i < n; ++i)
        if (!a(i, i).is_zero()) {
          piv = i;
          break;
        }
      if (piv < 0) {
        // All remaining diagonal entries vanish; fold an off-diagonal entry onto the diagonal.
        Index pi = -1, pj = -1;
        for (Index i = k; i < n && pi < 0; ++i)
          for (Index j = i + 1; j < n; ++j)
            if (!a(i, j).is_zero()) {
              pi = i;
              pj = j;
              break;
            }
        if (pi < 0) {
          s.zero += n - k;
          break;
        }
        a.row(pi) += a.row(pj);
        a.col(pi) += a.col(pj);
        piv = pi;
      }
      if (piv != k) {
        a.row(piv).swap(a.row(k));
        a.col(piv).swap(a.col(k));
      }
      const Scalar d = a(k, k);
      (d > 0 ? s.positive : s.negative) += 1;
      for (Index i = k + 1; i < n; ++i) {
        if (a(i, k).is_zero()) continue;
        const Scalar f = a(i, k) / d;
        for (Index j = k + 1; j < n; ++j)
          if (!a(k, j).is_zero()) a(i, j) -= f * a(k, j);
      }
      for (Index i = k + 1; i < n; ++i) a(i, k) = a(k, i) = Scalar(0);
    }
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix<double>> es(m);
    const double tol = detail::threshold(m);
    for (Index i = 0; i < n; ++i) {
      const double ev = es.eigenvalues()(i);
      if (ev > tol) ++s.positive;
      else if (ev < -tol) ++s.negative;
      else ++s.zero;
    }
  }
  return s;
}

template <typename Scalar>
class BilinearForm {
 public:
  BilinearForm() = default;
  explicit BilinearForm(Matrix<Scalar> m) : matrix_(std::move(m)) {
    if (matrix_.rows() != matrix_.cols())
      throw Error(ErrorCode::kDimensionMismatch, "bilinear form must be square");
    if (!symspace::is_zero<Scalar>(Matrix<Scalar>(matrix_ - matrix_.transpose())))
      throw Error(ErrorCode::kInvalidConfig, "bilinear form must be symmetric");
    signature_ = symspace::signature<Scalar>(matrix_);
  }

  const Matrix<Scalar>& matrix() const { return matrix_; }
  const Signature& signature() const { return signature_; }
  Index dim() const { return matrix_.rows(); }
  bool positive_definite() const { return signature_.positive == dim(); }

  Scalar operator()(const Vector<Scalar>& x, const Vector<Scalar>& y) const {
    return x.dot(multiply<Scalar>(matrix_, y));
  }

 private:
  Matrix<Scalar> matrix_;
  Signature signature_;
};

template <typename Scalar>
Subspace<Scalar> orthocomplement(const Subspace<Scalar>& u, const BilinearForm<Scalar>& form) {
  u.check_size(form.dim());
  if (!form.positive_definite())
    throw Error(ErrorCode::kDegenerateForm, "orthocomplement needs a positive definite form");
  if (u.dim() == 0) return Subspace<Scalar>::full(u.ambient_dim());
  const Matrix<Scalar> rows = multiply<Scalar>(Matrix<Scalar>(u.basis().transpose()), form.matrix());
  return Subspace<Scalar>::span(kernel<Scalar>(rows));
}

}  // namespace symspace
