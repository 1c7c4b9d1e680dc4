#pragma once

#include "symspace/error.hpp"
#include "symspace/scalar.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace symspace {

/// Reduced row echelon form: `reduced` keeps only the nonzero rows.
template <typename Scalar>
struct Echelon {
  Matrix<Scalar> reduced;
  std::vector<Index> pivots;
};

namespace detail {

template <typename Scalar>
bool exactly_zero(const Scalar& x) {
  if constexpr (ScalarTraits<Scalar>::exact) {
    return x.is_zero();
  } else {
    return x == 0.0;
  }
}

template <typename Scalar>
double threshold(const Matrix<Scalar>& a) {
  if constexpr (ScalarTraits<Scalar>::exact) {
    return 0.0;
  } else {
    double scale = 1.0;
    for (Index j = 0; j < a.cols(); ++j)
      for (Index i = 0; i < a.rows(); ++i) scale = std::max(scale, std::abs(a(i, j)));
    return float_tolerance() * scale;
  }
}

}  // namespace detail

template <typename Scalar>
Echelon<Scalar> row_echelon(Matrix<Scalar> a) {
  constexpr bool exact = ScalarTraits<Scalar>::exact;
  const Index rows = a.rows();
  const Index cols = a.cols();
  const double tol = detail::threshold(a);
  std::vector<Index> pivots;
  std::vector<Index> support;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index best = -1;
    if constexpr (exact) {
      for (Index i = r; i < rows; ++i)
        if (!a(i, c).is_zero()) {
          best = i;
          break;
        }
    } else {
      double largest = tol;
      for (Index i = r; i < rows; ++i)
        if (std::abs(a(i, c)) > largest) {
          largest = std::abs(a(i, c));
          best = i;
        }
    }
    if (best < 0) {
      if constexpr (!exact)
        for (Index i = r; i < rows; ++i) a(i, c) = 0.0;
      continue;
    }
    if (best != r) a.row(best).swap(a.row(r));
    const Scalar inv = Scalar(1) / a(r, c);
    support.clear();
    for (Index j = c; j < cols; ++j) {
      if (detail::exactly_zero(a(r, j))) continue;
      a(r, j) *= inv;
      support.push_back(j);
    }
    a(r, c) = Scalar(1);
    for (Index i = 0; i < rows; ++i) {
      if (i == r || detail::exactly_zero(a(i, c))) continue;
      const Scalar f = a(i, c);
      for (Index j : support) a(i, j) -= f * a(r, j);
      a(i, c) = Scalar(0);
    }
    pivots.push_back(c);
    ++r;
  }
  return {a.topRows(r), std::move(pivots)};
}

template <typename Scalar>
Index rank(const Matrix<Scalar>& a) {
  return static_cast<Index>(row_echelon<Scalar>(a).pivots.size());
}

/// Canonical kernel basis: one column per free variable, with a 1 in that slot.
template <typename Scalar>
Matrix<Scalar> kernel(const Matrix<Scalar>& a) {
  const auto e = row_echelon<Scalar>(a);
  const Index cols = a.cols();
  std::vector<bool> is_pivot(cols, false);
  for (Index p : e.pivots) is_pivot[p] = true;
  const Index nfree = cols - static_cast<Index>(e.pivots.size());
  Matrix<Scalar> k = Matrix<Scalar>::Zero(cols, nfree);
  Index t = 0;
  for (Index f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    k(f, t) = Scalar(1);
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
      if (!detail::exactly_zero(e.reduced(i, f))) k(e.pivots[i], t) = -e.reduced(i, f);
    ++t;
  }
  return k;
}

/// Column-reduced echelon basis of the column span; `pivots` are the pivot rows.
template <typename Scalar>
Echelon<Scalar> column_echelon(const Matrix<Scalar>& vectors) {
  auto e = row_echelon<Scalar>(vectors.transpose());
  return {e.reduced.transpose(), std::move(e.pivots)};
}

/// Some solution of a x = b, if one exists.
template <typename Scalar>
std::optional<Vector<Scalar>> solve(const Matrix<Scalar>& a, const Vector<Scalar>& b) {
  if (a.rows() != b.size()) throw Error(ErrorCode::kDimensionMismatch, "solve: row count mismatch");
  Matrix<Scalar> aug(a.rows(), a.cols() + 1);
  aug << a, b;
  const auto e = row_echelon<Scalar>(aug);
  Vector<Scalar> x = Vector<Scalar>::Zero(a.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == a.cols()) return std::nullopt;
    x(e.pivots[i]) = e.reduced(i, a.cols());
  }
  return x;
}

/// Some solution X of a X = b for every column of b at once.
template <typename Scalar>
std::optional<Matrix<Scalar>> solve_columns(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::kDimensionMismatch, "solve: row count mismatch");
  Matrix<Scalar> aug(a.rows(), a.cols() + b.cols());
  aug << a, b;
  const auto e = row_echelon<Scalar>(aug);
  Matrix<Scalar> x = Matrix<Scalar>::Zero(a.cols(), b.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] >= a.cols()) return std::nullopt;
    x.row(e.pivots[i]) = e.reduced.row(i).tail(b.cols());
  }
  return x;
}

template <typename Scalar>
Matrix<Scalar> inverse(const Matrix<Scalar>& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::kDimensionMismatch, "inverse: not square");
  const Index n = a.rows();
  Matrix<Scalar> aug(n, 2 * n);
  aug << a, Matrix<Scalar>::Identity(n, n);
  const auto e = row_echelon<Scalar>(aug);
  if (static_cast<Index>(e.pivots.size()) < n || e.pivots[n - 1] != n - 1)
    throw Error(ErrorCode::kDegenerateForm, "inverse: singular matrix");
  return e.reduced.rightCols(n);
}

/// Sparse-aware product; worthwhile for rational matrices with many zeros.
template <typename Scalar>
Matrix<Scalar> multiply(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::kDimensionMismatch, "multiply: inner dimension");
  Matrix<Scalar> c = Matrix<Scalar>::Zero(a.rows(), b.cols());
  for (Index k = 0; k < a.cols(); ++k)
    for (Index j = 0; j < b.cols(); ++j) {
      if (detail::exactly_zero(b(k, j))) continue;
      const Scalar& bkj = b(k, j);
      for (Index i = 0; i < a.rows(); ++i)
        if (!detail::exactly_zero(a(i, k))) c(i, j) += a(i, k) * bkj;
    }
  return c;
}

template <typename Scalar>
Vector<Scalar> multiply(const Matrix<Scalar>& a, const Vector<Scalar>& x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::kDimensionMismatch, "multiply: inner dimension");
  Vector<Scalar> y = Vector<Scalar>::Zero(a.rows());
  for (Index k = 0; k < a.cols(); ++k) {
    if (detail::exactly_zero(x(k))) continue;
    for (Index i = 0; i < a.rows(); ++i)
      if (!detail::exactly_zero(a(i, k))) y(i) += a(i, k) * x(k);
  }
  return y;
}

template <typename Scalar>
bool is_zero(const Matrix<Scalar>& a) {
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (!ScalarTraits<Scalar>::is_zero(a(i, j))) return false;
  return true;
}

template <typename Scalar>
bool is_zero(const Vector<Scalar>& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (!ScalarTraits<Scalar>::is_zero(v(i))) return false;
  return true;
}

/// Grows an echelon basis one vector at a time; `add` reports independence.
template <typename Scalar>
class IncrementalSpan {
 public:
  explicit IncrementalSpan(Index ambient) : ambient_(ambient) {}

  Index dim() const { return static_cast<Index>(rows_.size()); }
  Index ambient_dim() const { return ambient_; }

  /// Residual of `v` after elimination against the current rows.
  Vector<Scalar> reduce(Vector<Scalar> v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Index p = pivots_[k];
      if (ScalarTraits<Scalar>::is_zero(v(p))) continue;
      const Scalar f = v(p);
      const auto& row = rows_[k];
      for (Index j = 0; j < ambient_; ++j)
        if (!detail::exactly_zero(row(j))) v(j) -= f * row(j);
      v(p) = Scalar(0);
    }
    return v;
  }

  bool contains(const Vector<Scalar>& v) const { return is_zero(reduce(v)); }

  bool add(const Vector<Scalar>& v) {
    if (v.size() != ambient_) throw Error(ErrorCode::kDimensionMismatch, "IncrementalSpan: size");
    Vector<Scalar> r = reduce(v);
    Index p = -1;
    double best = 0.0;
    for (Index j = 0; j < ambient_; ++j) {
      if (ScalarTraits<Scalar>::is_zero(r(j))) continue;
      if constexpr (ScalarTraits<Scalar>::exact) {
        p = j;
        break;
      } else if (std::abs(r(j)) > best) {
        best = std::abs(r(j));
        p = j;
      }
    }
    if (p < 0) return false;
    r /= Scalar(r(p));
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
  }

  /// Basis vectors as columns (not canonical; canonicalize through Subspace).
  Matrix<Scalar> basis() const {
    Matrix<Scalar> b(ambient_, dim());
    for (Index k = 0; k < dim(); ++k) b.col(k) = rows_[k];
    return b;
  }

 private:
  Index ambient_;
  std::vector<Vector<Scalar>> rows_;
  std::vector<Index> pivots_;
};

}  // namespace symspace
