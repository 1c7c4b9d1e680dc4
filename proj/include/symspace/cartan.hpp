#pragma once

#include "symspace/lie_algebra.hpp"

namespace symspace {

template <typename Scalar>
struct CartanDecomposition {
  Matrix<Scalar> theta;
  Subspace<Scalar> k_space;
  Subspace<Scalar> p_space;
  /// <X, Y> = -B(X, theta Y) on all of g.
  BilinearForm<Scalar> inner_product;
};

using CartanDecompositionQ = CartanDecomposition<Rational>;

/// Validates theta as a Cartan involution and splits g = k + p.
template <typename Scalar>
CartanDecomposition<Scalar> cartan_decompose(const LieAlgebra<Scalar>& g, const Matrix<Scalar>& theta) {
  const Index n = g.dim();
  if (theta.rows() != n || theta.cols() != n)
    throw Error(ErrorCode::kDimensionMismatch, "theta has wrong size");
  const Matrix<Scalar> id = Matrix<Scalar>::Identity(n, n);
  if (!is_zero<Scalar>(Matrix<Scalar>(multiply<Scalar>(theta, theta) - id)))
    throw Error(ErrorCode::kNotAnAutomorphism, "theta is not an involution");

  for (Index i = 0; i < n; ++i) {
    const Vector<Scalar> ti = theta.col(i);
    for (Index j = i + 1; j < n; ++j) {
      Vector<Scalar> lhs = Vector<Scalar>::Zero(n);
      for (const auto& t : g.terms(i, j)) lhs += t.coeff * Vector<Scalar>(theta.col(t.index));
      const Vector<Scalar> rhs = bracket(g, ti, Vector<Scalar>(theta.col(j)));
      if (!is_zero<Scalar>(Vector<Scalar>(lhs - rhs)))
        throw Error(ErrorCode::kNotAnAutomorphism, "theta does not preserve the bracket");
    }
  }

  CartanDecomposition<Scalar> out;
  out.theta = theta;
  out.k_space = Subspace<Scalar>::span(kernel<Scalar>(Matrix<Scalar>(theta - id)));
  out.p_space = Subspace<Scalar>::span(kernel<Scalar>(Matrix<Scalar>(theta + id)));

  const auto b = killing_form(g);
  out.inner_product = BilinearForm<Scalar>(Matrix<Scalar>(-multiply<Scalar>(b.matrix(), theta)));
  if (!out.inner_product.positive_definite())
    throw Error(ErrorCode::kFormNotPositiveDefinite, "-B(X, theta Y) is not positive definite");

  // Bracket inclusions, checked on basis pairs through the theta-eigenvalue of the bracket.
  const auto& kb = out.k_space.basis();
  const auto& pb = out.p_space.basis();
  auto check = [&](const Matrix<Scalar>& a, const Matrix<Scalar>& c, int sign, const char* what) {
    for (Index i = 0; i < a.cols(); ++i)
      for (Index j = 0; j < c.cols(); ++j) {
        const Vector<Scalar> z = bracket(g, Vector<Scalar>(a.col(i)), Vector<Scalar>(c.col(j)));
        const Vector<Scalar> tz = multiply<Scalar>(theta, z);
        const Vector<Scalar> diff = sign > 0 ? Vector<Scalar>(tz - z) : Vector<Scalar>(tz + z);
        if (!is_zero<Scalar>(diff)) throw Error(ErrorCode::kNotAnAutomorphism, what);
      }
  };
  check(kb, kb, +1, "[k,k] not in k");
  check(kb, pb, -1, "[k,p] not in p");
  check(pb, pb, +1, "[p,p] not in k");
  return out;
}

}  // namespace symspace
