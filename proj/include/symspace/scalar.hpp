#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace symspace {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixQ = Matrix<Rational>;
using VectorQ = Vector<Rational>;

/// Comparison tolerance for float mode (default 1e-9).
double float_tolerance();
void set_float_tolerance(double eps);

template <typename Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static double magnitude(const Rational& x) { return std::abs(x.convert_to<double>()); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static bool is_zero(double x) { return std::abs(x) <= float_tolerance(); }
  static double magnitude(double x) { return std::abs(x); }
};

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(double x) { return x; }

Matrix<double> to_double(const MatrixQ& m);
Vector<double> to_double(const VectorQ& v);
MatrixQ to_rational(const Matrix<int>& m);

/// Parses "p", "-p" or "p/q".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// Best continued-fraction approximation with denominator at most `max_den`.
Rational rationalize(double x, std::int64_t max_den);

/// Like `rationalize`, but gives up if the approximation is off by more than `tol`.
std::optional<Rational> rationalize_within(double x, std::int64_t max_den, double tol);

}  // namespace symspace
