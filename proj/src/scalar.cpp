#include "symspace/scalar.hpp"

#include "symspace/error.hpp"

#include <atomic>
#include <cmath>

namespace symspace {

namespace {
std::atomic<double> g_tolerance{1e-9};
}

double float_tolerance() { return g_tolerance.load(std::memory_order_relaxed); }

void set_float_tolerance(double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::kInvalidConfig, "tolerance must be positive");
  g_tolerance.store(eps, std::memory_order_relaxed);
}

Matrix<double> to_double(const MatrixQ& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) out(i, j) = to_double(m(i, j));
  return out;
}

Vector<double> to_double(const VectorQ& v) {
  Vector<double> out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = to_double(v(i));
  return out;
}

MatrixQ to_rational(const Matrix<int>& m) {
  MatrixQ out(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) out(i, j) = m(i, j);
  return out;
}

Rational parse_rational(std::string_view text) {
  auto bad = [&] { return Error(ErrorCode::kParse, "not a rational: '" + std::string(text) + "'"); };
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw bad();
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& t, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false)) throw bad();
  if (num[0] == '+') num.erase(num.begin());
  using boost::multiprecision::mpz_int;
  const mpz_int d(den);
  if (d == 0) throw bad();
  return Rational(mpz_int(num), d);
}

std::string to_string(const Rational& q) { return q.str(); }

Rational rationalize(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw Error(ErrorCode::kParse, "cannot rationalize a non-finite value");
  // Convergents h/k of the continued fraction of x.
  using boost::multiprecision::mpz_int;
  mpz_int h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(r);
    const mpz_int ai(static_cast<long long>(a));
    const mpz_int h2 = ai * h1 + h0;
    const mpz_int k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const double frac = r - a;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
    if (r > 1e15) break;
  }
  if (k1 == 0) return Rational(static_cast<long long>(std::llround(x)));
  return Rational(h1, k1);
}

std::optional<Rational> rationalize_within(double x, std::int64_t max_den, double tol) {
  Rational q = rationalize(x, max_den);
  if (std::abs(to_double(q) - x) > tol) return std::nullopt;
  return q;
}

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kAmbientMismatch: return "ambient mismatch";
    case ErrorCode::kNotAnAutomorphism: return "not an automorphism";
    case ErrorCode::kFormNotPositiveDefinite: return "form not positive definite";
    case ErrorCode::kDegenerateForm: return "degenerate form";
    case ErrorCode::kJacobiFailure: return "Jacobi failure";
    case ErrorCode::kUnsupportedParameters: return "unsupported parameters";
    case ErrorCode::kNotInP: return "not in p";
    case ErrorCode::kNotLts: return "not a Lie triple system";
    case ErrorCode::kDegenerateSubspace: return "degenerate subspace";
    case ErrorCode::kBudgetExhausted: return "budget exhausted";
    case ErrorCode::kNotRegular: return "not regular";
    case ErrorCode::kNotNormal: return "not normal";
    case ErrorCode::kZeroVector: return "zero vector";
    case ErrorCode::kInvalidConfig: return "invalid config";
    case ErrorCode::kInvalidFlat: return "invalid flat";
    case ErrorCode::kUnknownPair: return "unknown pair";
    case ErrorCode::kParse: return "parse error";
  }
  return "error";
}

}  // namespace symspace
