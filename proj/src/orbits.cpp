#include "symspace/orbits.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace symspace {

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

/// Quotient and remainder; b must be nonzero.
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  trim(a);
  Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    const Rational f = a.back() / b.back();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

Poly monic(Poly p) {
  trim(p);
  if (p.empty()) return p;
  const Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

Poly subtract(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

Index degree(const Poly& p) { return static_cast<Index>(p.size()) - 1; }

/// Columns act(e_i, v) = [e_i, v] for the k-basis.
MatrixQ orbit_map(const SymmetricSpace& space, const VectorQ& v) { return MatrixQ(-space.ad_kp_of_p(v)); }

/// Matrix of the action of X (k-coordinates) on an invariant subspace, in its echelon basis.
MatrixQ restricted_action(const SymmetricSpace& space, const VectorQ& x, const SubspaceQ& s) {
  const MatrixQ image = multiply<Rational>(space.ad_kp(x), s.basis());
  MatrixQ out(s.dim(), s.dim());
  for (Index j = 0; j < s.dim(); ++j) {
    auto c = s.try_coordinates(image.col(j));
    if (!c) throw Error(ErrorCode::kNotNormal, "acting algebra does not preserve the normal space");
    out.col(j) = *c;
  }
  return out;
}

SliceData slice_data(const SymmetricSpace& space, SubspaceQ acting, SubspaceQ normal, std::uint64_t seed) {
  SliceData out;
  out.acting_algebra = std::move(acting);
  out.normal = std::move(normal);
  const Index c = out.normal.dim();
  std::vector<MatrixQ> ops;
  IncrementalSpan<Rational> image(c * c);
  for (Index a = 0; a < out.acting_algebra.dim(); ++a) {
    ops.push_back(restricted_action(space, out.acting_algebra.basis().col(a), out.normal));
    image.add(Eigen::Map<const VectorQ>(ops.back().data(), c * c));
  }
  out.image_dim = image.dim();
  out.trivial = out.image_dim == 0;
  if (c >= 2) {
    std::mt19937_64 rng(seed);
    out.transitive_on_sphere = true;
    for (int sample = 0; sample < 2; ++sample) {
      const VectorQ nu = random_nonzero_integer_vector(c, rng);
      MatrixQ tangent(c, static_cast<Index>(ops.size()));
      for (std::size_t a = 0; a < ops.size(); ++a) tangent.col(a) = multiply<Rational>(ops[a], nu);
      const Index od = ops.empty() ? 0 : rank<Rational>(tangent);
      out.orbit_dims.push_back(od);
      if (od != c - 1) out.transitive_on_sphere = false;
    }
  }
  return out;
}

}  // namespace

OrbitModel orbit_spaces(const SymmetricSpace& space, const VectorQ& v) {
  if (v.size() != space.dim_p()) throw Error(ErrorCode::kDimensionMismatch, "expected a vector of p");
  OrbitModel out;
  out.v = v;
  out.tangent = SubspaceQ::span(orbit_map(space, v));
  out.normal = orthocomplement(out.tangent, space.form_p());
  out.dim = out.tangent.dim();
  out.normal_is_centralizer = out.normal == centralizer(space, v);
  return out;
}

VectorQ second_fundamental_form(const SymmetricSpace& space, const VectorQ& v, const VectorQ& x, const VectorQ& y) {
  const MatrixQ m = orbit_map(space, v);
  auto xk = solve<Rational>(m, x);
  if (!xk) throw Error(ErrorCode::kNotNormal, "x is not tangent to the orbit");
  if (!SubspaceQ::span(m).contains(y)) throw Error(ErrorCode::kNotNormal, "y is not tangent to the orbit");
  const OrbitModel orbit = orbit_spaces(space, v);
  const VectorQ z = space.act(*xk, y);
  return multiply<Rational>(orthogonal_projector(orbit.normal, space.form_p()), z);
}

MatrixQ shape_operator(const SymmetricSpace& space, const VectorQ& v, const VectorQ& xi) {
  if (is_zero<Rational>(v)) throw Error(ErrorCode::kZeroVector, "shape operator needs v != 0");
  const OrbitModel orbit = orbit_spaces(space, v);
  if (!orbit.normal.contains(xi)) throw Error(ErrorCode::kNotNormal, "xi is not normal to the orbit");
  const MatrixQ& t = orbit.tangent.basis();
  const Index m = t.cols();
  auto xs = solve_columns<Rational>(orbit_map(space, v), t);
  const MatrixQ g_xi = multiply<Rational>(space.form_p().matrix(), xi);
  MatrixQ s(m, m);
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b) s(a, b) = space.act(xs->col(a), t.col(b)).dot(g_xi.col(0));
  const MatrixQ gram = multiply<Rational>(MatrixQ(t.transpose()), multiply<Rational>(space.form_p().matrix(), t));
  return multiply<Rational>(inverse<Rational>(gram), s);
}

SliceData slice_representation(const SymmetricSpace& space, const SubspaceQ& w, std::uint64_t seed) {
  if (!is_lts(space, w)) throw Error(ErrorCode::kNotLts, "slice representation needs a Lie triple system");
  return slice_data(space, bracket_span(space, w), orthocomplement(w, space.form_p()), seed);
}

SliceData slice_representation(const SymmetricSpace& space, const VectorQ& v, std::uint64_t seed) {
  if (is_zero<Rational>(v)) throw Error(ErrorCode::kZeroVector, "slice representation needs v != 0");
  return slice_data(space, stabilizer(space, v), centralizer(space, v), seed);
}

bool symmetric_submanifold_test(const SymmetricSpace& space, const VectorQ& v) {
  const OrbitModel orbit = orbit_spaces(space, v);
  const Index dp = space.dim_p();
  const MatrixQ tau = MatrixQ(2 * orthogonal_projector(orbit.normal, space.form_p()) - MatrixQ::Identity(dp, dp));
  IncrementalSpan<Rational> ads(dp * dp);
  std::vector<MatrixQ> ops;
  for (Index i = 0; i < space.dim_k(); ++i) {
    ops.push_back(space.ad_kp(VectorQ::Unit(space.dim_k(), i)));
    ads.add(Eigen::Map<const VectorQ>(ops.back().data(), dp * dp));
  }
  for (const auto& op : ops) {
    const MatrixQ conj = multiply<Rational>(tau, multiply<Rational>(op, tau));
    if (!ads.contains(Eigen::Map<const VectorQ>(conj.data(), dp * dp))) return false;
  }
  return true;
}

std::vector<Rational> characteristic_polynomial(const MatrixQ& a) {
  const Index n = a.rows();
  Poly c(n + 1, Rational(0));
  c[n] = 1;
  MatrixQ mk = MatrixQ::Zero(n, n);
  for (Index k = 1; k <= n; ++k) {
    mk = multiply<Rational>(a, mk);
    for (Index i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
    const MatrixQ amk = multiply<Rational>(a, mk);
    c[n - k] = -amk.trace() / k;
  }
  return c;
}

std::vector<Index> root_multiplicities(const std::vector<Rational>& poly) {
  // Yun's square-free decomposition.
  Poly f = monic(poly);
  std::vector<Index> out;
  if (degree(f) < 1) return out;
  const Poly df = derivative(f);
  const Poly a0 = gcd(f, df);
  Poly b = divmod(f, a0).first;
  Poly c = divmod(df, a0).first;
  Poly d = subtract(c, derivative(b));
  for (Index i = 1; degree(b) >= 1; ++i) {
    const Poly ai = gcd(b, d);
    for (Index r = 0; r < degree(ai); ++r) out.push_back(i);
    b = divmod(b, ai).first;
    c = divmod(d, ai).first;
    d = subtract(c, derivative(b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

CurvatureData curvature_normals(const SymmetricSpace& space, const VectorQ& v, Index rank, std::uint64_t seed) {
  const SubspaceQ flat = centralizer(space, v);
  if (flat.dim() != rank) throw Error(ErrorCode::kNotRegular, "curvature normals need a regular vector");
  const OrbitModel orbit = orbit_spaces(space, v);
  const Index m = orbit.dim, r = rank, dp = space.dim_p();
  CurvatureData out;
  out.m = m;
  out.rank_inequality = 2 * rank + 1 <= dp;
  if (m == 0) return out;

  std::vector<MatrixQ> shapes;
  for (Index i = 0; i < r; ++i) shapes.push_back(shape_operator(space, v, flat.basis().col(i)));

  // Shape operators are self-adjoint for the tangent Gram matrix; diagonalize in orthonormal coordinates.
  const MatrixQ& t = orbit.tangent.basis();
  const Matrix<double> gt = to_double(multiply<Rational>(MatrixQ(t.transpose()), multiply<Rational>(space.form_p().matrix(), t)));
  const Matrix<double> lt = Eigen::LLT<Matrix<double>>(gt).matrixU();
  const Matrix<double> lt_inv = lt.inverse();
  std::vector<Matrix<double>> sym;
  for (const auto& s : shapes) {
    Matrix<double> x = lt * to_double(s) * lt_inv;
    sym.push_back(0.5 * (x + x.transpose()));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Matrix<double> combo = Matrix<double>::Zero(m, m);
  for (Index i = 0; i < r; ++i) combo += normal(rng) * sym[i];
  Eigen::SelfAdjointEigenSolver<Matrix<double>> es(combo);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double tol = 1e-7 * std::max(1.0, ev.cwiseAbs().maxCoeff());

  const Matrix<double> ga = to_double(multiply<Rational>(MatrixQ(flat.basis().transpose()),
                                                         multiply<Rational>(space.form_p().matrix(), flat.basis())));
  const Matrix<double> ga_inv = ga.inverse();
  const Matrix<double> basis = to_double(flat.basis());
  for (Index i = 0; i < m;) {
    Index j = i + 1;
    while (j < m && ev(j) - ev(j - 1) <= tol) ++j;
    const Matrix<double> e = es.eigenvectors().middleCols(i, j - i);
    Eigen::VectorXd lambda(r);
    for (Index k = 0; k < r; ++k) lambda(k) = (e.transpose() * sym[k] * e).trace() / static_cast<double>(j - i);
    const Eigen::VectorXd c = ga_inv * lambda;
    out.flat_normals.push_back(c);
    out.normals.push_back(basis * c);
    out.multiplicities.push_back(j - i);
    i = j;
  }
  out.g = static_cast<Index>(out.normals.size());
  Matrix<double> nm(r, out.g);
  for (Index k = 0; k < out.g; ++k) nm.col(k) = out.flat_normals[k];
  out.spans_flat = Eigen::FullPivLU<Matrix<double>>(nm).rank() == r;

  // Exact confirmation of the eigenspace dimensions for a generic integer combination.
  std::vector<Index> sizes = out.multiplicities;
  std::sort(sizes.begin(), sizes.end());
  std::mt19937_64 irng(seed ^ 0x5eedULL);
  for (int attempt = 0; attempt < 20 && !out.exact_confirmed; ++attempt) {
    const VectorQ s = random_nonzero_integer_vector(r, irng, 10);
    MatrixQ a = MatrixQ::Zero(m, m);
    for (Index k = 0; k < r; ++k) a += s(k) * shapes[k];
    out.exact_confirmed = root_multiplicities(characteristic_polynomial(a)) == sizes;
  }
  return out;
}

SuborbitDims suborbit_dimension_check(const SymmetricSpace& space, const SubspaceQ& w, const VectorQ& v) {
  if (is_zero<Rational>(v)) throw Error(ErrorCode::kZeroVector, "suborbit check needs v != 0");
  if (!w.contains(v)) throw Error(ErrorCode::kNotInP, "v is not in W");
  if (!is_lts(space, w)) throw Error(ErrorCode::kNotLts, "suborbit check needs a Lie triple system");
  const SubspaceQ kw = bracket_span(space, w);
  SuborbitDims out;
  const MatrixQ full = orbit_map(space, v);
  out.d = rank<Rational>(full);
  out.d_sub = kw.dim() == 0 ? 0 : rank<Rational>(multiply<Rational>(full, kw.basis()));
  out.strict = out.d_sub < out.d;
  return out;
}

FocalExtension focal_extension(const SymmetricSpace& space, const RestrictedRootSystem& roots, const VectorQ& v) {
  if (!roots.exact) throw Error(ErrorCode::kInvalidFlat, "focal extension needs an exact root system");
  const SubspaceQ& flat = roots.flat.subspace;
  auto u = flat.try_coordinates(v);
  if (!u) throw Error(ErrorCode::kNotInP, "v is not in the flat");
  FocalExtension out;
  const SubspaceQ cv = centralizer(space, v);
  out.dim_before = cv.dim();
  const SubspaceQ ab = abelian_part(space, cv);
  for (std::size_t k = 0; k < roots.roots.size() && !out.found; k += 2) {
    const VectorQ& alpha = roots.roots[k].exact;
    const Rational av = alpha.dot(*u);
    if (av.is_zero()) continue;
    for (Index c = 0; c < ab.dim() && !out.found; ++c) {
      const VectorQ h = ab.basis().col(c);
      auto hu = flat.try_coordinates(h);
      if (!hu) continue;
      const Rational ah = alpha.dot(*hu);
      if (ah.is_zero()) continue;
      const VectorQ xi = (-av / ah) * h;
      const VectorQ moved = v + xi;
      if (is_zero<Rational>(moved)) continue;
      const SubspaceQ cw = centralizer(space, moved);
      if (cw.dim() > cv.dim() && cw.contains(cv)) {
        out.found = true;
        out.xi = xi;
        out.dim_after = cw.dim();
      }
    }
  }
  return out;
}

}  // namespace symspace
