#include "symspace/flats.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <set>

namespace symspace {

namespace {

constexpr double kClusterTol = 1e-7;
constexpr std::int64_t kMaxDenominator = 10000;
constexpr std::size_t kWeylCap = 10000;

Index intersection_dim(const SubspaceQ& a, const SubspaceQ& b) {
  MatrixQ joined(a.ambient_dim(), a.dim() + b.dim());
  joined << a.basis(), b.basis();
  return a.dim() + b.dim() - rank<Rational>(joined);
}

std::string key_of(const MatrixQ& m) {
  std::string k;
  for (Index i = 0; i < m.size(); ++i) {
    k += m.data()[i].str();
    k += ',';
  }
  return k;
}

std::string key_of(const Matrix<double>& m) {
  std::string k;
  for (Index i = 0; i < m.size(); ++i) {
    const long long q = std::llround(m.data()[i] * 1e6);
    k += std::to_string(q == 0 ? 0 : q);  // avoid "-0"
    k += ',';
  }
  return k;
}

template <typename Scalar, typename KeyFn>
Index group_closure(const std::vector<Matrix<Scalar>>& gens, Index r, KeyFn key) {
  const Matrix<Scalar> id = Matrix<Scalar>::Identity(r, r);
  std::set<std::string> seen{key(id)};
  std::vector<Matrix<Scalar>> frontier{id};
  while (!frontier.empty() && seen.size() < kWeylCap) {
    std::vector<Matrix<Scalar>> next;
    for (const auto& g : frontier)
      for (const auto& s : gens) {
        Matrix<Scalar> h = s * g;
        if (seen.insert(key(h)).second) next.push_back(std::move(h));
      }
    frontier = std::move(next);
  }
  return static_cast<Index>(seen.size());
}

}  // namespace

bool is_regular(const SymmetricSpace& space, const VectorQ& v, Index rank) {
  return centralizer(space, v).dim() == rank;
}

bool is_regular(const SymmetricSpace& space, const VectorQ& v) {
  return is_regular(space, v, symspace::rank(space).rank);
}

Flat random_maximal_flat(const SymmetricSpace& space, std::uint64_t seed, Index rank, int budget) {
  std::mt19937_64 rng(seed);
  for (int t = 0; t < budget; ++t) {
    VectorQ v = random_integer_vector(space.dim_p(), rng);
    SubspaceQ c = centralizer(space, v);
    if (c.dim() == rank) return {std::move(c), std::move(v)};
  }
  throw Error(ErrorCode::kBudgetExhausted, "no regular vector found within the trial budget");
}

Flat random_maximal_flat(const SymmetricSpace& space, std::uint64_t seed) {
  return random_maximal_flat(space, seed, symspace::rank(space, seed).rank);
}

Flat standard_flat(const SymmetricSpace& space) {
  SubspaceQ z = SubspaceQ::full(space.dim_p());
  IncrementalSpan<Rational> chosen(space.dim_p());
  while (z.dim() > chosen.dim()) {
    for (Index c = 0; c < z.dim(); ++c) {
      const VectorQ x = z.basis().col(c);
      if (chosen.contains(x)) continue;
      chosen.add(x);
      z = joint_centralizer(space, MatrixQ(x), z);
      break;
    }
  }
  std::mt19937_64 rng(12345);
  for (int t = 0; t < 1000; ++t) {
    VectorQ w = random_vector_in(z, rng);
    if (centralizer(space, w).dim() == z.dim()) return {z, w};
  }
  throw Error(ErrorCode::kInvalidFlat, "standard flat has no regular element");
}

Index RestrictedRootSystem::multiplicity_sum() const {
  Index s = 0;
  for (std::size_t i = 0; i < roots.size(); i += 2) s += roots[i].multiplicity;
  return s;
}

bool RestrictedRootSystem::irreducible() const {
  const std::size_t n = roots.size() / 2;
  if (n == 0) return false;
  const Matrix<double> ginv = to_double(flat_gram).inverse();
  std::vector<bool> reached(n, false);
  std::vector<std::size_t> stack{0};
  reached[0] = true;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < n; ++j) {
      if (reached[j]) continue;
      const double ip = roots[2 * i].value.dot(ginv * roots[2 * j].value);
      const double scale = roots[2 * i].value.norm() * roots[2 * j].value.norm();
      if (std::abs(ip) > 1e-9 * std::max(1.0, scale)) {
        reached[j] = true;
        stack.push_back(j);
      }
    }
  }
  return std::all_of(reached.begin(), reached.end(), [](bool b) { return b; });
}

std::vector<int> RestrictedRootSystem::j_signature(const VectorQ& u) const {
  if (!exact) return j_signature(to_double(u));
  std::vector<int> out;
  for (std::size_t h = 0; h < hyperplane_root.size(); ++h)
    if (roots[hyperplane_root[h]].exact.dot(u).is_zero()) out.push_back(static_cast<int>(h));
  return out;
}

std::vector<int> RestrictedRootSystem::j_signature(const Eigen::VectorXd& u, double tol) const {
  std::vector<int> out;
  for (std::size_t h = 0; h < hyperplane_normals.size(); ++h)
    if (std::abs(hyperplane_normals[h].dot(u)) <= tol * std::max(1.0, u.norm())) out.push_back(static_cast<int>(h));
  return out;
}

RestrictedRootSystem restricted_roots(const SymmetricSpace& space, const Flat& flat, std::uint64_t seed) {
  const MatrixQ& a = flat.subspace.basis();
  const Index r = a.cols(), dp = space.dim_p();
  if (flat.subspace.ambient_dim() != dp || r == 0) throw Error(ErrorCode::kInvalidFlat, "flat must be a nonzero subspace of p");
  if (!is_abelian(space, flat.subspace)) throw Error(ErrorCode::kInvalidFlat, "flat is not abelian");

  std::vector<MatrixQ> xs, ys;  // ad(a_i): k -> p and p -> k
  for (Index i = 0; i < r; ++i) {
    xs.push_back(space.ad_kp_of_p(a.col(i)));
    ys.push_back(space.ad_pk(a.col(i)));
  }

  // Float pass in G-orthonormal coordinates, where ad(H)^2 is symmetric.
  const Matrix<double> gp = to_double(space.form_p().matrix());
  const Matrix<double> lt = Eigen::LLT<Matrix<double>>(gp).matrixU();  // L^T
  const Matrix<double> lt_inv = lt.inverse();
  auto sym = [&](const Matrix<double>& m) { return Matrix<double>(lt * m * lt_inv); };
  std::vector<Matrix<double>> xd, yd;
  for (Index i = 0; i < r; ++i) {
    xd.push_back(to_double(xs[i]));
    yd.push_back(to_double(ys[i]));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd t(r);
  for (Index i = 0; i < r; ++i) t(i) = normal(rng);
  Matrix<double> xh = Matrix<double>::Zero(dp, space.dim_k()), yh = Matrix<double>::Zero(space.dim_k(), dp);
  for (Index i = 0; i < r; ++i) {
    xh += t(i) * xd[i];
    yh += t(i) * yd[i];
  }
  Matrix<double> sh = sym(xh * yh);
  sh = 0.5 * (sh + sh.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix<double>> es(sh);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  const double tol = kClusterTol * scale;

  std::vector<std::pair<Index, Index>> clusters;  // [start, end)
  for (Index i = 0; i < dp;) {
    Index j = i + 1;
    while (j < dp && ev(j) - ev(j - 1) <= tol) ++j;
    clusters.push_back({i, j});
    i = j;
  }
  if (clusters.empty() || std::abs(ev(0)) > tol || clusters.front().second != r)
    throw Error(ErrorCode::kInvalidFlat, "zero eigenspace of ad(H)^2 does not match the flat");

  RestrictedRootSystem out;
  out.flat = flat;
  out.flat_gram = multiply<Rational>(MatrixQ(a.transpose()), multiply<Rational>(space.form_p().matrix(), a));
  std::vector<std::pair<Eigen::VectorXd, Index>> found;
  for (std::size_t c = 1; c < clusters.size(); ++c) {
    const auto [b, e] = clusters[c];
    const Matrix<double> vecs = es.eigenvectors().middleCols(b, e - b);
    const Index m = e - b;
    Matrix<double> cmat(r, r);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < r; ++j) {
        const Matrix<double> block = vecs.transpose() * sym(xd[i] * yd[j]) * vecs;
        cmat(i, j) = block.trace() / static_cast<double>(m);
        if ((block - cmat(i, j) * Matrix<double>::Identity(m, m)).norm() > 1e-6 * scale)
          throw Error(ErrorCode::kInvalidFlat, "non-semisimple joint action on p");
      }
    Index i0 = 0;
    for (Index i = 1; i < r; ++i)
      if (cmat(i, i) > cmat(i0, i0)) i0 = i;
    Eigen::VectorXd alpha(r);
    const double a0 = std::sqrt(std::max(0.0, cmat(i0, i0)));
    for (Index j = 0; j < r; ++j) alpha(j) = cmat(i0, j) / a0;
    if (alpha.dot(t) < 0) alpha = -alpha;
    found.push_back({alpha, m});
  }

  // Exact pass: rationalize and re-verify the eigenspaces for an integer H.
  bool exact = true;
  std::vector<VectorQ> qroots;
  for (const auto& [alpha, m] : found) {
    VectorQ q(r);
    for (Index i = 0; i < r && exact; ++i) {
      auto v = rationalize_within(alpha(i), kMaxDenominator, 1e-6 * scale);
      if (!v) exact = false;
      else q(i) = *v;
    }
    qroots.push_back(q);
  }
  if (exact) {
    std::mt19937_64 irng(seed ^ 0xabcdefULL);
    VectorQ s;
    bool separated = false;
    for (int attempt = 0; attempt < 100 && !separated; ++attempt) {
      s = random_nonzero_integer_vector(r, irng, 1000);
      std::set<Rational> values;
      separated = true;
      for (const auto& q : qroots) {
        const Rational v = q.dot(s);
        if (v.is_zero() || !values.insert(v * v).second) separated = false;
      }
    }
    exact = separated;
    if (exact) {
      MatrixQ xs_h = MatrixQ::Zero(dp, space.dim_k()), ys_h = MatrixQ::Zero(space.dim_k(), dp);
      for (Index i = 0; i < r; ++i) {
        xs_h += s(i) * xs[i];
        ys_h += s(i) * ys[i];
      }
      const MatrixQ qh = multiply<Rational>(xs_h, ys_h);
      Index total = kernel<Rational>(qh).cols();
      exact = total == r;
      for (std::size_t k = 0; k < qroots.size() && exact; ++k) {
        const Rational lambda = qroots[k].dot(s) * qroots[k].dot(s);
        const MatrixQ eig = kernel<Rational>(MatrixQ(qh - lambda * MatrixQ::Identity(dp, dp)));
        if (eig.cols() != found[k].second) {
          exact = false;
          break;
        }
        for (Index i = 0; i < r && exact; ++i)
          for (Index j = 0; j < r && exact; ++j) {
            const MatrixQ img = multiply<Rational>(xs[i], multiply<Rational>(ys[j], eig));
            if (!is_zero<Rational>(MatrixQ(img - qroots[k](i) * qroots[k](j) * eig))) exact = false;
          }
        total += eig.cols();
      }
      exact = exact && total == dp;
    }
  }
  out.exact = exact;

  for (std::size_t k = 0; k < found.size(); ++k) {
    RestrictedRoot pos, neg;
    pos.value = found[k].first;
    neg.value = -found[k].first;
    if (exact) {
      pos.exact = qroots[k];
      neg.exact = -qroots[k];
      pos.value = to_double(qroots[k]);
      neg.value = -pos.value;
    }
    pos.multiplicity = neg.multiplicity = found[k].second;
    out.roots.push_back(pos);
    out.roots.push_back(neg);
  }

  // One hyperplane per line of roots (alpha and 2 alpha share a hyperplane).
  for (std::size_t k = 0; k < out.roots.size(); k += 2) {
    const Eigen::VectorXd dir = out.roots[k].value.normalized();
    bool dup = false;
    for (const auto& n : out.hyperplane_normals)
      if (std::abs(std::abs(n.dot(dir)) - 1.0) < 1e-9) dup = true;
    if (dup) continue;
    out.hyperplane_normals.push_back(dir);
    out.hyperplane_root.push_back(static_cast<int>(k));
    if (exact) out.hyperplanes.push_back(SubspaceQ::span(kernel<Rational>(MatrixQ(out.roots[k].exact.transpose()))));
  }

  // Weyl group generated by the root reflections s(c) = c - 2 alpha(c)/|alpha|^2 h_alpha.
  if (exact) {
    const MatrixQ ginv = inverse<Rational>(out.flat_gram);
    std::vector<MatrixQ> gens;
    for (int k : out.hyperplane_root) {
      const VectorQ& al = out.roots[k].exact;
      const VectorQ h = multiply<Rational>(ginv, al);
      gens.push_back(MatrixQ(MatrixQ::Identity(r, r) - (Rational(2) / al.dot(h)) * (h * al.transpose())));
    }
    out.weyl_order = group_closure<Rational>(gens, r, [](const MatrixQ& m) { return key_of(m); });
  } else {
    const Matrix<double> ginv = to_double(out.flat_gram).inverse();
    std::vector<Matrix<double>> gens;
    for (int k : out.hyperplane_root) {
      const Eigen::VectorXd& al = out.roots[k].value;
      const Eigen::VectorXd h = ginv * al;
      gens.push_back(Matrix<double>::Identity(r, r) - (2.0 / al.dot(h)) * (h * al.transpose()));
    }
    out.weyl_order = group_closure<double>(gens, r, [](const Matrix<double>& m) { return key_of(m); });
  }
  return out;
}

CentralizerProfile centralizer_profile(const SymmetricSpace& space, const VectorQ& z, Index rank,
                                       const RestrictedRootSystem* roots, std::uint64_t seed) {
  if (is_zero<Rational>(z)) throw Error(ErrorCode::kZeroVector, "centralizer profile needs z != 0");
  CentralizerProfile out;
  const SubspaceQ c = centralizer(space, z);
  out.is_lts = is_lts(space, c);
  if (out.is_lts) {
    const SubspaceQ ab = abelian_part(space, c);
    out.euclidean_dim = ab.dim();
    out.z_in_abelian_part = ab.contains(z);
  }
  out.rank_nz = greedy_rank(space, c, seed).rank;
  out.rank_matches = out.rank_nz == rank;
  if (roots != nullptr) {
    if (auto u = roots->flat.subspace.try_coordinates(z)) out.j_signature = roots->j_signature(*u);
  }
  return out;
}

TransversalResult transversal_flat(const SymmetricSpace& space, const SubspaceQ& w, Index rank, int budget,
                                   std::uint64_t seed) {
  if (w.ambient_dim() != space.dim_p()) throw Error(ErrorCode::kNotInP, "subspace is not a subspace of p");
  if (w.dim() >= space.dim_p()) throw Error(ErrorCode::kDegenerateSubspace, "transversal flat needs a proper subspace");
  std::mt19937_64 rng(seed);
  Index worst = -1;
  for (int t = 1; t <= budget; ++t) {
    VectorQ v = random_integer_vector(space.dim_p(), rng);
    SubspaceQ c = centralizer(space, v);
    if (c.dim() != rank) continue;
    const Index meet = intersection_dim(c, w);
    if (meet == 0) return {{std::move(c), std::move(v)}, t};
    worst = std::max(worst, meet);
  }
  throw Error(ErrorCode::kBudgetExhausted,
              "no transversal flat within budget; largest intersection dimension seen " + std::to_string(worst));
}

}  // namespace symspace
