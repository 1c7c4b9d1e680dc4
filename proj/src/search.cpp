#include "symspace/search.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace symspace {

namespace {

using Eigen::MatrixXd;

double penalty(const MatrixXd& v, MatrixXd* grad) {
  // sum_i P_ii (1 - P_ii), P = V V^T; zero exactly on coordinate planes.
  const Eigen::VectorXd d = v.rowwise().squaredNorm();
  double h = 0.0;
  for (Index i = 0; i < d.size(); ++i) h += d(i) * (1.0 - d(i));
  if (grad) {
    *grad = MatrixXd(v.rows(), v.cols());
    for (Index i = 0; i < v.rows(); ++i) grad->row(i) = 2.0 * (1.0 - 2.0 * d(i)) * v.row(i);
    *grad -= v * (v.transpose() * *grad);
  }
  return h;
}

struct Descent {
  MatrixXd v;
  double f = 0.0;
  int iters = 0;
};

// Riemannian descent with Barzilai-Borwein steps and Armijo backtracking, QR retraction.
// mu > 0 adds the alignment penalty.
Descent descend(const LtsObjective& obj, MatrixXd v, int max_iters, double stop_residual, double mu = 0.0) {
  auto eval = [&](const MatrixXd& x, MatrixXd& g) {
    double val = obj.value_and_gradient(x, g);
    if (mu > 0.0) {
      MatrixXd gh;
      val += mu * penalty(x, &gh);
      g += mu * gh;
    }
    return val;
  };
  auto value = [&](const MatrixXd& x) { return obj.value(x) + (mu > 0.0 ? mu * penalty(x, nullptr) : 0.0); };

  MatrixXd g;
  double f = eval(v, g);
  double step = 1.0;
  int it = 0;
  for (; it < max_iters; ++it) {
    const double gn2 = g.squaredNorm();
    if (mu == 0.0 && std::sqrt(std::max(f, 0.0)) <= stop_residual) break;
    if (gn2 < 1e-26) break;
    double alpha = step;
    MatrixXd next;
    double fn = 0.0;
    bool ok = false;
    for (int bt = 0; bt < 40; ++bt) {
      next = retract(v - alpha * g);
      fn = value(next);
      if (fn <= f - 1e-4 * alpha * gn2) {
        ok = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!ok) break;
    MatrixXd gnext;
    fn = eval(next, gnext);
    // BB1 step from the projected differences.
    MatrixXd s = next - v;
    s -= next * (next.transpose() * s);
    const MatrixXd y = gnext - g;
    const double sy = std::abs((s.array() * y.array()).sum());
    step = sy > 0.0 ? std::clamp(s.squaredNorm() / sy, 1e-6, 1e4) : 1.0;
    const bool stalled = f - fn <= 1e-15 * std::max(1.0, f);
    v = std::move(next);
    g = std::move(gnext);
    f = fn;
    if (stalled) break;
  }
  return {std::move(v), f, it};
}

// Column echelon of a float basis with a loose pivot threshold.
std::optional<MatrixXd> float_echelon(MatrixXd a, double tol) {
  a.transposeInPlace();  // rows span the plane
  const Index rows = a.rows();
  Index r = 0;
  for (Index c = 0; c < a.cols() && r < rows; ++c) {
    Index best = -1;
    double largest = tol;
    for (Index i = r; i < rows; ++i)
      if (std::abs(a(i, c)) > largest) {
        largest = std::abs(a(i, c));
        best = i;
      }
    if (best < 0) continue;
    a.row(best).swap(a.row(r));
    a.row(r) /= a(r, c);
    for (Index i = 0; i < rows; ++i)
      if (i != r) a.row(i) -= a(i, c) * a.row(r);
    ++r;
  }
  if (r != rows) return std::nullopt;
  return MatrixXd(a.transpose());
}

std::optional<SubspaceQ> rationalized(const SymmetricSpace& space, const MatrixXd& x, std::int64_t max_den) {
  auto e = float_echelon(x, 1e-6);
  if (!e) return std::nullopt;
  MatrixQ q(e->rows(), e->cols());
  for (Index j = 0; j < e->cols(); ++j)
    for (Index i = 0; i < e->rows(); ++i) {
      auto r = rationalize_within((*e)(i, j), max_den, 1e-6);
      if (!r) return std::nullopt;
      q(i, j) = *r;
    }
  SubspaceQ s = SubspaceQ::span(q);
  if (s.dim() != x.cols() || !is_lts(space, s)) return std::nullopt;
  return s;
}

// Coordinate plane in orthonormal coordinates nearest to V, pulled back exactly.
std::optional<SubspaceQ> snapped(const SymmetricSpace& space, const LtsObjective& obj, const MatrixXd& v) {
  const Eigen::VectorXd d = v.rowwise().squaredNorm();
  std::vector<Index> axes;
  for (Index i = 0; i < d.size(); ++i)
    if (d(i) > 0.5) axes.push_back(i);
  if (static_cast<Index>(axes.size()) != v.cols()) return std::nullopt;
  MatrixQ basis(obj.orthogonal_basis().rows(), v.cols());
  for (Index j = 0; j < v.cols(); ++j) basis.col(j) = obj.orthogonal_basis().col(axes[j]);
  SubspaceQ s = SubspaceQ::span(basis);
  if (!is_lts(space, s)) return std::nullopt;
  return s;
}

std::optional<SubspaceQ> refine(const SymmetricSpace& space, const LtsObjective& obj, const MatrixXd& v,
                                const SearchConfig& config) {
  if (auto s = rationalized(space, obj.to_p() * v, config.max_den)) return s;
  // Generic points of a continuous family of solutions are irrational; slide along the
  // family towards planes spanned by orthonormal axes, which are rational.
  for (double mu : {1e-1, 1e-2, 1e-3}) {
    Descent a = descend(obj, v, config.max_iters, 0.0, mu);
    Descent b = descend(obj, a.v, config.max_iters, config.tol_accept * 1e-3);
    if (auto s = snapped(space, obj, b.v)) return s;
    if (auto s = rationalized(space, obj.to_p() * b.v, config.max_den)) return s;
  }
  return std::nullopt;
}

struct RestartOutcome {
  MatrixXd v;
  double residual = 0.0;
};

}  // namespace

void validate_config(const SearchConfig& config, Index dim_p) {
  if (config.codim < 1 || config.codim >= dim_p)
    throw Error(ErrorCode::kInvalidConfig, "codim must satisfy 1 <= codim < dim p = " + std::to_string(dim_p));
  if (!(config.tol_accept < config.tol_reject))
    throw Error(ErrorCode::kInvalidConfig, "tol_accept must be below tol_reject");
  if (config.restarts < 1 || config.max_iters < 1)
    throw Error(ErrorCode::kInvalidConfig, "restarts and max_iters must be positive");
}

LtsObjective::LtsObjective(const SymmetricSpace& space) : n_(space.dim_p()) {
  const Index n = n_;
  // Exact Gram-Schmidt of the coordinate basis; u-axis i is b_i / |b_i|.
  const MatrixQ& gram = space.form_p().matrix();
  b_ = MatrixQ::Identity(n, n);
  std::vector<Rational> norms(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < i; ++j) {
      const Rational c = VectorQ(b_.col(i)).dot(multiply<Rational>(gram, VectorQ(b_.col(j)))) / norms[j];
      if (!c.is_zero()) b_.col(i) -= c * b_.col(j);
    }
    norms[i] = VectorQ(b_.col(i)).dot(multiply<Rational>(gram, VectorQ(b_.col(i))));
  }
  m_ = to_double(b_);
  for (Index i = 0; i < n; ++i) m_.col(i) /= std::sqrt(to_double(norms[i]));
  // M^{-1} = M^T G.
  const MatrixXd m_inv = m_.transpose() * to_double(gram);

  // Triple tensor in p-coordinates, then change all four slots.
  const std::size_t n4 = static_cast<std::size_t>(n * n * n * n);
  std::vector<double> raw(n4, 0.0);
  const Index dk = space.dim_k();
  std::vector<std::vector<std::pair<Index, double>>> kp(static_cast<std::size_t>(dk * n));
  for (Index k = 0; k < dk; ++k)
    for (Index c = 0; c < n; ++c)
      for (const auto& t : space.kp_terms(k, c)) kp[k * n + c].push_back({t.index, to_double(t.coeff)});
  auto at = [n](Index a, Index b, Index c, Index d) { return static_cast<std::size_t>(((a * n + b) * n + c) * n + d); };
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (const auto& s : space.pp_terms(a, b)) {
        const double cs = to_double(s.coeff);
        for (Index c = 0; c < n; ++c)
          for (const auto& [d, cd] : kp[s.index * n + c]) raw[at(a, b, c, d)] += cs * cd;
      }
  // Slot transform: new(.., i, ..) = sum_j A(j, i) old(.., j, ..) for slot s of four.
  auto transform = [&](std::vector<double>& t, int slot, const MatrixXd& a) {
    std::vector<double> out(n4, 0.0);
    Index stride = 1;
    for (int s = 3; s > slot; --s) stride *= n;
    const Index block = stride * n;
    for (std::size_t base = 0; base < n4; base += static_cast<std::size_t>(block))
      for (Index inner = 0; inner < stride; ++inner)
        for (Index i = 0; i < n; ++i) {
          double acc = 0.0;
          for (Index j = 0; j < n; ++j) {
            const double aji = a(j, i);
            if (aji != 0.0) acc += aji * t[base + static_cast<std::size_t>(j * stride + inner)];
          }
          out[base + static_cast<std::size_t>(i * stride + inner)] = acc;
        }
    t = std::move(out);
  };
  transform(raw, 0, m_);
  transform(raw, 1, m_);
  transform(raw, 2, m_);
  transform(raw, 3, m_inv.transpose());
  t_ = std::move(raw);
}

double LtsObjective::value(const MatrixXd& v) const { return evaluate(v, nullptr); }

double LtsObjective::value_and_gradient(const MatrixXd& v, MatrixXd& grad) const { return evaluate(v, &grad); }

double LtsObjective::evaluate(const MatrixXd& v, MatrixXd* grad) const {
  const Index n = n_;
  const Index m = v.cols();
  if (v.rows() != n) throw Error(ErrorCode::kDimensionMismatch, "frame has wrong row count");
  // u1[i,b,c,d] = sum_a V(a,i) T[a,b,c,d]
  const Index n3 = n * n * n;
  std::vector<double> u1(static_cast<std::size_t>(m * n3), 0.0);
  for (Index a = 0; a < n; ++a)
    for (Index i = 0; i < m; ++i) {
      const double via = v(a, i);
      if (via == 0.0) continue;
      const double* src = &t_[static_cast<std::size_t>(a * n3)];
      double* dst = &u1[static_cast<std::size_t>(i * n3)];
      for (Index q = 0; q < n3; ++q) dst[q] += via * src[q];
    }
  // u2[i,j,c,d] = sum_b V(b,j) u1[i,b,c,d]
  const Index n2 = n * n;
  std::vector<double> u2(static_cast<std::size_t>(m * m * n2), 0.0);
  for (Index i = 0; i < m; ++i)
    for (Index b = 0; b < n; ++b) {
      const double* src = &u1[static_cast<std::size_t>(i * n3 + b * n2)];
      for (Index j = 0; j < m; ++j) {
        const double vbj = v(b, j);
        if (vbj == 0.0) continue;
        double* dst = &u2[static_cast<std::size_t>((i * m + j) * n2)];
        for (Index q = 0; q < n2; ++q) dst[q] += vbj * src[q];
      }
    }
  // t[i,j,l,:] = sum_c V(c,l) u2[i,j,c,:]; residual r = (I - V V^T) t.
  const Index m2 = m * m;
  MatrixXd t(n, m2 * m);
  for (Index ij = 0; ij < m2; ++ij) {
    Eigen::Map<const MatrixXd> block(&u2[static_cast<std::size_t>(ij * n2)], n, n);  // block(d, c)
    t.middleCols(ij * m, m) = block * v;
  }
  const MatrixXd coeff = v.transpose() * t;
  const MatrixXd r = t - v * coeff;
  const double f = r.squaredNorm();
  if (!grad) return f;

  MatrixXd g = MatrixXd::Zero(n, m);
  // Third slot: G(c,l) += 2 sum_{i,j,d} u2[i,j,c,d] r[d,(i,j,l)].
  for (Index ij = 0; ij < m2; ++ij) {
    Eigen::Map<const MatrixXd> block(&u2[static_cast<std::size_t>(ij * n2)], n, n);
    g += 2.0 * block.transpose() * r.middleCols(ij * m, m);
  }
  // Second slot: y[i,b,l,d] = sum_c u1[i,b,c,d] V(c,l); G(b,j) += 2 sum y[i,b,l,d] r[d,(i,j,l)].
  for (Index i = 0; i < m; ++i)
    for (Index b = 0; b < n; ++b) {
      Eigen::Map<const MatrixXd> block(&u1[static_cast<std::size_t>(i * n3 + b * n2)], n, n);
      const MatrixXd y = block * v;  // y(d, l)
      for (Index j = 0; j < m; ++j) g(b, j) += 2.0 * (y.array() * r.middleCols((i * m + j) * m, m).array()).sum();
    }
  // First slot: z[a,j,c,d] = sum_b V(b,j) T[a,b,c,d]; then contract c with V(c,l).
  for (Index a = 0; a < n; ++a) {
    MatrixXd z = MatrixXd::Zero(n, n * m);  // z(d, j*n + c)
    for (Index b = 0; b < n; ++b) {
      Eigen::Map<const MatrixXd> block(&t_[static_cast<std::size_t>(a * n3 + b * n2)], n, n);
      for (Index j = 0; j < m; ++j) {
        const double vbj = v(b, j);
        if (vbj != 0.0) z.middleCols(j * n, n) += vbj * block;
      }
    }
    for (Index j = 0; j < m; ++j) {
      const MatrixXd zz = z.middleCols(j * n, n) * v;  // (d, l)
      for (Index i = 0; i < m; ++i) g(a, i) += 2.0 * (zz.array() * r.middleCols((i * m + j) * m, m).array()).sum();
    }
  }
  // Projector term: -2 sum r (V^T t)^T.
  g -= 2.0 * r * coeff.transpose();
  *grad = g - v * (v.transpose() * g);
  return f;
}

MatrixXd random_frame(Index n, Index m, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  MatrixXd a(n, m);
  for (Index j = 0; j < m; ++j)
    for (Index i = 0; i < n; ++i) a(i, j) = normal(rng);
  return retract(a);
}

MatrixXd retract(const MatrixXd& v) {
  Eigen::HouseholderQR<MatrixXd> qr(v);
  return qr.householderQ() * MatrixXd::Identity(v.rows(), v.cols());
}

MatrixXd finite_difference_gradient(const LtsObjective& f, const MatrixXd& v, double h) {
  const Index n = v.rows();
  const Index m = v.cols();
  // Orthonormal complement of the frame.
  Eigen::HouseholderQR<MatrixXd> qr(v);
  const MatrixXd full = qr.householderQ();
  const MatrixXd perp = full.rightCols(n - m);
  MatrixXd g = MatrixXd::Zero(n, m);
  for (Index a = 0; a < n - m; ++a)
    for (Index j = 0; j < m; ++j) {
      MatrixXd delta = MatrixXd::Zero(n, m);
      delta.col(j) = perp.col(a);
      const double d = (f.value(retract(v + h * delta)) - f.value(retract(v - h * delta))) / (2.0 * h);
      g += d * delta;
    }
  return g;
}

std::string to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::kAccepted: return "accepted";
    case SearchStatus::kNumericalOnly: return "numerical-only";
    case SearchStatus::kInconclusive: return "inconclusive";
    case SearchStatus::kRejected: return "rejected";
  }
  return "unknown";
}

SearchResult lts_search(const SymmetricSpace& space, const SearchConfig& config) {
  validate_config(config, space.dim_p());
  const LtsObjective obj(space);
  const Index n = space.dim_p();
  const Index m = n - config.codim;

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(config.restarts));
  auto run = [&](int k) {
    std::mt19937_64 rng(derive_seed(config.seed, k));
    Descent d = descend(obj, random_frame(n, m, rng), config.max_iters, config.tol_accept * 1e-3);
    outcomes[static_cast<std::size_t>(k)] = {std::move(d.v), std::sqrt(std::max(d.f, 0.0))};
  };
  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(config.restarts));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (int k = static_cast<int>(w); k < config.restarts; k += static_cast<int>(threads)) run(k);
      });
  }

  SearchResult result;
  result.codim = config.codim;
  std::vector<int> order(outcomes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return outcomes[a].residual < outcomes[b].residual; });
  for (const auto& o : outcomes) result.residual_histogram.push_back(o.residual);
  const RestartOutcome& best = outcomes[order.front()];
  result.best_residual = best.residual;
  result.best_subspace = Subspace<double>::span(obj.to_p() * best.v);

  if (result.best_residual <= config.tol_accept) {
    // Try the converged restarts in order of residual until one refines exactly.
    int tried = 0;
    for (int k : order) {
      if (outcomes[k].residual > config.tol_accept || tried >= 10) break;
      ++tried;
      if (auto s = refine(space, obj, outcomes[k].v, config)) {
        result.refined_exact = std::move(s);
        break;
      }
    }
    result.accepted = result.refined_exact.has_value();
    result.status = result.accepted ? SearchStatus::kAccepted : SearchStatus::kNumericalOnly;
  } else if (result.best_residual > config.tol_reject) {
    result.status = SearchStatus::kRejected;
  } else {
    result.status = SearchStatus::kInconclusive;
  }
  return result;
}

ProbeResult index_probe(const SymmetricSpace& space, Index cmax, SearchConfig config) {
  if (cmax < 1 || cmax >= space.dim_p())
    throw Error(ErrorCode::kInvalidConfig, "cmax must satisfy 1 <= cmax < dim p");
  ProbeResult probe;
  probe.rank = rank(space, config.seed).rank;
  for (Index c = 1; c <= cmax; ++c) {
    // No Lie triple system has codimension below the rank.
    if (c < probe.rank) {
      probe.skipped.push_back(c);
      continue;
    }
    config.codim = c;
    probe.runs.push_back(lts_search(space, config));
    if (probe.runs.back().accepted) {
      probe.index = c;
      break;
    }
  }
  return probe;
}

}  // namespace symspace
