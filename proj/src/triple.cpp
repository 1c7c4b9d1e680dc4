#include "symspace/triple.hpp"

#include "symspace/orbits.hpp"

#include <cmath>

namespace symspace {

namespace {

void require_in_p(const SymmetricSpace& space, const SubspaceQ& w) {
  if (w.ambient_dim() != space.dim_p()) throw Error(ErrorCode::kNotInP, "subspace is not a subspace of p");
}

void require_lts(const SymmetricSpace& space, const SubspaceQ& w) {
  if (!is_lts(space, w)) throw Error(ErrorCode::kNotLts, "subspace is not a Lie triple system");
}

/// Measures the component normal to W: y = N^T G t, |n|^2 = y^T (N^T G N)^{-1} y.
struct NormalProbe {
  MatrixQ ntg;
  MatrixQ gram_inv;
  bool trivial = false;

  NormalProbe(const SymmetricSpace& space, const SubspaceQ& w) {
    const SubspaceQ normal = orthocomplement(w, space.form_p());
    if (normal.dim() == 0) {
      trivial = true;
      return;
    }
    ntg = multiply<Rational>(MatrixQ(normal.basis().transpose()), space.form_p().matrix());
    gram_inv = inverse<Rational>(multiply<Rational>(ntg, normal.basis()));
  }

  VectorQ coefficients(const VectorQ& t) const { return multiply<Rational>(ntg, t); }

  Rational norm_sq(const VectorQ& t) const {
    if (trivial) return Rational(0);
    const VectorQ y = coefficients(t);
    if (is_zero<Rational>(y)) return Rational(0);
    return y.dot(multiply<Rational>(gram_inv, y));
  }
};

}  // namespace

LtsResidual lts_residual(const SymmetricSpace& space, const SubspaceQ& w) {
  require_in_p(space, w);
  if (w.dim() == 0) throw Error(ErrorCode::kDegenerateSubspace, "Lie triple system test needs dim W >= 1");
  const NormalProbe probe(space, w);
  LtsResidual out;
  out.residual_sq = 0;
  if (!probe.trivial) {
    const MatrixQ& b = w.basis();
    for (Index i = 0; i < b.cols(); ++i)
      for (Index j = i + 1; j < b.cols(); ++j) {
        const VectorQ xy = space.bracket_pp(b.col(i), b.col(j));
        if (is_zero<Rational>(xy)) continue;
        for (Index l = 0; l < b.cols(); ++l) {
          const Rational sq = probe.norm_sq(space.act(xy, b.col(l)));
          if (sq > out.residual_sq) out.residual_sq = sq;
        }
      }
  }
  out.residual = std::sqrt(to_double(out.residual_sq));
  out.is_lts = out.residual_sq.is_zero();
  return out;
}

SubspaceQ bracket_span(const SymmetricSpace& space, const SubspaceQ& w) {
  require_in_p(space, w);
  IncrementalSpan<Rational> span(space.dim_k());
  const MatrixQ& b = w.basis();
  for (Index i = 0; i < b.cols() && span.dim() < space.dim_k(); ++i)
    for (Index j = i + 1; j < b.cols(); ++j) span.add(space.bracket_pp(b.col(i), b.col(j)));
  return SubspaceQ::span(span.basis());
}

bool is_lts(const SymmetricSpace& space, const SubspaceQ& w) {
  require_in_p(space, w);
  if (w.dim() == 0) throw Error(ErrorCode::kDegenerateSubspace, "Lie triple system test needs dim W >= 1");
  const NormalProbe probe(space, w);
  if (probe.trivial) return true;
  const SubspaceQ kw = bracket_span(space, w);
  for (Index a = 0; a < kw.dim(); ++a)
    for (Index l = 0; l < w.dim(); ++l)
      if (!is_zero<Rational>(probe.coefficients(space.act(kw.basis().col(a), w.basis().col(l))))) return false;
  return true;
}

SubspaceQ tangent_subalgebra(const SymmetricSpace& space, const SubspaceQ& w) {
  require_lts(space, w);
  const SubspaceQ kw = bracket_span(space, w);
  MatrixQ gens(space.dim_g(), kw.dim() + w.dim());
  for (Index a = 0; a < kw.dim(); ++a) gens.col(a) = space.k_to_g(kw.basis().col(a));
  for (Index a = 0; a < w.dim(); ++a) gens.col(kw.dim() + a) = space.p_to_g(w.basis().col(a));
  return SubspaceQ::span(gens);
}

SubspaceQ abelian_part(const SymmetricSpace& space, const SubspaceQ& w) {
  require_lts(space, w);
  const MatrixQ& b = w.basis();
  const Index m = b.cols(), dk = space.dim_k();
  MatrixQ stacked = MatrixQ::Zero(m * dk, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = i + 1; j < m; ++j) {
      const VectorQ c = space.bracket_pp(b.col(i), b.col(j));
      // coefficient of x_i in [x, w_j] and of x_j in [x, w_i]
      stacked.block(j * dk, i, dk, 1) = c;
      stacked.block(i * dk, j, dk, 1) = -c;
    }
  return SubspaceQ::span(multiply<Rational>(b, kernel<Rational>(stacked)));
}

SubspaceQ centralizer(const SymmetricSpace& space, const VectorQ& v) {
  return SubspaceQ::span(kernel<Rational>(space.ad_pk(v)));
}

SubspaceQ joint_centralizer(const SymmetricSpace& space, const MatrixQ& vectors, const SubspaceQ& within) {
  require_in_p(space, within);
  if (within.dim() == 0 || vectors.cols() == 0) return within;
  const Index dk = space.dim_k();
  MatrixQ stacked(vectors.cols() * dk, within.dim());
  for (Index s = 0; s < vectors.cols(); ++s)
    stacked.middleRows(s * dk, dk) = multiply<Rational>(space.ad_pk(vectors.col(s)), within.basis());
  return SubspaceQ::span(multiply<Rational>(within.basis(), kernel<Rational>(stacked)));
}

SubspaceQ stabilizer(const SymmetricSpace& space, const VectorQ& v) {
  return SubspaceQ::span(kernel<Rational>(space.ad_kp_of_p(v)));
}

bool is_abelian(const SymmetricSpace& space, const SubspaceQ& w) {
  require_in_p(space, w);
  const MatrixQ& b = w.basis();
  for (Index i = 0; i < b.cols(); ++i)
    for (Index j = i + 1; j < b.cols(); ++j)
      if (!is_zero<Rational>(space.bracket_pp(b.col(i), b.col(j)))) return false;
  return true;
}

RankResult greedy_rank(const SymmetricSpace& space, const SubspaceQ& w, std::uint64_t seed) {
  require_in_p(space, w);
  std::mt19937_64 rng(seed);
  IncrementalSpan<Rational> chosen(space.dim_p());
  SubspaceQ z = w;
  while (z.dim() > chosen.dim()) {
    VectorQ x;
    for (int attempt = 0;; ++attempt) {
      x = random_vector_in(z, rng);
      if (!chosen.contains(x)) break;
      if (attempt > 1000) throw Error(ErrorCode::kBudgetExhausted, "greedy rank: no fresh direction found");
    }
    chosen.add(x);
    z = joint_centralizer(space, MatrixQ(x), z);
  }
  RankResult out;
  out.rank = z.dim();
  out.witness = z;
  out.per_run = {out.rank};
  return out;
}

RankResult lts_rank(const SymmetricSpace& space, const SubspaceQ& w, std::uint64_t seed, int runs) {
  RankResult out;
  for (int r = 0; r < runs; ++r) {
    RankResult one = greedy_rank(space, w, derive_seed(seed, r));
    if (r == 0) out = one;
    else out.per_run.push_back(one.rank);
    out.rank = std::max(out.rank, one.rank);
  }
  out.stable = std::all_of(out.per_run.begin(), out.per_run.end(), [&](Index x) { return x == out.per_run.front(); });
  return out;
}

RankResult rank(const SymmetricSpace& space, std::uint64_t seed, int runs) {
  return lts_rank(space, SubspaceQ::full(space.dim_p()), seed, runs);
}

LtsReport analyze_lts(const SymmetricSpace& space, const SubspaceQ& w) {
  LtsReport out;
  out.subspace = w;
  const auto r = lts_residual(space, w);
  out.residual_sq = r.residual_sq;
  out.residual = r.residual;
  out.is_lts = r.is_lts;
  if (out.is_lts) {
    out.abelian_dim = abelian_part(space, w).dim();
    out.semisimple = out.abelian_dim == 0;
    out.tangent_algebra_dim = tangent_subalgebra(space, w).dim();
  }
  return out;
}

ComplementaryPairReport complementary_pair_analysis(const SymmetricSpace& space, const SubspaceQ& w) {
  require_in_p(space, w);
  if (w.dim() == 0 || w.dim() == space.dim_p())
    throw Error(ErrorCode::kDegenerateSubspace, "complementary pair needs 0 < dim W < dim p");
  require_lts(space, w);
  ComplementaryPairReport out;
  out.complement = orthocomplement(w, space.form_p());
  out.complement_residual = lts_residual(space, out.complement);
  out.complement_is_lts = out.complement_residual.is_lts;
  if (!out.complement_is_lts) return out;
  const SubspaceQ ab = abelian_part(space, out.complement);
  out.complement_abelian_dim = ab.dim();
  out.complement_semisimple = ab.dim() == 0;
  out.abelian_dim_one = ab.dim() == 1;
  if (ab.dim() >= 1) {
    const VectorQ v = ab.basis().col(0);
    const OrbitModel orbit = orbit_spaces(space, v);
    out.v = v;
    out.tangent_matches = orbit.tangent == w;
    out.normal_matches = orbit.normal == out.complement;
  }
  return out;
}

}  // namespace symspace
