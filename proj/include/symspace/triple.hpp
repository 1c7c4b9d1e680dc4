#pragma once

#include "symspace/symmetric_space.hpp"

namespace symspace {

struct LtsResidual {
  Rational residual_sq;  // exact squared residual
  double residual = 0.0;
  bool is_lts = false;
};

/// Largest norm, over basis triples, of the part of [[x,y],z] orthogonal to W.
/// W is a subspace of p (p-coordinates).
LtsResidual lts_residual(const SymmetricSpace& space, const SubspaceQ& w);
bool is_lts(const SymmetricSpace& space, const SubspaceQ& w);

/// [W, W] as a subspace of k (k-coordinates).
SubspaceQ bracket_span(const SymmetricSpace& space, const SubspaceQ& w);

/// [W, W] + W as a subspace of g; throws unless W is a Lie triple system.
SubspaceQ tangent_subalgebra(const SymmetricSpace& space, const SubspaceQ& w);

/// {v in W : [v, W] = 0}; throws unless W is a Lie triple system.
SubspaceQ abelian_part(const SymmetricSpace& space, const SubspaceQ& w);

/// {w in p : [v, w] = 0}.
SubspaceQ centralizer(const SymmetricSpace& space, const VectorQ& v);

/// {w in `within` : [s, w] = 0 for every column s}.
SubspaceQ joint_centralizer(const SymmetricSpace& space, const MatrixQ& vectors, const SubspaceQ& within);

/// {X in k : [X, v] = 0}.
SubspaceQ stabilizer(const SymmetricSpace& space, const VectorQ& v);

bool is_abelian(const SymmetricSpace& space, const SubspaceQ& w);

struct RankResult {
  Index rank = 0;
  SubspaceQ witness;           // maximal abelian subspace
  std::vector<Index> per_run;  // rank found by each seeded run
  bool stable = true;          // all runs agree
};

/// Greedy maximal abelian subspace inside W (W = p gives the rank of the space).
RankResult greedy_rank(const SymmetricSpace& space, const SubspaceQ& w, std::uint64_t seed);

/// Rank of the space: `runs` greedy runs with derived seeds; witness from the first run.
RankResult rank(const SymmetricSpace& space, std::uint64_t seed = 0, int runs = 5);

/// Rank of the Lie triple system W (dimension of a maximal abelian subspace of W).
RankResult lts_rank(const SymmetricSpace& space, const SubspaceQ& w, std::uint64_t seed = 0, int runs = 1);

struct LtsReport {
  SubspaceQ subspace;
  Rational residual_sq;
  double residual = 0.0;
  bool is_lts = false;
  Index abelian_dim = 0;
  bool semisimple = false;
  Index tangent_algebra_dim = 0;
};

LtsReport analyze_lts(const SymmetricSpace& space, const SubspaceQ& w);

struct ComplementaryPairReport {
  SubspaceQ complement;
  LtsResidual complement_residual;
  bool complement_is_lts = false;
  Index complement_abelian_dim = 0;
  bool complement_semisimple = false;
  /// Filled when the complement is a non-semisimple LTS with one-dimensional abelian part.
  std::optional<VectorQ> v;
  bool tangent_matches = false;  // T_v(K.v) = W
  bool normal_matches = false;   // nu_v(K.v) = W-perp
  bool abelian_dim_one = false;
};

ComplementaryPairReport complementary_pair_analysis(const SymmetricSpace& space, const SubspaceQ& w);

}  // namespace symspace
