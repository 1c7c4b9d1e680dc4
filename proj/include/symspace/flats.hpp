#pragma once

#include "symspace/triple.hpp"

namespace symspace {

struct Flat {
  SubspaceQ subspace;
  VectorQ regular_witness;  // C(regular_witness) = subspace
};

bool is_regular(const SymmetricSpace& space, const VectorQ& v, Index rank);
bool is_regular(const SymmetricSpace& space, const VectorQ& v);

/// Samples integer vectors until one is regular and returns its centralizer.
Flat random_maximal_flat(const SymmetricSpace& space, std::uint64_t seed, Index rank, int budget = 1000);
Flat random_maximal_flat(const SymmetricSpace& space, std::uint64_t seed);

/// Deterministic flat: greedily adds the first echelon basis vector of the running
/// joint centralizer. For the catalog models its restricted roots are rational.
Flat standard_flat(const SymmetricSpace& space);

struct RestrictedRoot {
  VectorQ exact;             // values on the flat basis (valid when the system is exact)
  Eigen::VectorXd value;     // same, in floating point
  Index multiplicity = 0;
};

struct RestrictedRootSystem {
  Flat flat;
  /// Roots come in pairs: roots[2i] and roots[2i+1] = -roots[2i].
  std::vector<RestrictedRoot> roots;
  /// Root hyperplanes in flat coordinates (one per line of roots).
  std::vector<SubspaceQ> hyperplanes;
  std::vector<Eigen::VectorXd> hyperplane_normals;
  std::vector<int> hyperplane_root;  // index into roots of a root defining each hyperplane
  MatrixQ flat_gram;  // inner product on the flat, flat coordinates
  Index weyl_order = 0;
  bool exact = false;

  Index rank() const { return flat.subspace.dim(); }
  Index multiplicity_sum() const;  // over positive roots
  bool irreducible() const;
  /// Indices of the hyperplanes containing u (u in flat coordinates).
  std::vector<int> j_signature(const VectorQ& u) const;
  std::vector<int> j_signature(const Eigen::VectorXd& u, double tol = 1e-7) const;
};

/// Joint eigen-decomposition of {ad(a)^2 : a in flat} on p, rationalized and
/// re-verified exactly when possible.
RestrictedRootSystem restricted_roots(const SymmetricSpace& space, const Flat& flat, std::uint64_t seed = 7);

struct CentralizerProfile {
  bool is_lts = false;
  bool z_in_abelian_part = false;
  Index rank_nz = 0;
  bool rank_matches = false;
  Index euclidean_dim = 0;
  std::optional<std::vector<int>> j_signature;
};

/// Structural facts about C(z); `roots` (optional) supplies J(z) when z lies in its flat.
CentralizerProfile centralizer_profile(const SymmetricSpace& space, const VectorQ& z, Index rank,
                                       const RestrictedRootSystem* roots = nullptr, std::uint64_t seed = 0);

struct TransversalResult {
  Flat flat;
  int trials = 0;
};

/// Maximal flat meeting W only in 0; throws kBudgetExhausted with the largest intersection seen.
TransversalResult transversal_flat(const SymmetricSpace& space, const SubspaceQ& w, Index rank, int budget,
                                   std::uint64_t seed);

}  // namespace symspace
