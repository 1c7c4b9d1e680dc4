#pragma once

#include "symspace/cartan.hpp"

#include <random>

namespace symspace {

/// Exact model of a noncompact symmetric space at the level of g = k + p.
/// Vectors of p and k are coordinate vectors over the echelon bases of the
/// Cartan eigenspaces; `p_to_g` / `g_to_p` convert to coordinates of g.
class SymmetricSpace {
 public:
  SymmetricSpace() = default;
  SymmetricSpace(LieAlgebraQ algebra, CartanDecompositionQ cartan);

  const LieAlgebraQ& algebra() const { return algebra_; }
  const CartanDecompositionQ& cartan() const { return cartan_; }
  Index dim_g() const { return algebra_.dim(); }
  Index dim_k() const { return cartan_.k_space.dim(); }
  Index dim_p() const { return cartan_.p_space.dim(); }

  const BilinearForm<Rational>& form_p() const { return form_p_; }
  const BilinearForm<Rational>& form_k() const { return form_k_; }
  Rational inner_p(const VectorQ& x, const VectorQ& y) const { return form_p_(x, y); }

  VectorQ bracket_pp(const VectorQ& x, const VectorQ& y) const;
  VectorQ act(const VectorQ& X, const VectorQ& y) const;
  VectorQ bracket_kk(const VectorQ& X, const VectorQ& Y) const;
  /// [[x, y], z] for x, y, z in p.
  VectorQ triple(const VectorQ& x, const VectorQ& y, const VectorQ& z) const;

  /// Matrix of y -> [X, y] on p, for X in k.
  MatrixQ ad_kp(const VectorQ& X) const;
  /// Matrix of y -> [x, y] from p to k, for x in p.
  MatrixQ ad_pk(const VectorQ& x) const;
  /// Matrix of Y -> [x, Y] from k to p, for x in p.
  MatrixQ ad_kp_of_p(const VectorQ& x) const;

  const Terms<Rational>& pp_terms(Index i, Index j) const { return pp_[i * dim_p() + j]; }
  const Terms<Rational>& kp_terms(Index i, Index j) const { return kp_[i * dim_p() + j]; }

  VectorQ p_to_g(const VectorQ& x) const;
  VectorQ k_to_g(const VectorQ& X) const;
  /// Coordinates in p of a vector of g; empty if the vector is not in p.
  std::optional<VectorQ> g_to_p(const VectorQ& v) const;
  std::optional<VectorQ> g_to_k(const VectorQ& v) const;

 private:
  void check_p(Index n) const;
  void check_k(Index n) const;

  LieAlgebraQ algebra_;
  CartanDecompositionQ cartan_;
  BilinearForm<Rational> form_p_;
  BilinearForm<Rational> form_k_;
  std::vector<Terms<Rational>> pp_;
  std::vector<Terms<Rational>> kp_;
  std::vector<Terms<Rational>> kk_;
};

/// Integer coordinates drawn uniformly from [-range, range].
VectorQ random_integer_vector(Index n, std::mt19937_64& rng, int range = 10);
VectorQ random_nonzero_integer_vector(Index n, std::mt19937_64& rng, int range = 10);

/// Independent seed for run `run` of a seeded computation (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, int run);

/// Random vector of a subspace: integer combination of its basis.
VectorQ random_vector_in(const SubspaceQ& s, std::mt19937_64& rng, int range = 10);

/// Squared norm of the component of `v` orthogonal to `w` (form restricted to the ambient).
Rational normal_component_sq(const SubspaceQ& w, const BilinearForm<Rational>& form, const VectorQ& v);

/// Orthogonal projection onto `w`.
MatrixQ orthogonal_projector(const SubspaceQ& w, const BilinearForm<Rational>& form);

}  // namespace symspace
