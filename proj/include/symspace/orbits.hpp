#pragma once

#include "symspace/flats.hpp"

namespace symspace {

/// Isotropy orbit K.v through v in p.
struct OrbitModel {
  VectorQ v;
  SubspaceQ tangent;  // [k, v]
  SubspaceQ normal;   // orthocomplement of the tangent space
  Index dim = 0;
  bool normal_is_centralizer = false;
};

OrbitModel orbit_spaces(const SymmetricSpace& space, const VectorQ& v);

/// Normal part of [X, y] where [X, v] = x; x and y are tangent at v.
VectorQ second_fundamental_form(const SymmetricSpace& space, const VectorQ& v, const VectorQ& x, const VectorQ& y);

/// Shape operator A_xi in the echelon basis of the tangent space:
/// <A_xi x, y> = <alpha(x, y), xi>.
MatrixQ shape_operator(const SymmetricSpace& space, const VectorQ& v, const VectorQ& xi);

struct SliceData {
  SubspaceQ acting_algebra;  // subspace of k
  SubspaceQ normal;          // subspace of p it acts on
  Index image_dim = 0;
  bool trivial = true;
  bool transitive_on_sphere = false;
  std::vector<Index> orbit_dims;  // at the sampled unit normals
};

/// Action of k' = [W, W] on the normal space of the Lie triple system W.
SliceData slice_representation(const SymmetricSpace& space, const SubspaceQ& w, std::uint64_t seed = 0);
/// Action of k_v = {X in k : [X, v] = 0} on the normal space of K.v.
SliceData slice_representation(const SymmetricSpace& space, const VectorQ& v, std::uint64_t seed = 0);

/// True iff the reflection fixing nu_v(K.v) and negating T_v(K.v) normalizes ad(k) on p.
bool symmetric_submanifold_test(const SymmetricSpace& space, const VectorQ& v);

struct CurvatureData {
  std::vector<Eigen::VectorXd> normals;       // in p-coordinates
  std::vector<Eigen::VectorXd> flat_normals;  // in coordinates of the flat C(v)
  std::vector<Index> multiplicities;
  Index g = 0;  // number of distinct curvature normals
  Index m = 0;  // orbit dimension
  bool spans_flat = false;
  bool exact_confirmed = false;  // eigenspace dimensions confirmed by the characteristic polynomial
  bool rank_inequality = false;  // 2 rank + 1 <= dim p
};

CurvatureData curvature_normals(const SymmetricSpace& space, const VectorQ& v, Index rank, std::uint64_t seed = 0);

struct SuborbitDims {
  Index d_sub = 0;  // dim [k', v], k' = [W, W]
  Index d = 0;      // dim [k, v]
  bool strict = false;
};

SuborbitDims suborbit_dimension_check(const SymmetricSpace& space, const SubspaceQ& w, const VectorQ& v);

struct FocalExtension {
  bool found = false;
  VectorQ xi;
  Index dim_before = 0;  // dim C(v)
  Index dim_after = 0;   // dim C(v + xi)
};

/// For v in the flat of `roots`, looks for xi in the abelian part of C(v) with C(v) strictly inside C(v + xi).
FocalExtension focal_extension(const SymmetricSpace& space, const RestrictedRootSystem& roots, const VectorQ& v);

/// Coefficients (constant term first) of the characteristic polynomial det(x I - m).
std::vector<Rational> characteristic_polynomial(const MatrixQ& m);
/// Multiplicities of the distinct roots of a polynomial over Q, sorted ascending.
std::vector<Index> root_multiplicities(const std::vector<Rational>& poly);

}  // namespace symspace
