#include "oracles.hpp"

#include "symspace/flats.hpp"

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include <random>
#include <numeric>
#include <set>

using namespace symspace;
using oracle::diag;

namespace {

// Brute-force oracle: distinct nonzero eigenvalues of ad(a)^2 on p for a generic a in the flat,
// with multiplicities, computed in floating point from the symmetric matrix in orthonormal coordinates.
std::vector<int> eigen_multiplicities(const SymmetricSpace& s, const SubspaceQ& flat) {
  std::mt19937_64 rng(99);
  VectorQ a = VectorQ::Zero(s.dim_p());
  for (Index j = 0; j < flat.dim(); ++j) a += Rational(static_cast<int>(rng() % 97) + 3) * VectorQ(flat.basis().col(j));
  const Eigen::MatrixXd q = to_double(MatrixQ(s.ad_kp_of_p(a) * s.ad_pk(a)));
  const Eigen::MatrixXd g = to_double(s.form_p().matrix());
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  const Eigen::MatrixXd l = llt.matrixL();
  const Eigen::MatrixXd sym = l.transpose() * q * l.transpose().inverse();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (sym + sym.transpose()));
  std::vector<int> mult;
  double last = 0.0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double ev = es.eigenvalues()(i);
    if (std::abs(ev) < 1e-8) continue;
    if (!mult.empty() && std::abs(ev - last) < 1e-6 * std::max(1.0, std::abs(ev))) ++mult.back();
    else mult.push_back(1);
    last = ev;
  }
  return mult;
}

template <typename F>
void expect_code(ErrorCode code, F&& f) {
  try {
    f();
    ADD_FAILURE() << "no error thrown";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(Regular, Examples) {
  const Model m = build_space("sl_R:3");
  EXPECT_FALSE(is_regular(m, VectorQ::Zero(5)));
  EXPECT_TRUE(is_regular(m, m.p_vector(diag({1, 0, -1}))));
  EXPECT_FALSE(is_regular(m, m.p_vector(diag({1, 1, -2}))));
}

TEST(RandomFlat, Dimensions) {
  const Model sl3 = build_space("sl_R:3");
  const Model h4 = build_space("so:1,4");
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Flat f = random_maximal_flat(sl3, seed);
    EXPECT_EQ(f.subspace.dim(), 2);
    EXPECT_TRUE(is_abelian(sl3, f.subspace));
    EXPECT_EQ(random_maximal_flat(h4, seed).subspace.dim(), 1);
  }
}

TEST(RandomFlat, FiftySeedsOnSo33) {
  const Model m = build_space("so:3,3");
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Flat f = random_maximal_flat(m, seed);
    EXPECT_EQ(f.subspace.dim(), 3);
    EXPECT_TRUE(is_abelian(m, f.subspace));
    EXPECT_EQ(centralizer(m, f.regular_witness), f.subspace);
  }
}

TEST(RestrictedRoots, A2) {
  const Model m = build_space("sl_R:3");
  const auto rs = restricted_roots(m, standard_flat(m));
  EXPECT_TRUE(rs.exact);
  EXPECT_EQ(rs.roots.size(), 6u);
  EXPECT_EQ(rs.hyperplanes.size(), 3u);
  EXPECT_EQ(rs.weyl_order, 6);
  EXPECT_EQ(eigen_multiplicities(m, standard_flat(m).subspace), (std::vector<int>{1, 1, 1}));
  // A random (irrational-root) flat gives the same float data.
  const auto rr = restricted_roots(m, random_maximal_flat(m, 3));
  EXPECT_EQ(rr.roots.size(), 6u);
  EXPECT_EQ(rr.weyl_order, 6);
}

TEST(RestrictedRoots, B2) {
  const Model m = build_space("so:2,3");
  const auto rs = restricted_roots(m, standard_flat(m));
  EXPECT_EQ(rs.roots.size(), 8u);
  EXPECT_EQ(rs.hyperplanes.size(), 4u);
  EXPECT_EQ(rs.weyl_order, 8);
  const auto oracle_mult = eigen_multiplicities(m, standard_flat(m).subspace);
  EXPECT_EQ(std::accumulate(oracle_mult.begin(), oracle_mult.end(), 0), 4);
  EXPECT_EQ(oracle_mult.size(), 4u);
}

TEST(RestrictedRoots, RankOneHyperbolic) {
  for (int k = 2; k <= 6; ++k) {
    const Model m = build_space("so:1," + std::to_string(k));
    const auto rs = restricted_roots(m, standard_flat(m));
    ASSERT_EQ(rs.roots.size(), 2u);
    EXPECT_EQ(rs.roots[0].multiplicity, k - 1);
    EXPECT_EQ(rs.hyperplanes.size(), 1u);
    EXPECT_EQ(rs.hyperplanes[0].dim(), 0);
    EXPECT_EQ(rs.weyl_order, 2);
  }
}

TEST(RestrictedRoots, MultiplicitiesFillP) {
  for (const auto& s : catalog_specifiers()) {
    const Model m = build_space(s);
    const auto rs = restricted_roots(m, standard_flat(m));
    EXPECT_TRUE(rs.exact) << s;
    EXPECT_EQ(rs.multiplicity_sum(), m.dim_p() - rs.rank()) << s;
    for (std::size_t i = 0; i + 1 < rs.roots.size(); i += 2)
      EXPECT_EQ(rs.roots[i].exact, VectorQ(-rs.roots[i + 1].exact)) << s;
  }
}

TEST(CentralizerProfile, RegularVector) {
  const Model m = build_space("su:2,2");
  const auto rs = restricted_roots(m, standard_flat(m));
  const VectorQ z = rs.flat.regular_witness;
  const auto p = centralizer_profile(m, z, 2, &rs);
  EXPECT_TRUE(p.is_lts);
  EXPECT_EQ(p.rank_nz, 2);
  EXPECT_EQ(p.euclidean_dim, 2);
  ASSERT_TRUE(p.j_signature.has_value());
  EXPECT_TRUE(p.j_signature->empty());
}

TEST(CentralizerProfile, VeroneseVector) {
  const Model m = build_space("sl_R:3");
  const auto rs = restricted_roots(m, standard_flat(m));
  const auto p = centralizer_profile(m, m.p_vector(diag({1, 1, -2})), 2, &rs);
  EXPECT_TRUE(p.is_lts);
  EXPECT_TRUE(p.z_in_abelian_part);
  EXPECT_EQ(p.rank_nz, 2);
  EXPECT_EQ(p.euclidean_dim, 1);
  ASSERT_TRUE(p.j_signature.has_value());
  EXPECT_EQ(p.j_signature->size(), 1u);
}

TEST(CentralizerProfile, ZeroRejected) {
  const Model m = build_space("sl_R:3");
  expect_code(ErrorCode::kZeroVector, [&] { centralizer_profile(m, VectorQ::Zero(5), 2); });
}

TEST(CentralizerProfile, JSignatureDeterminesCentralizer) {
  for (const char* s : {"sl_R:4", "so:2,3", "g2_split"}) {
    const Model m = build_space(s);
    const auto rs = restricted_roots(m, standard_flat(m));
    ASSERT_TRUE(rs.exact);
    std::mt19937_64 rng(21);
    int equal_pairs = 0;
    for (int t = 0; t < 2000 && equal_pairs < 100; ++t) {
      // Sample inside a random intersection of root hyperplanes (flat coordinates).
      SubspaceQ l = SubspaceQ::full(rs.rank());
      for (const auto& h : rs.hyperplanes)
        if (rng() % 3 == 0) l = intersect(l, h);
      if (l.dim() == 0) continue;
      auto sample = [&] {
        VectorQ u;
        do u = random_vector_in(l, rng, 4);
        while (is_zero<Rational>(u));
        return u;
      };
      const VectorQ u = sample(), u2 = sample();
      const VectorQ z = multiply<Rational>(rs.flat.subspace.basis(), u);
      const VectorQ z2 = multiply<Rational>(rs.flat.subspace.basis(), u2);
      const bool same_j = rs.j_signature(u) == rs.j_signature(u2);
      const bool same_c = centralizer(m, z) == centralizer(m, z2);
      EXPECT_EQ(same_j, same_c) << s;
      if (same_j) ++equal_pairs;
    }
    EXPECT_GE(equal_pairs, 100) << s;
  }
}

TEST(Transversal, VeroneseNormal) {
  const Model m = build_space("sl_R:3");
  const SubspaceQ w = centralizer(m, m.p_vector(diag({1, 1, -2})));
  const auto t = transversal_flat(m, w, 2, 1000, 1);
  EXPECT_EQ(intersect(t.flat.subspace, w).dim(), 0);
  EXPECT_EQ(t.flat.subspace.dim(), 2);
  EXPECT_GE(t.trials, 1);
  EXPECT_LE(t.trials, 5);
}

TEST(Transversal, GeodesicAcrossHyperbolicPlane) {
  const Model m = build_space("so:1,3");
  const SubspaceQ w = oracle::p_span(m, {oracle::sym(4, 0, 1), oracle::sym(4, 0, 2)});
  const auto t = transversal_flat(m, w, 1, 1000, 2);
  EXPECT_EQ(intersect(t.flat.subspace, w).dim(), 0);
}

TEST(Transversal, FullPRejected) {
  const Model m = build_space("sl_R:3");
  expect_code(ErrorCode::kDegenerateSubspace, [&] { transversal_flat(m, SubspaceQ::full(5), 2, 10, 0); });
}

TEST(Transversal, BudgetExhaustionReportsIntersection) {
  // A subspace containing a whole flat can never be transversal: the diagonal flat plus two more
  // directions leave codim 1 < rank 2.
  const Model m = build_space("sl_R:3");
  MatrixQ b = MatrixQ::Identity(5, 4);
  try {
    transversal_flat(m, SubspaceQ::span(b), 2, 20, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBudgetExhausted);
    EXPECT_NE(std::string(e.what()).find("largest intersection"), std::string::npos);
  }
}
