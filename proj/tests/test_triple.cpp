#include "oracles.hpp"

#include "symspace/certificate.hpp"
#include "symspace/orbits.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace symspace;
using oracle::diag;
using oracle::sym;

namespace {

// Brute-force closure test in the defining representation.
bool matrix_closure(const Model& m, const SubspaceQ& w) {
  for (Index i = 0; i < w.dim(); ++i)
    for (Index j = 0; j < w.dim(); ++j)
      for (Index l = 0; l < w.dim(); ++l) {
        const MatrixQ x = oracle::matrix_of_p(m, w.basis().col(i));
        const MatrixQ y = oracle::matrix_of_p(m, w.basis().col(j));
        const MatrixQ z = oracle::matrix_of_p(m, w.basis().col(l));
        if (!w.contains(m.p_vector(oracle::commutator(oracle::commutator(x, y), z)))) return false;
      }
  return true;
}

SubspaceQ rh2_plane(const Model& sl3) { return oracle::p_span(sl3, {diag({1, -1, 0}), sym(3, 0, 1)}); }

SubspaceQ diagonal_flat(const Model& sl3) { return oracle::p_span(sl3, {diag({1, -1, 0}), diag({0, 1, -1})}); }

template <typename F>
void expect_code(ErrorCode code, F&& f) {
  try {
    f();
    ADD_FAILURE() << "no error thrown";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

// Rational element of K acting on p: Cayley transform of an antisymmetric generator.
MatrixQ cayley(const MatrixQ& s) {
  const MatrixQ id = MatrixQ::Identity(s.rows(), s.cols());
  return MatrixQ(inverse<Rational>(MatrixQ(id - s)) * (id + s));
}

}  // namespace

TEST(LtsResidual, LinesAreTriples) {
  const Model m = build_space("sl_R:3");
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    const auto r = lts_residual(m, SubspaceQ::line(random_nonzero_integer_vector(5, rng)));
    EXPECT_TRUE(r.is_lts);
    EXPECT_TRUE(r.residual_sq.is_zero());
  }
}

TEST(LtsResidual, HyperbolicHyperplane) {
  const Model m = build_space("so:1,4");
  const SubspaceQ w = oracle::p_span(m, {sym(5, 0, 1), sym(5, 0, 2), sym(5, 0, 3)});
  EXPECT_TRUE(matrix_closure(m, w));
  const auto r = lts_residual(m, w);
  EXPECT_TRUE(r.is_lts);
  EXPECT_EQ(r.residual, 0.0);
}

TEST(LtsResidual, RandomPlanesInSl3AreNotTriples) {
  const Model m = build_space("sl_R:3");
  for (int seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    MatrixQ b(5, 2);
    b.col(0) = random_nonzero_integer_vector(5, rng);
    b.col(1) = random_nonzero_integer_vector(5, rng);
    const SubspaceQ w = SubspaceQ::span(b);
    if (w.dim() != 2) continue;
    const auto r = lts_residual(m, w);
    EXPECT_GT(r.residual, 0.0) << seed;
    EXPECT_FALSE(matrix_closure(m, w)) << seed;
  }
}

TEST(LtsResidual, SubspaceOutsidePRejected) {
  const Model m = build_space("sl_R:3");
  expect_code(ErrorCode::kNotInP, [&] { lts_residual(m, SubspaceQ::full(8)); });
}

TEST(TangentSubalgebra, FlatGivesItself) {
  const Model m = build_space("sl_R:3");
  const SubspaceQ g = tangent_subalgebra(m, diagonal_flat(m));
  EXPECT_EQ(g.dim(), 2);
  for (Index i = 0; i < g.dim(); ++i)
    for (Index j = 0; j < g.dim(); ++j)
      EXPECT_TRUE(is_zero<Rational>(bracket(m.algebra(), VectorQ(g.basis().col(i)), VectorQ(g.basis().col(j)))));
}

TEST(TangentSubalgebra, HyperbolicPlaneGivesSl2) {
  const Model m = build_space("sl_R:3");
  const SubspaceQ g = tangent_subalgebra(m, rh2_plane(m));
  EXPECT_EQ(g.dim(), 3);
  for (Index i = 0; i < g.dim(); ++i)
    for (Index j = 0; j < g.dim(); ++j) {
      const MatrixQ c = oracle::commutator(m.matrix_of(g.basis().col(i)), m.matrix_of(g.basis().col(j)));
      EXPECT_TRUE(g.contains(*m.coordinates_of(c)));
    }
}

TEST(TangentSubalgebra, FullPGivesG) {
  for (const auto& s : catalog_specifiers()) {
    const Model m = build_space(s);
    EXPECT_EQ(tangent_subalgebra(m, SubspaceQ::full(m.dim_p())).dim(), m.dim_g()) << s;
  }
}

TEST(TangentSubalgebra, RejectsNonTriples) {
  const Model m = build_space("sl_R:3");
  MatrixQ b(5, 2);
  b << 1, 0, 0, 0, 0, 1, 1, 0, 0, 1;
  expect_code(ErrorCode::kNotLts, [&] { tangent_subalgebra(m, SubspaceQ::span(b)); });
}

TEST(AbelianPart, Examples) {
  const Model m = build_space("sl_R:3");
  EXPECT_EQ(abelian_part(m, diagonal_flat(m)), diagonal_flat(m));
  const VectorQ v = m.p_vector(diag({1, 1, -2}));
  const SubspaceQ ab = abelian_part(m, centralizer(m, v));
  EXPECT_EQ(ab, SubspaceQ::line(v));
  EXPECT_EQ(abelian_part(m, rh2_plane(m)).dim(), 0);
}

TEST(Centralizer, Examples) {
  const Model m = build_space("sl_R:3");
  EXPECT_EQ(centralizer(m, VectorQ::Zero(5)), SubspaceQ::full(5));
  EXPECT_EQ(centralizer(m, m.p_vector(diag({1, 0, -1}))), diagonal_flat(m));
  const SubspaceQ c = centralizer(m, m.p_vector(diag({1, 1, -2})));
  EXPECT_EQ(c.dim(), 3);
  // Oracle: kernel of x -> [v, x] from matrix commutators, by float rank.
  MatrixQ images(9, 5);
  for (Index i = 0; i < 5; ++i) {
    const MatrixQ c2 = oracle::commutator(diag({1, 1, -2}), oracle::matrix_of_p(m, VectorQ::Unit(5, i)));
    for (Index r = 0; r < 9; ++r) images(r, i) = c2(r / 3, r % 3);
  }
  EXPECT_EQ(5 - oracle::float_rank(images), 3);
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(build_space("sl_R:3")).rank, 2);
  for (int k = 3; k <= 5; ++k) EXPECT_EQ(rank(build_space("so:3," + std::to_string(k))).rank, 3);
  EXPECT_EQ(rank(build_space("g2_split")).rank, 2);
}

TEST(Rank, WitnessIsSelfCentralizing) {
  for (const char* s : {"sl_R:4", "so:2,4", "su:2,2", "sp_R:2", "g2_split"}) {
    const Model m = build_space(s);
    const RankResult r = rank(m, 9);
    EXPECT_TRUE(is_abelian(m, r.witness)) << s;
    EXPECT_EQ(joint_centralizer(m, r.witness.basis(), SubspaceQ::full(m.dim_p())), r.witness) << s;
  }
}

TEST(ComplementaryPair, VeroneseTangent) {
  const Model m = build_space("sl_R:3");
  const SubspaceQ tangent = oracle::p_span(m, {sym(3, 0, 2), sym(3, 1, 2)});
  const auto rep = complementary_pair_analysis(m, tangent);
  EXPECT_TRUE(rep.complement_is_lts);
  EXPECT_FALSE(rep.complement_semisimple);
  EXPECT_EQ(rep.complement_abelian_dim, 1);
  ASSERT_TRUE(rep.v.has_value());
  EXPECT_EQ(SubspaceQ::line(*rep.v), SubspaceQ::line(m.p_vector(diag({1, 1, -2}))));
  EXPECT_TRUE(rep.tangent_matches);
  EXPECT_TRUE(rep.normal_matches);
  EXPECT_TRUE(rep.abelian_dim_one);
}

TEST(ComplementaryPair, FlatComplementIsNotATriple) {
  const Model m = build_space("sl_R:3");
  const auto rep = complementary_pair_analysis(m, diagonal_flat(m));
  EXPECT_FALSE(rep.complement_is_lts);
  EXPECT_GT(rep.complement_residual.residual, 0.0);
}

TEST(ComplementaryPair, DegenerateInputs) {
  const Model m = build_space("sl_R:3");
  expect_code(ErrorCode::kDegenerateSubspace, [&] { complementary_pair_analysis(m, SubspaceQ(5)); });
  expect_code(ErrorCode::kDegenerateSubspace, [&] { complementary_pair_analysis(m, SubspaceQ::full(5)); });
}

TEST(Properties, KEquivariance) {
  // Rational elements of K from Cayley transforms of k, acting by conjugation.
  for (const char* pair : {"sl3R_centralizer", "so2k_block", "chk_hyperplane"}) {
    const Certificate cert = generate_certificate(pair);
    const Model m = build_space(cert.space);
    const SubspaceQ w = certified_subspace(m, cert);
    ASSERT_TRUE(is_lts(m, w));
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
      const VectorQ x = random_integer_vector(m.dim_k(), rng, 2);
      const MatrixQ s = m.matrix_of(m.k_to_g(x));
      const MatrixQ c = cayley(MatrixQ(s / Rational(3)));
      const MatrixQ cinv = inverse<Rational>(c);
      MatrixQ moved(m.dim_p(), w.dim());
      for (Index j = 0; j < w.dim(); ++j)
        moved.col(j) = m.p_vector(MatrixQ(c * oracle::matrix_of_p(m, w.basis().col(j)) * cinv));
      const SubspaceQ gw = SubspaceQ::span(moved);
      EXPECT_EQ(gw.dim(), w.dim());
      EXPECT_TRUE(lts_residual(m, gw).is_lts) << pair;
    }
  }
}

TEST(Properties, CentralizersAreTriplesContainingTheirVector) {
  for (const char* s : {"sl_R:4", "so:2,3", "su:1,3", "g2_split"}) {
    const Model m = build_space(s);
    std::mt19937_64 rng(13);
    for (int t = 0; t < 10; ++t) {
      const VectorQ v = random_nonzero_integer_vector(m.dim_p(), rng, 2);
      const SubspaceQ c = centralizer(m, v);
      ASSERT_TRUE(is_lts(m, c)) << s;
      const SubspaceQ ab = abelian_part(m, c);
      EXPECT_TRUE(ab.contains(v)) << s;
      EXPECT_TRUE(is_abelian(m, ab)) << s;
      EXPECT_TRUE(is_lts(m, ab)) << s;
    }
  }
}

TEST(Properties, RankIsCodimensionOfRegularOrbit) {
  for (const char* s : {"sl_R:3", "sp_R:2", "su:2,3"}) {
    const Model m = build_space(s);
    const Index r = rank(m).rank;
    const Flat f = random_maximal_flat(m, 4);
    EXPECT_EQ(r, m.dim_p() - orbit_spaces(m, f.regular_witness).tangent.dim()) << s;
  }
}

TEST(AnalyzeLts, ReportFields) {
  const Model m = build_space("sl_R:3");
  const auto rep = analyze_lts(m, centralizer(m, m.p_vector(diag({1, 1, -2}))));
  EXPECT_TRUE(rep.is_lts);
  EXPECT_EQ(rep.abelian_dim, 1);
  EXPECT_FALSE(rep.semisimple);
  EXPECT_EQ(rep.tangent_algebra_dim, 3 + 1);  // so(2) + p'
  const auto rh2 = analyze_lts(m, rh2_plane(m));
  EXPECT_TRUE(rh2.semisimple);
  EXPECT_EQ(rh2.tangent_algebra_dim, 3);
}
