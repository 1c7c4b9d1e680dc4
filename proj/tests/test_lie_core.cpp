#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace symspace;
using oracle::commutator;
using oracle::diag;
using oracle::unit;

namespace {

VectorQ g_coords(const Model& m, const MatrixQ& x) {
  auto c = m.coordinates_of(x);
  EXPECT_TRUE(c.has_value());
  return *c;
}

VectorQ random_g(Index n, std::mt19937_64& rng) { return random_integer_vector(n, rng, 6); }

}  // namespace

TEST(Bracket, SelfBracketVanishes) {
  const Model m = build_space("sl_R:3");
  std::mt19937_64 rng(1);
  const VectorQ x = random_g(m.dim_g(), rng);
  EXPECT_TRUE(is_zero<Rational>(bracket(m.algebra(), x, x)));
}

TEST(Bracket, DiagonalActsOnElementaryMatrix) {
  const Model m = build_space("sl_R:3");
  const MatrixQ h = diag({1, -1, 0});
  const MatrixQ e = unit(3, 0, 1);
  const VectorQ got = bracket(m.algebra(), g_coords(m, h), g_coords(m, e));
  EXPECT_EQ(m.matrix_of(got), MatrixQ(2 * e));
  EXPECT_EQ(m.matrix_of(got), commutator(h, e));
}

TEST(Bracket, AntisymmetricAndMatchesCommutators) {
  for (const char* spec : {"sl_R:3", "so:2,3", "su:1,2", "sp:1,1"}) {
    const Model m = build_space(spec);
    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
      const VectorQ x = random_g(m.dim_g(), rng), y = random_g(m.dim_g(), rng);
      const VectorQ xy = bracket(m.algebra(), x, y);
      EXPECT_EQ(xy, VectorQ(-bracket(m.algebra(), y, x))) << spec;
      EXPECT_EQ(m.matrix_of(xy), commutator(m.matrix_of(x), m.matrix_of(y))) << spec;
    }
  }
}

TEST(Bracket, DimensionMismatchThrows) {
  const Model m = build_space("sl_R:3");
  try {
    bracket(m.algebra(), VectorQ(VectorQ::Zero(3)), VectorQ(VectorQ::Zero(8)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(Killing, AbelianAlgebraHasZeroForm) {
  const LieAlgebraQ a(4, "abelian");
  EXPECT_TRUE(is_zero<Rational>(killing_form(a).matrix()));
}

TEST(Killing, Sl2CartanElement) {
  // Oracle: ad H on the basis (H, E, F) of sl2 from 2x2 commutators.
  const MatrixQ h = diag({1, -1}), e = unit(2, 0, 1), f = unit(2, 1, 0);
  const std::vector<MatrixQ> basis{h, e, f};
  MatrixQ adh(3, 3);
  for (int j = 0; j < 3; ++j) {
    const MatrixQ c = commutator(h, basis[j]);
    // c = a H + b E + d F with a = c(0,0), b = c(0,1), d = c(1,0).
    adh(0, j) = c(0, 0);
    adh(1, j) = c(0, 1);
    adh(2, j) = c(1, 0);
  }
  EXPECT_EQ(oracle::trace(adh * adh), Rational(8));

  const Model m = build_space("sl_R:2");
  const VectorQ hv = g_coords(m, h);
  EXPECT_EQ(killing_form(m.algebra())(hv, hv), Rational(8));
}

TEST(Killing, Sl3IsSixTimesTrace) {
  const Model m = build_space("sl_R:3");
  const auto b = killing_form(m.algebra());
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const VectorQ x = random_g(m.dim_g(), rng), y = random_g(m.dim_g(), rng);
    EXPECT_EQ(b(x, y), Rational(6) * oracle::trace(m.matrix_of(x) * m.matrix_of(y)));
  }
}

TEST(Killing, AdInvariantOnBasisTriples) {
  for (const char* spec : {"sl_R:3", "so:2,3", "g2_split", "sl_C:2"}) {
    const Model m = build_space(spec);
    const auto b = killing_form(m.algebra());
    const Index n = m.dim_g();
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        for (Index k = 0; k < n; ++k) {
          const VectorQ x = VectorQ::Unit(n, i), y = VectorQ::Unit(n, j), z = VectorQ::Unit(n, k);
          ASSERT_TRUE((b(bracket(m.algebra(), x, y), z) + b(y, bracket(m.algebra(), x, z))).is_zero()) << spec;
        }
  }
}

TEST(Cartan, Sl3Dimensions) {
  const Model m = build_space("sl_R:3");
  EXPECT_EQ(m.dim_k(), 3);
  EXPECT_EQ(m.dim_p(), 5);
  // theta is -transpose on the defining matrices.
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    const VectorQ x = random_g(m.dim_g(), rng);
    EXPECT_EQ(m.matrix_of(multiply<Rational>(m.cartan().theta, x)), MatrixQ(-m.matrix_of(x).transpose()));
  }
}

TEST(Cartan, So23PDimension) { EXPECT_EQ(build_space("so:2,3").dim_p(), 6); }

TEST(Cartan, IdentityIsNotACartanInvolution) {
  const Model m = build_space("sl_R:2");
  try {
    cartan_decompose(m.algebra(), MatrixQ(MatrixQ::Identity(3, 3)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFormNotPositiveDefinite);
  }
}

TEST(Cartan, NonAutomorphismRejected) {
  const Model m = build_space("sl_R:3");
  MatrixQ theta = m.cartan().theta;
  const Index last = m.dim_g() - 1;
  theta(last, last) = -theta(last, last);
  try {
    cartan_decompose(m.algebra(), theta);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotAnAutomorphism);
  }
}

TEST(Cartan, CatalogJacobiAndInclusionsExact) {
  for (const auto& spec : catalog_specifiers()) {
    const Model m = build_space(spec);
    EXPECT_TRUE(jacobi_residual(m.algebra()).is_zero()) << spec;
    const auto& c = m.cartan();
    for (Index i = 0; i < c.k_space.dim(); ++i) {
      const VectorQ x = c.k_space.basis().col(i);
      for (Index j = 0; j < c.k_space.dim(); ++j)
        ASSERT_TRUE(c.k_space.contains(bracket(m.algebra(), x, VectorQ(c.k_space.basis().col(j))))) << spec;
      for (Index j = 0; j < c.p_space.dim(); ++j)
        ASSERT_TRUE(c.p_space.contains(bracket(m.algebra(), x, VectorQ(c.p_space.basis().col(j))))) << spec;
    }
    for (Index i = 0; i < c.p_space.dim(); ++i)
      for (Index j = 0; j < c.p_space.dim(); ++j)
        ASSERT_TRUE(c.k_space.contains(
            bracket(m.algebra(), VectorQ(c.p_space.basis().col(i)), VectorQ(c.p_space.basis().col(j)))))
            << spec;
    EXPECT_TRUE(c.inner_product.positive_definite()) << spec;
  }
}

TEST(FloatMode, JacobiWithinTolerance) {
  const auto g = build_space("g2_split").algebra().cast<double>();
  EXPECT_LE(jacobi_residual(g), float_tolerance());
}

TEST(FloatMode, ToleranceIsConfigurable) {
  const double old = float_tolerance();
  EXPECT_DOUBLE_EQ(old, 1e-9);
  set_float_tolerance(1e-3);
  Eigen::MatrixXd m(2, 2);
  m << 1, 0, 0, 1e-4;
  EXPECT_EQ(rank<double>(m), 1);
  set_float_tolerance(old);
  EXPECT_EQ(rank<double>(m), 2);
}

TEST(Subspace, SelfIntersection) {
  std::mt19937_64 rng(5);
  MatrixQ b(6, 3);
  for (Index j = 0; j < 3; ++j) b.col(j) = random_integer_vector(6, rng);
  const SubspaceQ u = SubspaceQ::span(b);
  EXPECT_EQ(intersect(u, u), u);
}

TEST(Subspace, ComplementaryCoordinatePlanes) {
  MatrixQ a = MatrixQ::Zero(4, 2), b = MatrixQ::Zero(4, 2);
  a(0, 0) = a(1, 1) = 1;
  b(2, 0) = b(3, 1) = 1;
  EXPECT_EQ(intersect(SubspaceQ::span(a), SubspaceQ::span(b)).dim(), 0);
}

TEST(Subspace, DiagonalPlaneMeetsVeroneseLine) {
  const Model m = build_space("sl_R:3");
  const SubspaceQ plane = oracle::p_span(m, {diag({1, -1, 0}), diag({0, 1, -1})});
  const SubspaceQ line = SubspaceQ::line(m.p_vector(diag({1, 1, -2})));
  EXPECT_EQ(intersect(plane, line), line);
  EXPECT_EQ(intersect(plane, line).dim(), 1);
}

TEST(Subspace, DimensionFormulaOnRandomPairs) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> dim(0, 6);
  for (int t = 0; t < 100; ++t) {
    // Draw from a shared pool so the intersection is often nontrivial.
    std::vector<VectorQ> pool;
    for (int i = 0; i < 5; ++i) pool.push_back(random_integer_vector(7, rng, 3));
    auto draw = [&](int k) {
      MatrixQ b(7, k);
      for (int j = 0; j < k; ++j) b.col(j) = (rng() % 2) ? pool[rng() % pool.size()] : random_integer_vector(7, rng, 3);
      return SubspaceQ::span(b);
    };
    const SubspaceQ u = draw(dim(rng)), v = draw(dim(rng));
    MatrixQ both(7, u.dim() + v.dim());
    both << u.basis(), v.basis();
    const Index sum_dim = oracle::float_rank(both);
    EXPECT_EQ((u + v).dim(), sum_dim);
    EXPECT_EQ(intersect(u, v).dim() + (u + v).dim(), u.dim() + v.dim());
    EXPECT_TRUE(u.contains(intersect(u, v)) && v.contains(intersect(u, v)));
  }
}

TEST(Subspace, CanonicalBasisMakesEqualitySyntactic) {
  MatrixQ a(3, 2), b(3, 2);
  a << 1, 0, 0, 1, 2, 3;
  b << 1, 1, 1, -1, 5, -1;  // columns (1,1,5) and (1,-1,-1), same span
  EXPECT_EQ(SubspaceQ::span(a), SubspaceQ::span(b));
  EXPECT_EQ(SubspaceQ::span(a).basis(), SubspaceQ::span(b).basis());
}

TEST(Orthocomplement, TrivialCases) {
  const Model m = build_space("sl_R:3");
  EXPECT_EQ(orthocomplement(SubspaceQ::full(5), m.form_p()).dim(), 0);
  EXPECT_EQ(orthocomplement(SubspaceQ(5), m.form_p()), SubspaceQ::full(5));
}

TEST(Orthocomplement, VeroneseTangentComplementIsCentralizer) {
  const Model m = build_space("sl_R:3");
  // Tangent plane of the Veronese orbit through diag(1,1,-2).
  const SubspaceQ tangent = oracle::p_span(m, {oracle::sym(3, 0, 2), oracle::sym(3, 1, 2)});
  const SubspaceQ comp = orthocomplement(tangent, m.form_p());
  EXPECT_EQ(comp.dim(), 3);
  EXPECT_EQ(comp, oracle::p_span(m, {diag({1, -1, 0}), diag({1, 1, -2}), oracle::sym(3, 0, 1)}));
  // Gram-Schmidt oracle in floating point: 6 tr(X Y^T) vanishes across.
  for (Index i = 0; i < tangent.dim(); ++i)
    for (Index j = 0; j < comp.dim(); ++j) {
      const MatrixQ x = oracle::matrix_of_p(m, tangent.basis().col(i));
      const MatrixQ y = oracle::matrix_of_p(m, comp.basis().col(j));
      EXPECT_TRUE(oracle::trace(x * y.transpose()).is_zero());
    }
}

TEST(Orthocomplement, IndefiniteFormRejected) {
  const Model m = build_space("sl_R:3");
  try {
    orthocomplement(SubspaceQ::line(VectorQ::Unit(8, 0)), killing_form(m.algebra()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateForm);
  }
}

TEST(Scalar, RationalStrings) {
  EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(to_string(Rational(-1, 2)), "-1/2");
  EXPECT_EQ(to_string(Rational(4)), "4");
  for (const char* bad : {"", "1/0", "x", "1/2/3", "1.5"}) EXPECT_THROW(parse_rational(bad), Error) << bad;
}

TEST(Scalar, Rationalize) {
  EXPECT_EQ(rationalize(0.75, 100), Rational(3, 4));
  EXPECT_EQ(rationalize(-1.0 / 3.0 + 1e-13, 10000), Rational(-1, 3));
  EXPECT_FALSE(rationalize_within(std::sqrt(2.0), 100, 1e-8).has_value());
}

TEST(Linalg, KernelAndInverse) {
  MatrixQ a(2, 3);
  a << 1, 2, 3, 2, 4, 6;
  const MatrixQ k = kernel<Rational>(a);
  EXPECT_EQ(k.cols(), 2);
  EXPECT_TRUE(is_zero<Rational>(MatrixQ(a * k)));
  MatrixQ s(2, 2);
  s << 1, 2, 2, 4;
  EXPECT_THROW(inverse<Rational>(s), Error);
  MatrixQ r(2, 2);
  r << 2, 1, 1, 1;
  EXPECT_EQ(MatrixQ(r * inverse<Rational>(r)), MatrixQ(MatrixQ::Identity(2, 2)));
}
