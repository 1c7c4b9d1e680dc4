#include "symspace/symmetric_space.hpp"

namespace symspace {

namespace {

void accumulate(VectorQ& out, const Terms<Rational>& terms, const Rational& f) {
  for (const auto& t : terms) out(t.index) += f * t.coeff;
}

Terms<Rational> to_terms(const VectorQ& v) {
  Terms<Rational> out;
  for (Index i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) out.push_back({i, v(i)});
  return out;
}

MatrixQ restrict_form(const MatrixQ& m, const MatrixQ& basis) {
  return multiply<Rational>(MatrixQ(basis.transpose()), multiply<Rational>(m, basis));
}

}  // namespace

SymmetricSpace::SymmetricSpace(LieAlgebraQ algebra, CartanDecompositionQ cartan)
    : algebra_(std::move(algebra)), cartan_(std::move(cartan)) {
  const auto& kb = cartan_.k_space.basis();
  const auto& pb = cartan_.p_space.basis();
  const Index dk = kb.cols(), dp = pb.cols();
  form_p_ = BilinearForm<Rational>(restrict_form(cartan_.inner_product.matrix(), pb));
  form_k_ = BilinearForm<Rational>(restrict_form(cartan_.inner_product.matrix(), kb));

  auto g_bracket = [&](const MatrixQ& a, Index i, const MatrixQ& b, Index j) {
    return bracket(algebra_, VectorQ(a.col(i)), VectorQ(b.col(j)));
  };
  pp_.assign(static_cast<std::size_t>(dp * dp), {});
  for (Index i = 0; i < dp; ++i)
    for (Index j = i + 1; j < dp; ++j) {
      const VectorQ c = cartan_.k_space.coordinates(g_bracket(pb, i, pb, j));
      pp_[i * dp + j] = to_terms(c);
      pp_[j * dp + i] = to_terms(VectorQ(-c));
    }
  kp_.assign(static_cast<std::size_t>(dk * dp), {});
  for (Index i = 0; i < dk; ++i)
    for (Index j = 0; j < dp; ++j)
      kp_[i * dp + j] = to_terms(cartan_.p_space.coordinates(g_bracket(kb, i, pb, j)));
  kk_.assign(static_cast<std::size_t>(dk * dk), {});
  for (Index i = 0; i < dk; ++i)
    for (Index j = i + 1; j < dk; ++j) {
      const VectorQ c = cartan_.k_space.coordinates(g_bracket(kb, i, kb, j));
      kk_[i * dk + j] = to_terms(c);
      kk_[j * dk + i] = to_terms(VectorQ(-c));
    }
}

void SymmetricSpace::check_p(Index n) const {
  if (n != dim_p()) throw Error(ErrorCode::kDimensionMismatch, "expected a vector of p");
}

void SymmetricSpace::check_k(Index n) const {
  if (n != dim_k()) throw Error(ErrorCode::kDimensionMismatch, "expected a vector of k");
}

VectorQ SymmetricSpace::bracket_pp(const VectorQ& x, const VectorQ& y) const {
  check_p(x.size());
  check_p(y.size());
  const Index dp = dim_p();
  VectorQ out = VectorQ::Zero(dim_k());
  for (Index i = 0; i < dp; ++i) {
    if (x(i).is_zero()) continue;
    for (Index j = 0; j < dp; ++j) {
      if (i == j || y(j).is_zero()) continue;
      accumulate(out, pp_[i * dp + j], x(i) * y(j));
    }
  }
  return out;
}

VectorQ SymmetricSpace::act(const VectorQ& X, const VectorQ& y) const {
  check_k(X.size());
  check_p(y.size());
  const Index dp = dim_p();
  VectorQ out = VectorQ::Zero(dp);
  for (Index i = 0; i < dim_k(); ++i) {
    if (X(i).is_zero()) continue;
    for (Index j = 0; j < dp; ++j) {
      if (y(j).is_zero()) continue;
      accumulate(out, kp_[i * dp + j], X(i) * y(j));
    }
  }
  return out;
}

VectorQ SymmetricSpace::bracket_kk(const VectorQ& X, const VectorQ& Y) const {
  check_k(X.size());
  check_k(Y.size());
  const Index dk = dim_k();
  VectorQ out = VectorQ::Zero(dk);
  for (Index i = 0; i < dk; ++i) {
    if (X(i).is_zero()) continue;
    for (Index j = 0; j < dk; ++j) {
      if (i == j || Y(j).is_zero()) continue;
      accumulate(out, kk_[i * dk + j], X(i) * Y(j));
    }
  }
  return out;
}

VectorQ SymmetricSpace::triple(const VectorQ& x, const VectorQ& y, const VectorQ& z) const {
  return act(bracket_pp(x, y), z);
}

MatrixQ SymmetricSpace::ad_kp(const VectorQ& X) const {
  check_k(X.size());
  const Index dp = dim_p();
  MatrixQ m = MatrixQ::Zero(dp, dp);
  for (Index i = 0; i < dim_k(); ++i) {
    if (X(i).is_zero()) continue;
    for (Index j = 0; j < dp; ++j)
      for (const auto& t : kp_[i * dp + j]) m(t.index, j) += X(i) * t.coeff;
  }
  return m;
}

MatrixQ SymmetricSpace::ad_pk(const VectorQ& x) const {
  check_p(x.size());
  const Index dp = dim_p();
  MatrixQ m = MatrixQ::Zero(dim_k(), dp);
  for (Index i = 0; i < dp; ++i) {
    if (x(i).is_zero()) continue;
    for (Index j = 0; j < dp; ++j)
      for (const auto& t : pp_[i * dp + j]) m(t.index, j) += x(i) * t.coeff;
  }
  return m;
}

MatrixQ SymmetricSpace::ad_kp_of_p(const VectorQ& x) const {
  // [x, Y] = -[Y, x]
  check_p(x.size());
  const Index dp = dim_p();
  MatrixQ m = MatrixQ::Zero(dp, dim_k());
  for (Index j = 0; j < dim_k(); ++j)
    for (Index i = 0; i < dp; ++i) {
      if (x(i).is_zero()) continue;
      for (const auto& t : kp_[j * dp + i]) m(t.index, j) -= x(i) * t.coeff;
    }
  return m;
}

VectorQ SymmetricSpace::p_to_g(const VectorQ& x) const {
  check_p(x.size());
  return multiply<Rational>(cartan_.p_space.basis(), x);
}

VectorQ SymmetricSpace::k_to_g(const VectorQ& X) const {
  check_k(X.size());
  return multiply<Rational>(cartan_.k_space.basis(), X);
}

std::optional<VectorQ> SymmetricSpace::g_to_p(const VectorQ& v) const {
  if (v.size() != dim_g()) throw Error(ErrorCode::kDimensionMismatch, "expected a vector of g");
  return cartan_.p_space.try_coordinates(v);
}

std::optional<VectorQ> SymmetricSpace::g_to_k(const VectorQ& v) const {
  if (v.size() != dim_g()) throw Error(ErrorCode::kDimensionMismatch, "expected a vector of g");
  return cartan_.k_space.try_coordinates(v);
}

VectorQ random_integer_vector(Index n, std::mt19937_64& rng, int range) {
  std::uniform_int_distribution<int> dist(-range, range);
  VectorQ v(n);
  for (Index i = 0; i < n; ++i) v(i) = dist(rng);
  return v;
}

VectorQ random_nonzero_integer_vector(Index n, std::mt19937_64& rng, int range) {
  if (n == 0) throw Error(ErrorCode::kZeroVector, "no nonzero vectors in a zero space");
  for (;;) {
    VectorQ v = random_integer_vector(n, rng, range);
    if (!is_zero<Rational>(v)) return v;
  }
}

VectorQ random_vector_in(const SubspaceQ& s, std::mt19937_64& rng, int range) {
  return multiply<Rational>(s.basis(), random_integer_vector(s.dim(), rng, range));
}

MatrixQ orthogonal_projector(const SubspaceQ& w, const BilinearForm<Rational>& form) {
  const MatrixQ& b = w.basis();
  if (b.cols() == 0) return MatrixQ::Zero(w.ambient_dim(), w.ambient_dim());
  const MatrixQ bt_g = multiply<Rational>(MatrixQ(b.transpose()), form.matrix());
  const MatrixQ gram = multiply<Rational>(bt_g, b);
  return multiply<Rational>(b, multiply<Rational>(inverse<Rational>(gram), bt_g));
}

Rational normal_component_sq(const SubspaceQ& w, const BilinearForm<Rational>& form, const VectorQ& v) {
  const VectorQ n = v - multiply<Rational>(orthogonal_projector(w, form), v);
  return form(n, n);
}

std::uint64_t derive_seed(std::uint64_t seed, int run) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(run + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace symspace
