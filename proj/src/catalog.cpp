#include "symspace/catalog.hpp"

#include <charconv>
#include <sstream>

namespace symspace {

namespace {

// Left multiplication by 1, i, j, k on H = R^4 (basis 1, i, j, k); 1 and i on C = R^2.
MatrixQ unit_matrix(int s, int u) {
  if (s == 1) return MatrixQ::Identity(1, 1);
  if (s == 2) {
    Matrix<int> m(2, 2);
    if (u == 0) m << 1, 0, 0, 1;
    else m << 0, -1, 1, 0;
    return to_rational(m);
  }
  Matrix<int> m(4, 4);
  switch (u) {
    case 0: m.setIdentity(); break;
    case 1: m << 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0; break;
    case 2: m << 0, 0, -1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, -1, 0, 0; break;
    default: m << 0, 0, 0, -1, 0, 0, -1, 0, 0, 1, 0, 0, 1, 0, 0, 0; break;
  }
  return to_rational(m);
}

struct Entry {
  Index a, b;
  int unit;
  int coeff;
};

/// Realification of sum coeff * unit * E_ab over R (s = 1), C (s = 2) or H (s = 4).
MatrixQ dmat(Index n, int s, const std::vector<Entry>& entries) {
  MatrixQ m = MatrixQ::Zero(n * s, n * s);
  for (const auto& e : entries) m.block(e.a * s, e.b * s, s, s) += Rational(e.coeff) * unit_matrix(s, e.unit);
  return m;
}

VectorQ flatten(const MatrixQ& m) {
  VectorQ v(m.size());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

MatrixQ unflatten(const VectorQ& v, Index n) {
  MatrixQ m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = v(i * n + j);
  return m;
}

struct Spanning {
  std::vector<MatrixQ> k, p;
};

/// {X in gl(N, D) : X* S + S X = 0}, S = diag(-I_p, I_q); `trace_free` adds the su trace condition.
Spanning signature_family(int p, int q, int s, bool trace_free) {
  const Index n = p + q;
  auto sign = [&](Index a) { return a < p ? -1 : 1; };
  Spanning out;
  for (int u = 0; u < s; ++u)
    for (Index a = 0; a < n; ++a)
      for (Index b = a + 1; b < n; ++b) {
        const int conj = u == 0 ? 1 : -1;
        const int c = -sign(a) * sign(b) * conj;
        MatrixQ x = dmat(n, s, {{a, b, u, 1}, {b, a, u, c}});
        (sign(a) * sign(b) < 0 ? out.p : out.k).push_back(std::move(x));
      }
  if (s == 2 && trace_free)
    for (Index a = 0; a + 1 < n; ++a) out.k.push_back(dmat(n, s, {{a, a, 1, 1}, {a + 1, a + 1, 1, -1}}));
  if (s == 4)
    for (int u = 1; u < 4; ++u)
      for (Index a = 0; a < n; ++a) out.k.push_back(dmat(n, s, {{a, a, u, 1}}));
  return out;
}

Spanning sl_real(int n) {
  Spanning out;
  for (Index a = 0; a + 1 < n; ++a) out.p.push_back(dmat(n, 1, {{a, a, 0, 1}, {a + 1, a + 1, 0, -1}}));
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) {
      out.p.push_back(dmat(n, 1, {{a, b, 0, 1}, {b, a, 0, 1}}));
      out.k.push_back(dmat(n, 1, {{a, b, 0, 1}, {b, a, 0, -1}}));
    }
  return out;
}

Spanning sl_complex(int n) {
  Spanning out;
  for (Index a = 0; a + 1 < n; ++a) out.p.push_back(dmat(n, 2, {{a, a, 0, 1}, {a + 1, a + 1, 0, -1}}));
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) out.p.push_back(dmat(n, 2, {{a, b, 0, 1}, {b, a, 0, 1}}));
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) out.p.push_back(dmat(n, 2, {{a, b, 1, 1}, {b, a, 1, -1}}));
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) out.k.push_back(dmat(n, 2, {{a, b, 0, 1}, {b, a, 0, -1}}));
  for (Index a = 0; a + 1 < n; ++a) out.k.push_back(dmat(n, 2, {{a, a, 1, 1}, {a + 1, a + 1, 1, -1}}));
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) out.k.push_back(dmat(n, 2, {{a, b, 1, 1}, {b, a, 1, 1}}));
  return out;
}

/// sp(2n, R) = {[[A, B], [C, -A^T]] : B, C symmetric}.
Spanning sp_real(int n) {
  Spanning out;
  const Index m = 2 * n;
  auto sym = [&](Index a, Index b, Index ro, Index co, int c) {
    std::vector<Entry> e{{ro + a, co + b, 0, c}};
    if (a != b) e.push_back({ro + b, co + a, 0, c});
    return e;
  };
  auto join = [](std::vector<Entry> x, const std::vector<Entry>& y) {
    x.insert(x.end(), y.begin(), y.end());
    return x;
  };
  for (Index a = 0; a < n; ++a) out.p.push_back(dmat(m, 1, join(sym(a, a, 0, 0, 1), sym(a, a, n, n, -1))));
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b)
      out.p.push_back(dmat(m, 1, join(sym(a, b, 0, 0, 1), sym(a, b, n, n, -1))));
  for (Index a = 0; a < n; ++a)
    for (Index b = a; b < n; ++b) {
      out.p.push_back(dmat(m, 1, join(sym(a, b, 0, n, 1), sym(a, b, n, 0, 1))));
      out.k.push_back(dmat(m, 1, join(sym(a, b, 0, n, 1), sym(a, b, n, 0, -1))));
    }
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b)
      out.k.push_back(dmat(m, 1, {{a, b, 0, 1}, {b, a, 0, -1}, {n + a, n + b, 0, 1}, {n + b, n + a, 0, -1}}));
  return out;
}

VectorQ commutator(const VectorQ& x, const VectorQ& y, Index n) {
  const MatrixQ a = unflatten(x, n), b = unflatten(y, n);
  return flatten(MatrixQ(multiply<Rational>(a, b) - multiply<Rational>(b, a)));
}

// Split g2 as sl3 + R^3 + (R^3)*, ambient layout (A row-major, v, phi):
//   [A, v] = A v, [A, phi] = -phi A, [v, w] = 2 (v x w)^T, [phi, psi] = 2 (phi^T x psi^T),
//   [v, phi] = -3 (v phi - (phi v)/3 I).
// Jacobi forces (coefficient of [v,w]) * (coefficient of [phi,psi]) = -4/3 * (coefficient of [v,phi]).
constexpr int kG2Alpha = 2;
constexpr int kG2Beta = 2;
constexpr int kG2Gamma = -3;

VectorQ g2_bracket(const VectorQ& x, const VectorQ& y) {
  auto mat = [](const VectorQ& z) {
    MatrixQ m(3, 3);
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 3; ++j) m(i, j) = z(3 * i + j);
    return m;
  };
  auto cross = [](const VectorQ& a, const VectorQ& b) {
    VectorQ c(3);
    c << a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0);
    return c;
  };
  auto vw = [&](const VectorQ& v, const VectorQ& phi) {
    // gamma (v phi - (phi v)/3 I)
    MatrixQ m = v * phi.transpose();
    const Rational tr = phi.dot(v) / 3;
    for (Index i = 0; i < 3; ++i) m(i, i) -= tr;
    return MatrixQ(Rational(kG2Gamma) * m);
  };
  const MatrixQ a1 = mat(x), a2 = mat(y);
  const VectorQ v1 = x.segment(9, 3), v2 = y.segment(9, 3);
  const VectorQ p1 = x.segment(12, 3), p2 = y.segment(12, 3);  // row vectors stored as columns
  const MatrixQ a = MatrixQ(a1 * a2 - a2 * a1) + vw(v1, p2) - vw(v2, p1);
  const VectorQ v = VectorQ(a1 * v2 - a2 * v1) + Rational(kG2Beta) * cross(p1, p2);
  const VectorQ phi = VectorQ(-(a1.transpose() * p2) + a2.transpose() * p1) + Rational(kG2Alpha) * cross(v1, v2);
  VectorQ out(15);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) out(3 * i + j) = a(i, j);
  out.segment(9, 3) = v;
  out.segment(12, 3) = phi;
  return out;
}

Model assemble(const SpaceSpec& spec, std::string label, Index expected_dim_p, Index expected_rank,
               Index matrix_size, Index ambient_dim, const std::vector<VectorQ>& k_span,
               const std::vector<VectorQ>& p_span,
               std::function<VectorQ(const VectorQ&, const VectorQ&)> bracket_fn) {
  AmbientRep rep;
  rep.matrix_size = matrix_size;
  rep.ambient_dim = ambient_dim;
  rep.bracket = std::move(bracket_fn);
  IncrementalSpan<Rational> span(ambient_dim);
  Index dk = 0;
  for (const auto& v : k_span)
    if (span.add(v)) {
      rep.basis.push_back(v);
      ++dk;
    }
  for (const auto& v : p_span)
    if (span.add(v)) rep.basis.push_back(v);
  const Index d = static_cast<Index>(rep.basis.size());
  MatrixQ b(ambient_dim, d);
  for (Index j = 0; j < d; ++j) b.col(j) = rep.basis[j];
  rep.pivot_rows = row_echelon<Rational>(MatrixQ(b.transpose())).pivots;
  MatrixQ sub(d, d);
  for (Index r = 0; r < d; ++r) sub.row(r) = b.row(rep.pivot_rows[r]);
  rep.pivot_inverse = inverse<Rational>(sub);

  auto coords = [&](const VectorQ& z) -> VectorQ {
    VectorQ rows(d);
    for (Index r = 0; r < d; ++r) rows(r) = z(rep.pivot_rows[r]);
    VectorQ c = multiply<Rational>(rep.pivot_inverse, rows);
    if (!is_zero<Rational>(VectorQ(multiply<Rational>(b, c) - z)))
      throw Error(ErrorCode::kJacobiFailure, "basis of " + label + " is not closed under the bracket");
    return c;
  };
  LieAlgebraQ g(d, label);
  for (Index i = 0; i < d; ++i)
    for (Index j = i + 1; j < d; ++j) {
      const VectorQ c = coords(rep.bracket(rep.basis[i], rep.basis[j]));
      Terms<Rational> t;
      for (Index k = 0; k < d; ++k)
        if (!c(k).is_zero()) t.push_back({k, c(k)});
      g.set_bracket(i, j, std::move(t));
    }
  if (!jacobi_residual(g).is_zero()) throw Error(ErrorCode::kJacobiFailure, "Jacobi identity fails for " + label);

  MatrixQ theta = MatrixQ::Zero(d, d);
  for (Index i = 0; i < d; ++i) theta(i, i) = i < dk ? 1 : -1;
  auto cartan = cartan_decompose(g, theta);
  SymmetricSpace space(std::move(g), std::move(cartan));
  if (space.dim_p() != expected_dim_p)
    throw Error(ErrorCode::kUnsupportedParameters, "dim p of " + label + " does not match the expected value");
  return Model(std::move(space), spec, std::move(label), expected_dim_p, expected_rank, std::move(rep));
}

Model assemble_matrices(const SpaceSpec& spec, std::string label, Index dp, Index rank, const Spanning& s) {
  const Index n = s.p.front().rows();
  std::vector<VectorQ> k, p;
  for (const auto& m : s.k) k.push_back(flatten(m));
  for (const auto& m : s.p) p.push_back(flatten(m));
  return assemble(spec, std::move(label), dp, rank, n, n * n, k, p,
                  [n](const VectorQ& x, const VectorQ& y) { return commutator(x, y, n); });
}

Model build_g2(const SpaceSpec& spec) {
  auto a_elem = [](std::vector<std::tuple<int, int, int>> entries) {
    VectorQ v = VectorQ::Zero(15);
    for (auto [i, j, c] : entries) v(3 * i + j) += c;
    return v;
  };
  std::vector<VectorQ> k, p;
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) k.push_back(a_elem({{a, b, 1}, {b, a, -1}}));
  for (int a = 0; a < 3; ++a) {
    VectorQ v = VectorQ::Zero(15);
    v(9 + a) = 1;
    v(12 + a) = 1;
    k.push_back(v);
  }
  for (int a = 0; a < 2; ++a) p.push_back(a_elem({{a, a, 1}, {a + 1, a + 1, -1}}));
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) p.push_back(a_elem({{a, b, 1}, {b, a, 1}}));
  for (int a = 0; a < 3; ++a) {
    VectorQ v = VectorQ::Zero(15);
    v(9 + a) = 1;
    v(12 + a) = -1;
    p.push_back(v);
  }
  return assemble(spec, "G2(2)/SO_4", 8, 2, 0, 15, k, p, g2_bracket);
}

[[noreturn]] void unsupported(const std::string& what) {
  throw Error(ErrorCode::kUnsupportedParameters, "unsupported parameters: " + what);
}

void check_range(const SpaceSpec& s) {
  const auto& p = s.params;
  const std::string name = format_space(s);
  switch (s.family) {
    case Family::kSlR:
      if (p[0] < 2 || p[0] > 7) unsupported(name + " (need 2 <= n <= 7)");
      break;
    case Family::kSlC:
      if (p[0] < 2 || p[0] > 4) unsupported(name + " (need 2 <= n <= 4)");
      break;
    case Family::kSpR:
      if (p[0] < 1 || p[0] > 4) unsupported(name + " (need 1 <= n <= 4)");
      break;
    case Family::kSo:
      if (p[0] < 1 || p[0] > p[1] || p[0] + p[1] < 3 || p[0] + p[1] > 10)
        unsupported(name + " (need 1 <= p <= q, 3 <= p+q <= 10)");
      if (p[0] == 2 && p[1] == 2) unsupported(name + " (so(2,2) is not simple)");
      break;
    case Family::kSu:
      if (p[0] < 1 || p[0] > p[1] || p[0] + p[1] > 6) unsupported(name + " (need 1 <= p <= q, p+q <= 6)");
      break;
    case Family::kSp:
      if (p[0] < 1 || p[0] > p[1] || p[0] + p[1] > 4) unsupported(name + " (need 1 <= p <= q, p+q <= 4)");
      break;
    case Family::kG2Split:
      break;
  }
}

const std::vector<std::pair<Family, std::string>>& family_tokens() {
  static const std::vector<std::pair<Family, std::string>> tokens{
      {Family::kSlR, "sl_R"}, {Family::kSlC, "sl_C"}, {Family::kSo, "so"},         {Family::kSu, "su"},
      {Family::kSpR, "sp_R"}, {Family::kSp, "sp"},    {Family::kG2Split, "g2_split"}};
  return tokens;
}

std::size_t param_count(Family f) {
  switch (f) {
    case Family::kSlR:
    case Family::kSlC:
    case Family::kSpR: return 1;
    case Family::kSo:
    case Family::kSu:
    case Family::kSp: return 2;
    case Family::kG2Split: return 0;
  }
  return 0;
}

}  // namespace

Model::Model(SymmetricSpace space, SpaceSpec spec, std::string label, Index expected_dim_p,
             Index expected_rank, AmbientRep rep)
    : SymmetricSpace(std::move(space)),
      spec_(std::move(spec)),
      label_(std::move(label)),
      expected_dim_p_(expected_dim_p),
      expected_rank_(expected_rank),
      rep_(std::move(rep)) {}

VectorQ Model::to_ambient(const VectorQ& g_coords) const {
  if (g_coords.size() != dim_g()) throw Error(ErrorCode::kDimensionMismatch, "expected a vector of g");
  VectorQ out = VectorQ::Zero(rep_.ambient_dim);
  for (Index i = 0; i < g_coords.size(); ++i)
    if (!g_coords(i).is_zero()) out += g_coords(i) * rep_.basis[i];
  return out;
}

std::optional<VectorQ> Model::from_ambient(const VectorQ& ambient) const {
  if (ambient.size() != rep_.ambient_dim) throw Error(ErrorCode::kDimensionMismatch, "ambient size");
  const Index d = dim_g();
  VectorQ rows(d);
  for (Index r = 0; r < d; ++r) rows(r) = ambient(rep_.pivot_rows[r]);
  VectorQ c = multiply<Rational>(rep_.pivot_inverse, rows);
  if (!is_zero<Rational>(VectorQ(to_ambient(c) - ambient))) return std::nullopt;
  return c;
}

MatrixQ Model::matrix_of(const VectorQ& g_coords) const {
  if (rep_.matrix_size == 0) throw Error(ErrorCode::kUnsupportedParameters, "model has no matrix representation");
  return unflatten(to_ambient(g_coords), rep_.matrix_size);
}

std::optional<VectorQ> Model::coordinates_of(const MatrixQ& m) const {
  if (rep_.matrix_size == 0) throw Error(ErrorCode::kUnsupportedParameters, "model has no matrix representation");
  if (m.rows() != rep_.matrix_size || m.cols() != rep_.matrix_size)
    throw Error(ErrorCode::kDimensionMismatch, "matrix has the wrong size");
  return from_ambient(flatten(m));
}

VectorQ Model::p_vector(const MatrixQ& m) const {
  auto c = coordinates_of(m);
  if (!c) throw Error(ErrorCode::kNotInP, "matrix is not in g");
  auto p = g_to_p(*c);
  if (!p) throw Error(ErrorCode::kNotInP, "matrix is not in p");
  return *p;
}

SpaceSpec parse_space(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view token = text.substr(0, colon);
  SpaceSpec spec{Family::kG2Split, {}};
  bool found = false;
  for (const auto& [f, name] : family_tokens())
    if (token == name) {
      spec.family = f;
      found = true;
    }
  if (!found) throw Error(ErrorCode::kParse, "unknown space family '" + std::string(token) + "'");
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    for (;;) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      int value = 0;
      const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
      if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
        throw Error(ErrorCode::kParse, "bad parameter '" + std::string(item) + "' in space '" + std::string(text) + "'");
      spec.params.push_back(value);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  if (spec.params.size() != param_count(spec.family))
    throw Error(ErrorCode::kParse, "wrong number of parameters in space '" + std::string(text) + "'");
  return spec;
}

std::string format_space(const SpaceSpec& spec) {
  std::string out;
  for (const auto& [f, name] : family_tokens())
    if (f == spec.family) out = name;
  for (std::size_t i = 0; i < spec.params.size(); ++i)
    out += (i == 0 ? ":" : ",") + std::to_string(spec.params[i]);
  return out;
}

Model build_space(std::string_view specifier) { return build_space(parse_space(specifier)); }

Model build_space(const SpaceSpec& spec) {
  if (spec.params.size() != param_count(spec.family)) throw Error(ErrorCode::kUnsupportedParameters, "parameter count");
  check_range(spec);
  const auto& p = spec.params;
  auto s = [](auto x) { return std::to_string(x); };
  switch (spec.family) {
    case Family::kSlR: {
      const int n = p[0];
      return assemble_matrices(spec, "SL_" + s(n) + "(R)/SO_" + s(n), n * (n + 1) / 2 - 1, n - 1, sl_real(n));
    }
    case Family::kSlC: {
      const int n = p[0];
      return assemble_matrices(spec, "SL_" + s(n) + "(C)/SU_" + s(n), n * n - 1, n - 1, sl_complex(n));
    }
    case Family::kSo:
      return assemble_matrices(spec, "SO_{" + s(p[0]) + "," + s(p[1]) + "}/SO_" + s(p[0]) + " SO_" + s(p[1]),
                               p[0] * p[1], p[0], signature_family(p[0], p[1], 1, false));
    case Family::kSu:
      return assemble_matrices(spec, "SU_{" + s(p[0]) + "," + s(p[1]) + "}/S(U_" + s(p[0]) + " U_" + s(p[1]) + ")",
                               2 * p[0] * p[1], p[0], signature_family(p[0], p[1], 2, true));
    case Family::kSpR: {
      const int n = p[0];
      return assemble_matrices(spec, "Sp_" + s(n) + "(R)/U_" + s(n), n * (n + 1), n, sp_real(n));
    }
    case Family::kSp:
      return assemble_matrices(spec, "Sp_{" + s(p[0]) + "," + s(p[1]) + "}/Sp_" + s(p[0]) + " Sp_" + s(p[1]),
                               4 * p[0] * p[1], p[0], signature_family(p[0], p[1], 4, false));
    case Family::kG2Split:
      return build_g2(spec);
  }
  unsupported(format_space(spec));
}

std::vector<std::string> catalog_specifiers() {
  std::vector<std::string> out;
  for (int n = 2; n <= 6; ++n) out.push_back("sl_R:" + std::to_string(n));
  for (int n = 2; n <= 3; ++n) out.push_back("sl_C:" + std::to_string(n));
  for (int total = 3; total <= 9; ++total)
    for (int p = 1; 2 * p <= total; ++p)
      if (!(p == 2 && total == 4)) out.push_back("so:" + std::to_string(p) + "," + std::to_string(total - p));
  for (int k = 1; k <= 4; ++k) out.push_back("su:1," + std::to_string(k));
  out.push_back("su:2,2");
  out.push_back("su:2,3");
  for (int n = 1; n <= 3; ++n) out.push_back("sp_R:" + std::to_string(n));
  out.push_back("sp:1,1");
  out.push_back("sp:1,2");
  out.push_back("g2_split");
  return out;
}

}  // namespace symspace
