#include "symspace/certificate.hpp"

#include "symspace/flats.hpp"

#include "json.hpp"

#include <algorithm>
#include <sstream>

namespace symspace {

namespace {

using nlohmann::json;

std::string quoted(const std::string& s) { return json(s).dump(); }

Rational parse_entry(const json& e) {
  if (e.is_string()) return parse_rational(e.get<std::string>());
  throw Error(ErrorCode::kParse, "basis entries must be rational strings \"p/q\"");
}

template <typename T>
T field(const json& obj, const char* key) {
  if (!obj.contains(key)) throw Error(ErrorCode::kParse, std::string("missing field \"") + key + "\"");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::kParse, std::string("field \"") + key + "\" has the wrong type");
  }
}

Index nonnegative(const json& obj, const char* key) {
  const long long v = field<long long>(obj, key);
  if (v < 0) throw Error(ErrorCode::kParse, std::string("field \"") + key + "\" must be nonnegative");
  return static_cast<Index>(v);
}

// p basis vectors whose ambient vectors vanish at every index in `zero`.
SubspaceQ p_block(const Model& model, const std::vector<Index>& zero) {
  const Index dp = model.dim_p();
  std::vector<VectorQ> keep;
  for (Index i = 0; i < dp; ++i) {
    const VectorQ e = VectorQ::Unit(dp, i);
    const VectorQ amb = model.to_ambient(model.p_to_g(e));
    if (std::all_of(zero.begin(), zero.end(), [&](Index z) { return amb(z).is_zero(); })) keep.push_back(e);
  }
  MatrixQ b(dp, static_cast<Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) b.col(static_cast<Index>(j)) = keep[j];
  return SubspaceQ::span(b);
}

// Ambient indices of row and column `index` (each of size `s`) of an N x N realified matrix.
std::vector<Index> drop_index(Index matrix_size, Index index, Index s) {
  std::vector<Index> out;
  for (Index r = index * s; r < (index + 1) * s; ++r)
    for (Index c = 0; c < matrix_size; ++c) {
      out.push_back(r * matrix_size + c);
      out.push_back(c * matrix_size + r);
    }
  return out;
}

VectorQ diag_vector(const Model& model, const std::vector<int>& d) {
  MatrixQ m = MatrixQ::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Index>(i), static_cast<Index>(i)) = d[i];
  return model.p_vector(m);
}

int param(const PairParams& params, const std::string& key, int fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kUnsupportedParameters, what);
}

std::string s(int x) { return std::to_string(x); }

Certificate assemble(const Model& model, const SubspaceQ& w, Claims claims, std::string provenance) {
  Certificate cert;
  cert.space = model.specifier();
  MatrixQ g(model.dim_g(), w.dim());
  for (Index j = 0; j < w.dim(); ++j) g.col(j) = model.p_to_g(VectorQ(w.basis().col(j)));
  const SubspaceQ canonical = SubspaceQ::span(g);
  for (Index j = 0; j < canonical.dim(); ++j) cert.basis.push_back(canonical.basis().col(j));
  cert.claims = claims;
  cert.provenance = std::move(provenance);
  return cert;
}

}  // namespace

std::string to_json(const Certificate& cert) {
  std::ostringstream out;
  out << "{\n  \"space\": " << quoted(cert.space) << ",\n  \"basis\": [";
  for (std::size_t j = 0; j < cert.basis.size(); ++j) {
    out << (j ? ",\n    [" : "\n    [");
    for (Index i = 0; i < cert.basis[j].size(); ++i) out << (i ? ", " : "") << quoted(to_string(cert.basis[j](i)));
    out << "]";
  }
  out << (cert.basis.empty() ? "],\n" : "\n  ],\n");
  const Claims& c = cert.claims;
  out << "  \"claims\": {\n"
      << "    \"codim\": " << c.codim << ",\n"
      << "    \"is_lts\": " << (c.is_lts ? "true" : "false") << ",\n"
      << "    \"abelian_dim\": " << c.abelian_dim << ",\n"
      << "    \"sigma_rank\": " << c.sigma_rank << ",\n"
      << "    \"index_upper_bound\": " << c.index_upper_bound << "\n  },\n"
      << "  \"provenance\": " << quoted(cert.provenance) << "\n}\n";
  return out.str();
}

Certificate certificate_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kParse, "certificate must be a JSON object");
  Certificate cert;
  cert.space = field<std::string>(doc, "space");
  if (!doc.contains("basis") || !doc["basis"].is_array()) throw Error(ErrorCode::kParse, "\"basis\" must be an array");
  for (const auto& col : doc["basis"]) {
    if (!col.is_array()) throw Error(ErrorCode::kParse, "basis vectors must be arrays");
    VectorQ v(static_cast<Index>(col.size()));
    for (std::size_t i = 0; i < col.size(); ++i) v(static_cast<Index>(i)) = parse_entry(col[i]);
    cert.basis.push_back(std::move(v));
  }
  if (!doc.contains("claims") || !doc["claims"].is_object()) throw Error(ErrorCode::kParse, "\"claims\" must be an object");
  const json& c = doc["claims"];
  cert.claims.codim = nonnegative(c, "codim");
  cert.claims.is_lts = field<bool>(c, "is_lts");
  cert.claims.abelian_dim = nonnegative(c, "abelian_dim");
  cert.claims.sigma_rank = nonnegative(c, "sigma_rank");
  cert.claims.index_upper_bound = nonnegative(c, "index_upper_bound");
  cert.provenance = doc.contains("provenance") ? field<std::string>(doc, "provenance") : std::string();
  return cert;
}

Certificate make_certificate(const Model& model, const SubspaceQ& w, std::string provenance, std::uint64_t seed) {
  Claims c;
  c.codim = w.codim();
  c.is_lts = is_lts(model, w);
  if (c.is_lts) {
    c.abelian_dim = abelian_part(model, w).dim();
    c.sigma_rank = lts_rank(model, w, seed).rank;
  }
  c.index_upper_bound = c.codim;
  return assemble(model, w, c, std::move(provenance));
}

SubspaceQ certified_subspace(const Model& model, const Certificate& cert) {
  MatrixQ b(model.dim_p(), static_cast<Index>(cert.basis.size()));
  for (std::size_t j = 0; j < cert.basis.size(); ++j) {
    auto p = model.g_to_p(cert.basis[j]);
    if (!p) throw Error(ErrorCode::kNotInP, "basis vector " + std::to_string(j) + " is not in p");
    b.col(static_cast<Index>(j)) = *p;
  }
  return SubspaceQ::span(b);
}

std::vector<std::string> pair_ids() {
  return {"rhk_hyperplane", "chk_hyperplane",   "so2k_block",       "sl3R_centralizer", "so3k_block",
          "g2_sl3",         "sl3C_sl3R",        "sl4R_centralizer", "sokn_block",       "slkR_veronese_normal"};
}

Certificate generate_certificate(const std::string& id, const PairParams& params) {
  if (id == "rhk_hyperplane") {
    const int k = param(params, "k", 4);
    require(k >= 2 && k <= 9, "rhk_hyperplane needs 2 <= k <= 9");
    const Model m = build_space("so:1," + s(k));
    const SubspaceQ w = p_block(m, drop_index(k + 1, k, 1));
    return assemble(m, w, {1, true, k == 2 ? 1 : 0, 1, 1},
                    "Totally geodesic RH^" + s(k - 1) + " in RH^" + s(k) +
                        ": the tangent hyperplane with vanishing last coordinate. Real hyperbolic spaces have index 1.");
  }
  if (id == "chk_hyperplane") {
    const int k = param(params, "k", 2);
    require(k >= 2 && k <= 5, "chk_hyperplane needs 2 <= k <= 5");
    const Model m = build_space("su:1," + s(k));
    const SubspaceQ w = p_block(m, drop_index(2 * (k + 1), k, 2));
    return assemble(m, w, {2, true, 0, 1, 2},
                    "Complex hyperplane CH^" + s(k - 1) + " in CH^" + s(k) +
                        ". Complex hyperbolic spaces have index 2.");
  }
  if (id == "so2k_block" || id == "so3k_block" || id == "sokn_block") {
    int k = 0, n = 0;
    if (id == "sokn_block") {
      k = param(params, "k", 2);
      n = param(params, "n", k + 1);
    } else {
      k = id == "so2k_block" ? 2 : 3;
      n = param(params, "k", k == 2 ? 3 : 4);
    }
    require(k >= 1 && n >= 2 && k <= n && k + n <= 10 && !(k == 2 && n == 2),
            id + " needs so(k, n) with 1 <= k <= n, k + n <= 10, (k, n) != (2, 2), n >= 2");
    const Model m = build_space("so:" + s(k) + "," + s(n));
    const SubspaceQ w = p_block(m, drop_index(k + n, k + n - 1, 1));
    const int abelian = (k == 1 && n == 2) ? 1 : 0;
    return assemble(m, w, {k, true, abelian, std::min(k, n - 1), k},
                    "Block Grassmannian SO_{" + s(k) + "," + s(n - 1) + "}/SO_" + s(k) + " SO_" + s(n - 1) +
                        " inside SO_{" + s(k) + "," + s(n) + "}/SO_" + s(k) + " SO_" + s(n) +
                        ", fixing the last spacelike axis. Codimension " + s(k) + ".");
  }
  if (id == "sl3R_centralizer" || id == "sl4R_centralizer" || id == "slkR_veronese_normal") {
    int k = id == "sl3R_centralizer" ? 2 : 3;
    if (id == "slkR_veronese_normal") k = param(params, "k", 3);
    require(k >= 1 && k <= 6, id + " needs 1 <= k <= 6");
    const Model m = build_space("sl_R:" + s(k + 1));
    std::vector<int> d(static_cast<std::size_t>(k + 1), 1);
    d.back() = -k;
    const SubspaceQ w = centralizer(m, diag_vector(m, d));
    std::string text = "Centralizer of diag(1,...,1,-" + s(k) + ") in SL_" + s(k + 1) + "(R)/SO_" + s(k + 1) +
                       ": the normal space of the Veronese orbit RP^" + s(k) + ", a totally geodesic R x SL_" +
                       s(k) + "(R)/SO_" + s(k) + " of codimension " + s(k) + ".";
    return assemble(m, w, {k, true, 1, k, k}, text);
  }
  if (id == "g2_sl3") {
    const Model m = build_space("g2_split");
    std::vector<Index> zero;
    for (Index i = 9; i < 15; ++i) zero.push_back(i);
    const SubspaceQ w = p_block(m, zero);
    return assemble(m, w, {3, true, 0, 2, 3},
                    "Totally geodesic SL_3(R)/SO_3 in G2(2)/SO_4 from the long-root subalgebra sl_3. Codimension 3.");
  }
  if (id == "sl3C_sl3R") {
    const Model m = build_space("sl_C:3");
    std::vector<Index> zero;
    for (Index a = 0; a < 3; ++a)
      for (Index b = 0; b < 3; ++b) zero.push_back((2 * a) * 6 + 2 * b + 1);
    const SubspaceQ w = p_block(m, zero);
    return assemble(m, w, {3, true, 0, 2, 3},
                    "Real form SL_3(R)/SO_3 inside SL_3(C)/SU_3 as the real symmetric matrices. Codimension 3.");
  }
  throw Error(ErrorCode::kUnknownPair, "unknown pair id: " + id);
}

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass: return "PASS";
    case CheckStatus::kFail: return "FAIL";
    case CheckStatus::kSkip: return "SKIP";
  }
  return "?";
}

bool Report::overall() const {
  return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == CheckStatus::kFail; });
}

const Check* Report::find(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Report verify_certificate(const Certificate& cert, std::string_view seed_source, const VerifyOptions& options) {
  const Model model = build_space(cert.space);
  for (const auto& v : cert.basis)
    if (v.size() != model.dim_g())
      throw Error(ErrorCode::kParse, "basis vectors must have length dim g = " + std::to_string(model.dim_g()));

  const std::uint64_t seed = derive_seed(fnv1a(seed_source), static_cast<int>(options.seed & 0x7fffffff));
  Report report;
  report.space = cert.space;
  auto add = [&](std::string name, CheckStatus st, std::string detail) {
    report.checks.push_back({std::move(name), st, std::move(detail)});
  };
  auto skip_rest = [&](std::initializer_list<const char*> names, const std::string& why) {
    for (const char* n : names) add(n, CheckStatus::kSkip, why);
  };
  auto pass_if = [](bool ok) { return ok ? CheckStatus::kPass : CheckStatus::kFail; };

  const Index count = static_cast<Index>(cert.basis.size());
  MatrixQ g(model.dim_g(), count);
  for (Index j = 0; j < count; ++j) g.col(j) = cert.basis[static_cast<std::size_t>(j)];
  const Index r = rank<Rational>(g);
  const bool independent = count > 0 && r == count;
  add("basis_independent", pass_if(independent),
      std::to_string(count) + " vectors, rank " + std::to_string(r));
  if (!independent) {
    skip_rest({"basis_in_p", "lts_exact", "codim", "abelian_dim", "sigma_rank", "index_bound", "transversal_flat"},
              "needs an independent basis");
    return report;
  }

  MatrixQ pb(model.dim_p(), count);
  Index outside = -1;
  for (Index j = 0; j < count && outside < 0; ++j) {
    if (auto p = model.g_to_p(g.col(j))) pb.col(j) = *p;
    else outside = j;
  }
  add("basis_in_p", pass_if(outside < 0),
      outside < 0 ? "all vectors lie in p" : "vector " + std::to_string(outside) + " has a component in k");
  if (outside >= 0) {
    skip_rest({"lts_exact", "codim", "abelian_dim", "sigma_rank", "index_bound", "transversal_flat"},
              "needs a basis inside p");
    return report;
  }
  const SubspaceQ w = SubspaceQ::span(pb);

  const LtsResidual res = lts_residual(model, w);
  add("lts_exact", pass_if(res.is_lts == cert.claims.is_lts),
      "exact squared residual " + to_string(res.residual_sq) + ", claimed is_lts " + (cert.claims.is_lts ? "true" : "false"));

  add("codim", pass_if(w.codim() == cert.claims.codim),
      "dim p " + std::to_string(model.dim_p()) + " - dim W " + std::to_string(w.dim()) + " = " +
          std::to_string(w.codim()) + ", claimed " + std::to_string(cert.claims.codim));

  if (!res.is_lts) {
    skip_rest({"abelian_dim", "sigma_rank"}, "W is not a Lie triple system");
  } else {
    const Index ab = abelian_part(model, w).dim();
    add("abelian_dim", pass_if(ab == cert.claims.abelian_dim),
        "computed " + std::to_string(ab) + ", claimed " + std::to_string(cert.claims.abelian_dim));
    const RankResult sr = lts_rank(model, w, seed, 3);
    add("sigma_rank", pass_if(sr.stable && sr.rank == cert.claims.sigma_rank),
        "computed " + std::to_string(sr.rank) + (sr.stable ? "" : " (unstable across runs)") + ", claimed " +
            std::to_string(cert.claims.sigma_rank));
  }

  const RankResult mr = rank(model, seed, 3);
  const Index bound = cert.claims.index_upper_bound;
  const bool witnessed = res.is_lts && w.codim() <= bound;
  const bool consistent = mr.stable && mr.rank <= bound && witnessed;
  add("index_bound", pass_if(consistent),
      "rank(M) " + std::to_string(mr.rank) + " <= claimed index bound " + std::to_string(bound) +
          (witnessed ? ", witnessed by codim " + std::to_string(w.codim()) : ", not witnessed by this subspace"));

  if (!options.with_transversal) {
    add("transversal_flat", CheckStatus::kSkip, "not requested");
  } else if (w.codim() < mr.rank) {
    add("transversal_flat", CheckStatus::kFail, "codim below rank: no flat can meet W only in 0");
  } else {
    try {
      const TransversalResult t = transversal_flat(model, w, mr.rank, options.budget, seed);
      add("transversal_flat", CheckStatus::kPass, "maximal flat meeting W only in 0 after " + std::to_string(t.trials) + " trials");
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kBudgetExhausted) throw;
      add("transversal_flat", CheckStatus::kFail, e.what());
    }
  }
  return report;
}

Report verify_certificate(const Certificate& cert, const VerifyOptions& options) {
  return verify_certificate(cert, to_json(cert), options);
}

std::string format_report(const Report& report) {
  std::ostringstream out;
  out << "space " << report.space << "\n";
  for (const auto& c : report.checks) out << to_string(c.status) << "  " << c.name << "  " << c.detail << "\n";
  out << "overall " << (report.overall() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace symspace
