#include "symspace/cli.hpp"

#include "symspace/certificate.hpp"
#include "symspace/orbits.hpp"
#include "symspace/search.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace symspace {

namespace {

constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

std::string join(const VectorQ& v) {
  std::string s = "[";
  for (Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v(i));
  return s + "]";
}

std::string join(const Eigen::VectorXd& v) {
  std::ostringstream s;
  s << std::setprecision(6) << "[";
  for (Index i = 0; i < v.size(); ++i) s << (i ? ", " : "") << (std::abs(v(i)) < 1e-12 ? 0.0 : v(i));
  s << "]";
  return s.str();
}

VectorQ parse_vector(const std::string& text) {
  std::vector<Rational> vals;
  std::string token;
  auto flush = [&] {
    if (!token.empty()) vals.push_back(parse_rational(token));
    token.clear();
  };
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c)) || c == '[' || c == ']') flush();
    else token += c;
  }
  flush();
  VectorQ v(static_cast<Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) v(static_cast<Index>(i)) = vals[i];
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void print_matrix(std::ostream& out, const MatrixQ& m, const std::string& indent) {
  for (Index i = 0; i < m.rows(); ++i) out << indent << join(VectorQ(m.row(i).transpose())) << "\n";
}

void print_p_vector(std::ostream& out, const Model& model, const VectorQ& x) {
  out << "  " << join(x) << "\n";
  if (model.rep().matrix_size > 0) print_matrix(out, model.matrix_of(model.p_to_g(x)), "      ");
}

void print_histogram(std::ostream& out, const std::vector<double>& residuals) {
  std::map<int, int> bins;
  for (double r : residuals) bins[r > 0 ? static_cast<int>(std::floor(std::log10(r))) : -99]++;
  out << "residual histogram (decades):\n";
  for (auto [d, count] : bins) {
    if (d == -99) out << "  0          " << count << "\n";
    else out << "  [1e" << d << ", 1e" << d + 1 << ")  " << count << "\n";
  }
}

int cmd_catalog(std::ostream& out) {
  for (const auto& spec : catalog_specifiers()) {
    const Model m = build_space(spec);
    const RankResult r = rank(m);
    out << std::left << std::setw(10) << spec << " dim " << std::setw(3) << m.dim_p() << " rank " << r.rank << "  "
        << m.label() << "\n";
  }
  return 0;
}

int cmd_rank(std::ostream& out, const std::string& space) {
  const Model m = build_space(space);
  const RankResult r = rank(m, 0, 5);
  out << m.specifier() << "  " << m.label() << "\n";
  out << "rank " << r.rank << (r.stable ? " (stable over 5 greedy runs)" : " (greedy runs disagree)") << "\n";
  out << "maximal flat basis (p-coordinates):\n";
  for (Index j = 0; j < r.witness.dim(); ++j) print_p_vector(out, m, r.witness.basis().col(j));
  return r.stable ? 0 : kExitFail;
}

int cmd_verify(std::ostream& out, const std::string& path, bool transversal, std::uint64_t seed) {
  const std::string text = read_file(path);
  const Certificate cert = certificate_from_json(text);
  VerifyOptions opt;
  opt.with_transversal = transversal;
  opt.seed = seed;
  const Report report = verify_certificate(cert, text, opt);
  out << "certificate " << path << "\n" << format_report(report);
  return report.overall() ? 0 : kExitFail;
}

int cmd_generate(std::ostream& out, const std::string& id, const std::vector<std::string>& params,
                 const std::string& file) {
  PairParams p;
  for (const auto& kv : params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::kParse, "--param expects key=N, got " + kv);
    try {
      std::size_t used = 0;
      const int value = std::stoi(kv.substr(eq + 1), &used);
      if (used != kv.size() - eq - 1) throw std::invalid_argument(kv);
      p[kv.substr(0, eq)] = value;
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kParse, "--param expects an integer value, got " + kv);
    }
  }
  const Certificate cert = generate_certificate(id, p);
  std::ofstream f(file, std::ios::binary);
  if (!f) throw Error(ErrorCode::kParse, "cannot write " + file);
  f << to_json(cert);
  out << "wrote " << file << " (" << cert.space << ", codim " << cert.claims.codim << ")\n";
  return 0;
}

int cmd_flats(std::ostream& out, const std::string& space, const std::string& path, int budget, std::uint64_t seed) {
  const Certificate cert = certificate_from_json(read_file(path));
  const Model m = build_space(space);
  if (m.specifier() != build_space(cert.space).specifier())
    throw Error(ErrorCode::kAmbientMismatch, "certificate is for " + cert.space + ", not " + space);
  const SubspaceQ w = certified_subspace(m, cert);
  const Index r = rank(m, seed).rank;
  out << m.specifier() << "  rank " << r << ", dim W " << w.dim() << "\n";
  try {
    const TransversalResult t = transversal_flat(m, w, r, budget, seed);
    out << "transversal maximal flat found after " << t.trials << " trials\n";
    out << "regular vector (p-coordinates): " << join(t.flat.regular_witness) << "\n";
    out << "flat basis (p-coordinates):\n";
    for (Index j = 0; j < t.flat.subspace.dim(); ++j) print_p_vector(out, m, t.flat.subspace.basis().col(j));
    return 0;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kBudgetExhausted) throw;
    out << "FAIL " << e.what() << "\n";
    return kExitFail;
  }
}

int cmd_orbit(std::ostream& out, const std::string& space, const std::string& vec, bool symmetric, bool normals) {
  const Model m = build_space(space);
  const VectorQ v = parse_vector(vec);
  if (v.size() != m.dim_p())
    throw Error(ErrorCode::kDimensionMismatch,
                "--vector needs " + std::to_string(m.dim_p()) + " p-coordinates, got " + std::to_string(v.size()));
  if (is_zero<Rational>(v)) throw Error(ErrorCode::kZeroVector, "--vector must be nonzero");
  const OrbitModel orbit = orbit_spaces(m, v);
  const Index r = rank(m).rank;
  out << m.specifier() << "  " << m.label() << "\n";
  out << "v = " << join(v) << "\n";
  out << "orbit dim " << orbit.dim << ", normal dim " << orbit.normal.dim() << ", normal space = C(v): "
      << (orbit.normal_is_centralizer ? "yes" : "no") << "\n";
  out << "regular: " << (is_regular(m, v, r) ? "yes" : "no") << "\n";
  const bool tangent_lts = orbit.tangent.dim() > 0 && is_lts(m, orbit.tangent);
  const bool normal_lts = is_lts(m, orbit.normal);
  out << "tangent space is a Lie triple system: " << (tangent_lts ? "yes" : "no") << "\n";
  out << "normal space is a Lie triple system: " << (normal_lts ? "yes" : "no") << "\n";
  if (symmetric) {
    out << "symmetric submanifold test: " << (symmetric_submanifold_test(m, v) ? "true" : "false") << "\n";
    const MatrixQ a = shape_operator(m, v, v);
    out << "shape operator A_v (tangent echelon basis):\n";
    print_matrix(out, a, "  ");
  }
  if (normals) {
    if (!is_regular(m, v, r))
      throw Error(ErrorCode::kNotRegular, "curvature normals need a regular vector; this orbit is not principal");
    const CurvatureData c = curvature_normals(m, v, r);
    out << "curvature normals (p-coordinates, multiplicity):\n";
    for (std::size_t i = 0; i < c.normals.size(); ++i)
      out << "  " << join(c.normals[i]) << "  x" << c.multiplicities[i] << "\n";
    out << "g " << c.g << ", m " << c.m << ", span the flat: " << (c.spans_flat ? "yes" : "no")
        << ", exact multiplicities confirmed: " << (c.exact_confirmed ? "yes" : "no")
        << ", 2 rank + 1 <= dim p: " << (c.rank_inequality ? "yes" : "no") << "\n";
  }
  return 0;
}

void print_search(std::ostream& out, const SearchResult& r) {
  out << "codim " << r.codim << ": best residual " << std::scientific << std::setprecision(3) << r.best_residual
      << std::defaultfloat << ", status " << to_string(r.status) << ", restarts " << r.residual_histogram.size() << "\n";
}

void print_candidate(std::ostream& out, const Model& m, const SubspaceQ& w, const SearchConfig& cfg) {
  const Certificate cert = make_certificate(
      m, w, "Found by Grassmannian search with seed " + std::to_string(cfg.seed) + " and verified exactly.", cfg.seed);
  out << "candidate certificate:\n" << to_json(cert);
}

int cmd_search(std::ostream& out, const std::string& space, std::optional<Index> codim, SearchConfig cfg,
               std::optional<Index> probe_max) {
  if (!codim && !probe_max) throw Error(ErrorCode::kInvalidConfig, "search needs --codim or --probe-max");
  const Model m = build_space(space);
  out << m.specifier() << "  " << m.label() << "  dim p " << m.dim_p() << "\n";
  if (codim) {
    cfg.codim = *codim;
    const SearchResult r = lts_search(m, cfg);
    print_search(out, r);
    print_histogram(out, r.residual_histogram);
    if (r.refined_exact) print_candidate(out, m, *r.refined_exact, cfg);
  }
  if (probe_max) {
    const ProbeResult p = index_probe(m, *probe_max, cfg);
    out << "index probe up to codim " << *probe_max << " (rank " << p.rank << " is a lower bound)\n";
    for (Index c : p.skipped) out << "codim " << c << ": skipped, below the rank\n";
    for (const auto& r : p.runs) print_search(out, r);
    if (p.index) {
      out << "index estimate " << *p.index << "\n";
      print_candidate(out, m, *p.runs.back().refined_exact, cfg);
    } else {
      out << "index estimate: none <= " << *probe_max << "\n";
    }
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Toolkit for noncompact Riemannian symmetric spaces", "symspace"};
  app.require_subcommand(1);

  auto* catalog = app.add_subcommand("catalog", "Supported spaces");
  auto* catalog_list = catalog->add_subcommand("list", "Print specifiers with dim and rank");
  catalog->require_subcommand(1);

  std::string space, path, pair_id, file, vec;
  std::uint64_t seed = 0;
  bool with_transversal = false, symmetric = false, normals = false;
  int budget = 1000;
  std::vector<std::string> params;

  auto* rank_cmd = app.add_subcommand("rank", "Rank with a witness maximal flat");
  rank_cmd->add_option("space", space, "space specifier, e.g. sl_R:3")->required();

  auto* verify = app.add_subcommand("verify", "Verify a certificate");
  verify->add_option("cert", path, "certificate JSON file")->required();
  verify->add_flag("--with-transversal", with_transversal, "also search for a transversal maximal flat");
  verify->add_option("--seed", seed, "seed mixed into the certificate hash");

  auto* generate = app.add_subcommand("generate", "Emit a bundled certificate");
  generate->add_option("pair_id", pair_id, "embedding identifier")->required();
  generate->add_option("--param", params, "parameter key=N (repeatable)");
  generate->add_option("-o", file, "output file")->required();

  auto* flats = app.add_subcommand("flats", "Maximal flat transversal to a certified subspace");
  flats->add_option("space", space)->required();
  flats->add_option("--transversal", path, "certificate JSON file")->required();
  flats->add_option("--budget", budget, "maximum number of trials");
  flats->add_option("--seed", seed);

  auto* orbit = app.add_subcommand("orbit", "Isotropy orbit through a vector of p");
  orbit->add_option("space", space)->required();
  orbit->add_option("--vector", vec, "p-coordinates, e.g. 1,2,0,0,0 or 1/2,0,...")->required();
  orbit->add_flag("--symmetric-test", symmetric, "reflection test for symmetric submanifolds");
  orbit->add_flag("--curvature-normals", normals, "curvature normals of a principal orbit");

  auto* search = app.add_subcommand("search", "Numerical search for Lie triple systems");
  Index codim = 0, probe_max = 0;
  int restarts = 50;
  search->add_option("space", space)->required();
  auto* codim_opt = search->add_option("--codim", codim, "codimension to search");
  search->add_option("--restarts", restarts, "random restarts");
  search->add_option("--seed", seed);
  auto* probe_opt = search->add_option("--probe-max", probe_max, "run the index probe for codim 1..C");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (catalog_list->parsed()) return cmd_catalog(out);
    if (rank_cmd->parsed()) return cmd_rank(out, space);
    if (verify->parsed()) return cmd_verify(out, path, with_transversal, seed);
    if (generate->parsed()) return cmd_generate(out, pair_id, params, file);
    if (flats->parsed()) return cmd_flats(out, space, path, budget, seed);
    if (orbit->parsed()) return cmd_orbit(out, space, vec, symmetric, normals);
    if (search->parsed()) {
      SearchConfig cfg;
      cfg.restarts = restarts;
      cfg.seed = seed;
      std::optional<Index> c, pm;
      if (codim_opt->count()) c = codim;
      if (probe_opt->count()) pm = probe_max;
      return cmd_search(out, space, c, cfg, pm);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace symspace
