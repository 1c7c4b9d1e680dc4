#pragma once

#include "symspace/catalog.hpp"

#include <map>

namespace symspace {

struct Claims {
  Index codim = 0;
  bool is_lts = true;
  Index abelian_dim = 0;
  Index sigma_rank = 0;
  Index index_upper_bound = 0;
  bool operator==(const Claims&) const = default;
};

/// "This subspace of p is a Lie triple system of codimension c".
/// Basis vectors are coordinates over the catalog basis of g, column-echelon normalized.
struct Certificate {
  std::string space;
  std::vector<VectorQ> basis;
  Claims claims;
  std::string provenance;
};

/// Canonical JSON text; rationals are strings "p/q".
std::string to_json(const Certificate& cert);
/// Throws kParse on malformed input.
Certificate certificate_from_json(std::string_view text);

/// Certificate for W (p-coordinates) with claims computed from W itself.
Certificate make_certificate(const Model& model, const SubspaceQ& w, std::string provenance,
                             std::uint64_t seed = 0);

/// p-coordinates of the certified subspace; throws kNotInP if a vector leaves p.
SubspaceQ certified_subspace(const Model& model, const Certificate& cert);

/// Identifiers accepted by generate_certificate.
std::vector<std::string> pair_ids();

using PairParams = std::map<std::string, int>;

/// Bundled embedding `pair_id`; throws kUnknownPair or kUnsupportedParameters.
Certificate generate_certificate(const std::string& pair_id, const PairParams& params = {});

enum class CheckStatus { kPass, kFail, kSkip };
const char* to_string(CheckStatus status);

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::kSkip;
  std::string detail;
};

struct Report {
  std::string space;
  std::vector<Check> checks;
  bool overall() const;
  const Check* find(std::string_view name) const;
};

struct VerifyOptions {
  bool with_transversal = false;
  int budget = 1000;
  std::uint64_t seed = 0;  // mixed with the hash of the certificate bytes
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

/// Runs every check in order; later checks are skipped when their inputs are invalid.
/// `seed_source` is the byte string random subchecks are seeded from (the file contents).
Report verify_certificate(const Certificate& cert, std::string_view seed_source, const VerifyOptions& options = {});
Report verify_certificate(const Certificate& cert, const VerifyOptions& options = {});

std::string format_report(const Report& report);

}  // namespace symspace
