#pragma once

#include "symspace/symmetric_space.hpp"

#include <functional>
#include <string_view>

namespace symspace {

enum class Family { kSlR, kSlC, kSo, kSu, kSpR, kSp, kG2Split };

struct SpaceSpec {
  Family family;
  std::vector<int> params;
  bool operator==(const SpaceSpec&) const = default;
};

/// Parses "sl_R:3", "so:3,4", "su:1,2", "sp_R:2", "sp:1,2", "sl_C:3", "g2_split".
SpaceSpec parse_space(std::string_view text);
std::string format_space(const SpaceSpec& spec);

/// Concrete realization of g used to build the model: the basis of g as vectors of
/// an ambient space (flattened real matrices, or sl3 + R^3 + R^3 for split g2).
struct AmbientRep {
  Index matrix_size = 0;  // N for N x N matrices, 0 otherwise
  Index ambient_dim = 0;
  std::vector<VectorQ> basis;
  std::function<VectorQ(const VectorQ&, const VectorQ&)> bracket;
  std::vector<Index> pivot_rows;
  MatrixQ pivot_inverse;
};

class Model : public SymmetricSpace {
 public:
  Model(SymmetricSpace space, SpaceSpec spec, std::string label, Index expected_dim_p,
        Index expected_rank, AmbientRep rep);

  Family family() const { return spec_.family; }
  const std::vector<int>& params() const { return spec_.params; }
  const SpaceSpec& spec() const { return spec_; }
  std::string specifier() const { return format_space(spec_); }
  const std::string& label() const { return label_; }
  Index expected_dim_p() const { return expected_dim_p_; }
  Index expected_rank() const { return expected_rank_; }
  const AmbientRep& rep() const { return rep_; }

  VectorQ to_ambient(const VectorQ& g_coords) const;
  std::optional<VectorQ> from_ambient(const VectorQ& ambient) const;

  /// Defining matrix of a vector of g (matrix families only).
  MatrixQ matrix_of(const VectorQ& g_coords) const;
  std::optional<VectorQ> coordinates_of(const MatrixQ& m) const;
  /// p-coordinates of a matrix; throws if it is not in p.
  VectorQ p_vector(const MatrixQ& m) const;

 private:
  SpaceSpec spec_;
  std::string label_;
  Index expected_dim_p_;
  Index expected_rank_;
  AmbientRep rep_;
};

Model build_space(const SpaceSpec& spec);
Model build_space(std::string_view specifier);

/// Specifiers of every shipped model.
std::vector<std::string> catalog_specifiers();

struct CatalogInvariants {
  Index n;  // dim p
  Index r;  // rank
  Index dim_k;
  Signature killing;
};

CatalogInvariants catalog_invariants(const Model& model);

struct ModelValidation {
  bool jacobi_zero = false;
  bool dim_p_matches = false;
  bool rank_matches = false;
  bool pp_spans_k = false;
  bool ideal_closure_full = false;
  bool roots_irreducible = false;
  Index rank = 0;
  bool ok() const {
    return jacobi_zero && dim_p_matches && rank_matches && pp_spans_k && ideal_closure_full &&
           roots_irreducible;
  }
};

/// Checks the model invariants that need rank and root data.
ModelValidation validate_model(const Model& model, std::uint64_t seed = 1);

}  // namespace symspace
