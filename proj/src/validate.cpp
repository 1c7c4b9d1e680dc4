#include "symspace/catalog.hpp"
#include "symspace/flats.hpp"

namespace symspace {

CatalogInvariants catalog_invariants(const Model& model) {
  return {model.dim_p(), rank(model).rank, model.dim_k(), killing_form(model.algebra()).signature()};
}

ModelValidation validate_model(const Model& model, std::uint64_t seed) {
  ModelValidation out;
  out.jacobi_zero = jacobi_residual(model.algebra()).is_zero();
  out.dim_p_matches = model.dim_p() == model.expected_dim_p();
  const RankResult rk = rank(model, seed);
  out.rank = rk.rank;
  out.rank_matches = rk.stable && rk.rank == model.expected_rank();
  out.pp_spans_k = bracket_span(model, SubspaceQ::full(model.dim_p())).dim() == model.dim_k();
  const VectorQ x = model.p_to_g(VectorQ::Unit(model.dim_p(), 0));
  out.ideal_closure_full = ideal_closure(model.algebra(), MatrixQ(x)).dim() == model.dim_g();
  out.roots_irreducible = restricted_roots(model, standard_flat(model)).irreducible();
  return out;
}

}  // namespace symspace
