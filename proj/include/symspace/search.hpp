#pragma once

#include "symspace/triple.hpp"

namespace symspace {

struct SearchConfig {
  Index codim = 1;
  int restarts = 50;
  int max_iters = 2000;
  double tol_accept = 1e-8;
  double tol_reject = 1e-2;
  std::uint64_t seed = 0;
  std::int64_t max_den = 10000;  // continued-fraction denominator cap for refinement
  unsigned threads = 0;          // 0: hardware concurrency
};

/// Throws kInvalidConfig unless 1 <= codim < dim_p and tol_accept < tol_reject.
void validate_config(const SearchConfig& config, Index dim_p);

/// Closure defect of a plane, in coordinates orthonormal for the form on p.
/// f(V) = sum over orthonormal basis triples of |(I - V V^T) [[v_i, v_j], v_l]|^2.
class LtsObjective {
 public:
  explicit LtsObjective(const SymmetricSpace& space);

  Index dim() const { return n_; }
  double value(const Eigen::MatrixXd& v) const;
  /// Value and Riemannian gradient (horizontal, (I - V V^T) times the Euclidean gradient).
  double value_and_gradient(const Eigen::MatrixXd& v, Eigen::MatrixXd& grad) const;

  /// Orthonormal coordinates u relate to p-coordinates x by x = M u.
  const Eigen::MatrixXd& to_p() const { return m_; }
  /// Columns: exact orthogonal (unnormalized) basis of p matching the u-axes.
  const MatrixQ& orthogonal_basis() const { return b_; }

 private:
  double evaluate(const Eigen::MatrixXd& v, Eigen::MatrixXd* grad) const;

  Index n_ = 0;
  std::vector<double> t_;  // t_[((a*n+b)*n+c)*n+d]: d-th component of [[u_a,u_b],u_c]
  Eigen::MatrixXd m_;
  MatrixQ b_;
};

/// Orthonormal n x m frame with Gaussian-distributed span.
Eigen::MatrixXd random_frame(Index n, Index m, std::mt19937_64& rng);
Eigen::MatrixXd retract(const Eigen::MatrixXd& v);

/// Central differences of f along an orthonormal basis of the horizontal space at V.
Eigen::MatrixXd finite_difference_gradient(const LtsObjective& f, const Eigen::MatrixXd& v, double h = 1e-5);

enum class SearchStatus { kAccepted, kNumericalOnly, kInconclusive, kRejected };
std::string to_string(SearchStatus status);

struct SearchResult {
  Index codim = 0;
  double best_residual = 0.0;  // sqrt of the objective at the best restart
  Subspace<double> best_subspace;  // p-coordinates
  std::vector<double> residual_histogram;  // best residual of every restart, in restart order
  bool accepted = false;  // best_residual <= tol_accept and an exact refinement verified
  std::optional<SubspaceQ> refined_exact;
  SearchStatus status = SearchStatus::kRejected;
};

/// Multi-start Riemannian descent for a Lie triple system of the given codimension.
SearchResult lts_search(const SymmetricSpace& space, const SearchConfig& config);

struct ProbeResult {
  Index rank = 0;  // proven lower bound for the index
  std::optional<Index> index;  // least accepted codimension, if any <= cmax
  std::vector<Index> skipped;  // codimensions below the rank, never searched
  std::vector<SearchResult> runs;
};

ProbeResult index_probe(const SymmetricSpace& space, Index cmax, SearchConfig config);

}  // namespace symspace
