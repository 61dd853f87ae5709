#pragma once

#include <Eigen/SparseLU>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "osm/discrete.hpp"

namespace osm {

using LocalSolver = Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>;

/// One strip of the overlapping decomposition. Its unknowns are the whole
/// grid columns first_col..last_col, so the restriction is a contiguous
/// segment of the global vector starting at `offset`.
struct Subdomain {
  int index = 1;  // 1-based
  int first_col = 1;
  int last_col = 1;
  int owned_first = 1;  // Boolean partition weights: owned columns
  int owned_last = 1;
  Eigen::Index offset = 0;
  Eigen::Index size = 0;
  SparseMatrix local_operator;
  std::shared_ptr<const LocalSolver> factorization;

  Vector restrict(const Vector& global) const { return global.segment(offset, size); }
  /// Diagonal of D_i as 0/1 per local unknown.
  std::vector<int> weights(int ny) const;
};

/// Strip decomposition with the interface rows of `tp`. Dirichlet
/// transmission gives classical RAS (local matrices R_i A R_i^T); Robin and
/// Ventcell conditions replace the interface rows by their half-cell form
///
///   (2u_c - u_in - u_up/2 - u_dn/2)/h^2 + shift u_c/2 + (p/h) u_c
///     + (q/h)(2u_c - u_up - u_dn)/h^2.
///
/// Factorizes every local matrix; throws Error(singular_local_matrix)
/// naming the subdomain when a factorization fails.
std::vector<Subdomain> strip_partition(const DiscreteProblem& dp, const TransmissionParams& tp,
                                       int threads = 1);

/// z = sum_i R_i^T D_i A_i^{-1} R_i r
Vector apply_preconditioner(std::span<const Subdomain> subs, const Vector& r, int threads = 1);

/// u + M^{-1}(b - A u)
Vector ras_iterate(const DiscreteProblem& dp, std::span<const Subdomain> subs, const Vector& u, int threads = 1);

struct SolveReport {
  int iterations = 0;
  std::vector<double> error_history;  // relative error or residual, starts at 1
  bool converged = false;
  bool diverged = false;
  double contraction = 0.0;  // geometric mean of the last five ratios
  double final_residual = 0.0;
  double wall_time = 0.0;
  std::uint64_t seed = 0;
};

struct SolveOptions {
  double tol = 1e-6;
  int itmax = 3000;
  std::uint64_t seed = 0x5EED;
  int threads = 1;
};

/// Geometric mean of the last (up to) five ratios of a history.
double contraction_estimate(const std::vector<double>& history);

/// Uniform complex entries in the unit square.
Vector random_vector(Eigen::Index n, std::uint64_t seed);

/// Stationary Schwarz iteration from a random initial guess. The error is
/// measured against the exact discrete solution (zero when b = 0).
SolveReport stationary_solve(const DiscreteProblem& dp, std::span<const Subdomain> subs,
                             const SolveOptions& options = {});

/// Full GMRES (modified Gram-Schmidt, no restart) on A M^{-1} with a random
/// right-hand side and zero initial guess. An empty `subs` means no
/// preconditioner. Default itmax is 500.
SolveReport gmres_solve(const DiscreteProblem& dp, std::span<const Subdomain> subs,
                        const SolveOptions& options = {1e-6, 500, 0x5EED, 1});

/// Same, for a given right-hand side; the solution is written to `u`.
SolveReport gmres_solve(const DiscreteProblem& dp, std::span<const Subdomain> subs, const Vector& rhs,
                        Vector& u, const SolveOptions& options = {1e-6, 500, 0x5EED, 1});

}  // namespace osm
