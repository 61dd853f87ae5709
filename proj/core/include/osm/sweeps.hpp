#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "osm/optimizer.hpp"
#include "osm/schwarz.hpp"

namespace osm {

enum class SolverMode { stationary, gmres };
enum class SubdomainMode { fixed_width, fixed_global };

struct SweepRow {
  double h = 0.0;
  int J = 0;
  Family family = Family::robin1;
  int iterations = 0;
  double contraction = 0.0;
  double predicted_rho = 0.0;  // max_k rho(T(k)) for the parameters used
  double seconds = 0.0;        // factorization plus iterations
  bool converged = false;
  bool diverged = false;
};

struct SweepOptions {
  SolverMode mode = SolverMode::stationary;
  std::uint64_t seed = 0x5EED;
  int threads = 1;
  int itmax = 0;  // 0 picks 3000 (stationary) or 500 (GMRES)
  MinMaxOptions minmax;
};

/// Transmission parameters for one run: the numeric min-max optimum on the
/// Fourier grid of mesh h, or Dirichlet transmission. `max_rho` receives the
/// max of rho(T(k)) over that grid.
TransmissionParams tuned_transmission(Family family, const ProblemParams& pp, double h, double& max_rho,
                                      const MinMaxOptions& options = {});

/// Optimizes, discretizes with f = 0 (stationary) or a random right-hand
/// side (GMRES) and solves one configuration with the overlap pp.delta.
SweepRow run_case(const ProblemParams& pp, Family family, double h, const SweepOptions& options = {});

/// One row per mesh size with delta = 2h.
std::vector<SweepRow> sweep_mesh(const ProblemParams& pp, Family family, std::span<const double> hs,
                                 const SweepOptions& options = {});

/// One row per subdomain count with delta = 2h. fixed_width keeps pp.L;
/// fixed_global keeps the global width pp.J * pp.L and sets L = width / J.
std::vector<SweepRow> sweep_subdomains(const ProblemParams& pp, Family family, std::span<const int> Js, double h,
                                       SubdomainMode mode, const SweepOptions& options = {});

}  // namespace osm
