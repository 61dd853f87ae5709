#pragma once

#include <string_view>
#include <vector>

#include "osm/spectral.hpp"
#include "osm/symbol.hpp"

namespace osm {

struct OptimizationScope {
  enum class Kind { two_subdomain, finite_J, infinite_J };

  Kind kind = Kind::finite_J;
  int J = 2;

  static OptimizationScope two_subdomain() { return {Kind::two_subdomain, 2}; }
  static OptimizationScope finite(int J) { return {Kind::finite_J, J}; }
  static OptimizationScope infinite() { return {Kind::infinite_J, 0}; }
};

std::string_view scope_name(const OptimizationScope& scope);

struct OptimizedChoice {
  TransmissionParams params;
  OptimizationScope scope;
  double delta = 0.0;
  double constant_used = 0.0;  // K, K_J or K_inf
  double predicted_rho = 0.0;  // 1 - c delta^e from the asymptotic expansion
  double numeric_rho = 0.0;    // sampled min-max value (numeric_minmax only)
  std::vector<SpectrumPoint> maxima;
  bool stalled = false;
  bool extrapolated = false;  // Ventcell with infinite_J: K_inf in the finite-J formulas
  int evaluations = 0;
};

/// s = lambda(pi / Lhat), the lowest Fourier mode, as used by every constant.
Complex lowest_mode_symbol(const ProblemParams& pp);

/// Two-subdomain constant for the outer boundary condition in `pp`.
double constant_K(const ProblemParams& pp);
/// Re[ s (e^{2sL} + 1 - 2 cos(pi/J) e^{sL}) / (e^{2sL} - 1) ]
double constant_KJ(const ProblemParams& pp, int J);
/// Re[ s (e^{sL} - 1) / (e^{sL} + 1) ]
double constant_Kinf(const ProblemParams& pp);

double scope_constant(const ProblemParams& pp, const OptimizationScope& scope);

/// Closed-form asymptotically optimized parameters for small overlap `delta`.
/// Throws for the Dirichlet family, which has nothing to optimize.
OptimizedChoice asymptotic_params(Family family, const OptimizationScope& scope, const ProblemParams& pp,
                                  double delta);

struct MinMaxOptions {
  int max_evaluations_per_start = 2000;
  double relative_tolerance = 1e-8;
  double initial_log_step = 0.3;
  // Grids up to this many modes are scanned exhaustively; larger grids use
  // every low mode plus a geometric subsample of the rest.
  int exhaustive_modes = 4096;
  int geometric_samples = 512;
  int threads = 1;
};

/// Sampled max of rho(T(k)) over the grid with golden-section refinement of
/// every local maximum.
double sampled_max_rho(const ProblemParams& pp, const TransmissionParams& tp, const FrequencyGrid& grid,
                       const MinMaxOptions& options = {});

/// Minimizes the sampled max over the family's coefficients with Nelder-Mead
/// on log-coefficients, started from the finite-J asymptotic seed and from
/// the seed with each coefficient halved or doubled in turn.
OptimizedChoice numeric_minmax(Family family, const ProblemParams& pp, const FrequencyGrid& grid,
                               const MinMaxOptions& options = {});

/// k_min endpoint value plus every refined interior local maximum of rho,
/// sorted by k; the k_max endpoint is included when it is a boundary maximum.
std::vector<SpectrumPoint> equioscillation_report(const TransmissionParams& tp, const ProblemParams& pp,
                                                  const FrequencyGrid& grid, const MinMaxOptions& options = {});

}  // namespace osm
