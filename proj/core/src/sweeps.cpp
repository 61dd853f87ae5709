#include "osm/sweeps.hpp"

#include <chrono>

namespace osm {

TransmissionParams tuned_transmission(Family family, const ProblemParams& pp, double h, double& max_rho,
                                      const MinMaxOptions& options) {
  const auto grid = frequency_grid(pp, h);
  if (family == Family::dirichlet) {
    TransmissionParams tp = DirichletTransmission{};
    max_rho = sampled_max_rho(pp, tp, grid, options);
    return tp;
  }
  const auto choice = numeric_minmax(family, pp, grid, options);
  max_rho = choice.numeric_rho;
  return choice.params;
}

SweepRow run_case(const ProblemParams& pp, Family family, double h, const SweepOptions& options) {
  SweepRow row;
  row.h = h;
  row.J = pp.J;
  row.family = family;
  const auto tp = tuned_transmission(family, pp, h, row.predicted_rho, options.minmax);

  const auto start = std::chrono::steady_clock::now();
  SolveOptions so;
  so.seed = options.seed;
  so.threads = options.threads;
  const auto dp = discretize(pp, h, ZeroForcing{});
  const auto subs = strip_partition(dp, tp, options.threads);
  SolveReport rep;
  if (options.mode == SolverMode::stationary) {
    so.itmax = options.itmax > 0 ? options.itmax : 3000;
    rep = stationary_solve(dp, subs, so);
  } else {
    so.itmax = options.itmax > 0 ? options.itmax : 500;
    rep = gmres_solve(dp, subs, so);
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  row.iterations = rep.iterations;
  row.contraction = rep.contraction;
  row.converged = rep.converged;
  row.diverged = rep.diverged;
  return row;
}

std::vector<SweepRow> sweep_mesh(const ProblemParams& pp, Family family, std::span<const double> hs,
                                 const SweepOptions& options) {
  std::vector<SweepRow> rows;
  for (double h : hs) {
    auto local = pp;
    local.delta = 2.0 * h;
    rows.push_back(run_case(local, family, h, options));
  }
  return rows;
}

std::vector<SweepRow> sweep_subdomains(const ProblemParams& pp, Family family, std::span<const int> Js, double h,
                                       SubdomainMode mode, const SweepOptions& options) {
  const double width = pp.J * pp.L;
  std::vector<SweepRow> rows;
  for (int J : Js) {
    auto local = pp;
    local.J = J;
    local.delta = 2.0 * h;
    if (mode == SubdomainMode::fixed_global) local.L = width / J;
    rows.push_back(run_case(local, family, h, options));
  }
  return rows;
}

}  // namespace osm
