#include "osm/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "osm/error.hpp"
#include "osm/parallel.hpp"

namespace osm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pw(double base, double e) { return std::pow(base, e); }

// Wavenumbers examined by the inner max.
std::vector<double> scan_wavenumbers(const FrequencyGrid& grid, const MinMaxOptions& opt) {
  if (grid.M <= opt.exhaustive_modes) return grid.samples;
  std::vector<int> modes;
  const int low = std::min(64, grid.M);
  for (int m = 1; m <= low; ++m) modes.push_back(m);
  const double ratio = std::log(static_cast<double>(grid.M) / low);
  for (int i = 1; i <= opt.geometric_samples; ++i) {
    const int m = static_cast<int>(std::lround(low * std::exp(ratio * i / opt.geometric_samples)));
    if (m > modes.back()) modes.push_back(std::min(m, grid.M));
  }
  std::vector<double> ks;
  ks.reserve(modes.size());
  for (int m : modes) ks.push_back(grid.samples[m - 1]);
  return ks;
}

std::vector<double> scan(const ProblemParams& pp, const TransmissionParams& tp, const std::vector<double>& ks,
                         int threads) {
  std::vector<double> rho(ks.size());
  parallel_for(ks.size(), threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) rho[i] = convergence_factor(ks[i], pp, tp);
  });
  return rho;
}

SpectrumPoint golden_max(const ProblemParams& pp, const TransmissionParams& tp, double a, double b,
                         SpectrumPoint best) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - g * (b - a);
  double x2 = a + g * (b - a);
  double f1 = convergence_factor(x1, pp, tp);
  double f2 = convergence_factor(x2, pp, tp);
  for (int it = 0; it < 40 && (b - a) > 1e-10 * b; ++it) {
    if (f1 > f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = convergence_factor(x1, pp, tp);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = convergence_factor(x2, pp, tp);
    }
  }
  if (f1 > best.rho) best = {x1, f1};
  if (f2 > best.rho) best = {x2, f2};
  return best;
}

struct Extrema {
  SpectrumPoint first;
  std::vector<SpectrumPoint> interior;
  std::optional<SpectrumPoint> last;
};

Extrema extrema(const ProblemParams& pp, const TransmissionParams& tp, const std::vector<double>& ks,
                const std::vector<double>& rho) {
  Extrema ex;
  const std::size_t n = ks.size();
  ex.first = {ks[0], rho[0]};
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (rho[i] > rho[i - 1] && rho[i] >= rho[i + 1])
      ex.interior.push_back(golden_max(pp, tp, ks[i - 1], ks[i + 1], {ks[i], rho[i]}));
  }
  if (n > 1 && rho[n - 1] > rho[n - 2]) ex.last = SpectrumPoint{ks[n - 1], rho[n - 1]};
  return ex;
}

double max_of(const Extrema& ex) {
  double m = ex.first.rho;
  for (const auto& p : ex.interior) m = std::max(m, p.rho);
  if (ex.last) m = std::max(m, ex.last->rho);
  return m;
}

struct NelderMeadResult {
  std::vector<double> x;
  double f = kInf;
  int evaluations = 0;
  bool stalled = false;
};

template <class F>
NelderMeadResult nelder_mead(F&& f, std::vector<double> x0, double step, double tol, int max_evals) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> fv(n + 1);
  NelderMeadResult res;
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    return f(x);
  };
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;
  for (std::size_t i = 0; i <= n; ++i) fv[i] = eval(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  while (true) {
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t d = 0; d < n; ++d)
        diameter = std::max(diameter, std::abs(simplex[i][d] - simplex[best][d]));
    const bool flat = std::isfinite(fv[worst]) && fv[worst] - fv[best] <= tol * std::abs(fv[best]);
    if (flat) break;
    if (diameter < 1e-10) {
      res.stalled = true;
      break;
    }
    if (res.evaluations >= max_evals) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[i][d] / static_cast<double>(n);
    }
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t d = 0; d < n; ++d) x[d] = centroid[d] + t * (simplex[worst][d] - centroid[d]);
      return x;
    };
    auto xr = along(-1.0);
    const double fr = eval(xr);
    if (fr < fv[best]) {
      auto xe = along(-2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        fv[worst] = fe;
      } else {
        simplex[worst] = xr;
        fv[worst] = fr;
      }
    } else if (fr < fv[second]) {
      simplex[worst] = xr;
      fv[worst] = fr;
    } else {
      const bool outside = fr < fv[worst];
      auto xc = along(outside ? -0.5 : 0.5);
      const double fc = eval(xc);
      if (fc < (outside ? fr : fv[worst])) {
        simplex[worst] = xc;
        fv[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t d = 0; d < n; ++d) simplex[i][d] = simplex[best][d] + 0.5 * (simplex[i][d] - simplex[best][d]);
          fv[i] = eval(simplex[i]);
        }
      }
    }
  }
  const auto it = std::min_element(fv.begin(), fv.end());
  res.x = simplex[static_cast<std::size_t>(it - fv.begin())];
  res.f = *it;
  return res;
}

}  // namespace

std::string_view scope_name(const OptimizationScope& scope) {
  switch (scope.kind) {
    case OptimizationScope::Kind::two_subdomain: return "two_subdomain";
    case OptimizationScope::Kind::finite_J: return "finite_J";
    case OptimizationScope::Kind::infinite_J: return "infinite_J";
  }
  return "?";
}

Complex lowest_mode_symbol(const ProblemParams& pp) { return lambda(std::numbers::pi / pp.Lhat, pp); }

double constant_K(const ProblemParams& pp) {
  const Complex s = lowest_mode_symbol(pp);
  const Complex e2 = std::exp(-2.0 * s * pp.L);
  if (pp.dirichlet_outer()) return std::real(s * (1.0 + e2) / (1.0 - e2));
  const auto& r = std::get<RobinOuter>(pp.outer_bc);
  const Complex num = (r.p_b + s) * (r.p_a + s) - (s - r.p_b) * (s - r.p_a) * e2 * e2;
  const Complex den = ((s - r.p_a) * e2 + s + r.p_a) * ((s - r.p_b) * e2 + s + r.p_b);
  return std::real(s * num / den);
}

double constant_KJ(const ProblemParams& pp, int J) {
  if (J < 2) throw Error(ErrorKind::invalid_argument, "K_J needs J >= 2");
  const Complex s = lowest_mode_symbol(pp);
  const Complex e1 = std::exp(-s * pp.L);
  const double c = std::cos(std::numbers::pi / J);
  return std::real(s * (1.0 + e1 * e1 - 2.0 * c * e1) / (1.0 - e1 * e1));
}

double constant_Kinf(const ProblemParams& pp) {
  const Complex s = lowest_mode_symbol(pp);
  const Complex e1 = std::exp(-s * pp.L);
  return std::real(s * (1.0 - e1) / (1.0 + e1));
}

double scope_constant(const ProblemParams& pp, const OptimizationScope& scope) {
  switch (scope.kind) {
    case OptimizationScope::Kind::two_subdomain: return constant_K(pp);
    case OptimizationScope::Kind::finite_J: return constant_KJ(pp, scope.J);
    case OptimizationScope::Kind::infinite_J: return constant_Kinf(pp);
  }
  return 0.0;
}

OptimizedChoice asymptotic_params(Family family, const OptimizationScope& scope, const ProblemParams& pp,
                                  double delta) {
  if (!(delta > 0.0)) throw Error(ErrorKind::invalid_argument, "overlap must be positive");
  if (family == Family::dirichlet)
    throw Error(ErrorKind::invalid_argument, "Dirichlet transmission has no parameters to optimize");
  const double C = scope_constant(pp, scope);
  if (!(C > 0.0)) throw Error(ErrorKind::invalid_argument, "scope constant is not positive");
  const bool infinite = scope.kind == OptimizationScope::Kind::infinite_J;
  const double d = delta;

  OptimizedChoice out;
  out.scope = scope;
  out.delta = delta;
  out.constant_used = C;
  double rate = 0.0;
  switch (family) {
    case Family::robin1:
      out.params = Robin1{pw(2, -1.0 / 3) * pw(C, 2.0 / 3) * pw(d, -1.0 / 3)};
      rate = pw(2, 4.0 / 3) * pw(C, 1.0 / 3) * pw(d, 1.0 / 3);
      break;
    case Family::robin2:
      if (infinite) {
        out.params = Robin2{pw(C, 2.0 / 5) * pw(d, -3.0 / 5), pw(C, 4.0 / 5) * pw(d, -1.0 / 5)};
        rate = 2.0 * pw(C, 1.0 / 5) * pw(d, 1.0 / 5);
      } else {
        out.params = Robin2{pw(2, -2.0 / 5) * pw(C, 2.0 / 5) * pw(d, -3.0 / 5),
                            pw(2, -4.0 / 5) * pw(C, 4.0 / 5) * pw(d, -1.0 / 5)};
        rate = pw(2, 4.0 / 5) * pw(C, 1.0 / 5) * pw(d, 1.0 / 5);
      }
      break;
    case Family::ventcell1:
      out.params = Ventcell1{pw(2, -3.0 / 5) * pw(C, 4.0 / 5) * pw(d, -1.0 / 5),
                             pw(2, -1.0 / 5) * pw(C, -2.0 / 5) * pw(d, 3.0 / 5)};
      rate = pw(2, 8.0 / 5) * pw(C, 1.0 / 5) * pw(d, 1.0 / 5);
      out.extrapolated = infinite;
      break;
    case Family::ventcell2:
      out.params = Ventcell2{pw(2, -8.0 / 9) * pw(C, 8.0 / 9) * pw(d, -1.0 / 9),
                             pw(2, 2.0 / 9) * pw(C, -2.0 / 9) * pw(d, 7.0 / 9),
                             pw(2, -2.0 / 3) * pw(C, 2.0 / 3) * pw(d, -1.0 / 3),
                             pw(2, 4.0 / 9) * pw(C, -4.0 / 9) * pw(d, 5.0 / 9)};
      rate = pw(2, 8.0 / 9) * pw(C, 1.0 / 9) * pw(d, 1.0 / 9);
      out.extrapolated = infinite;
      break;
    case Family::dirichlet: break;
  }
  out.predicted_rho = 1.0 - rate;
  return out;
}

double sampled_max_rho(const ProblemParams& pp, const TransmissionParams& tp, const FrequencyGrid& grid,
                       const MinMaxOptions& options) {
  const auto ks = scan_wavenumbers(grid, options);
  return max_of(extrema(pp, tp, ks, scan(pp, tp, ks, options.threads)));
}

OptimizedChoice numeric_minmax(Family family, const ProblemParams& pp, const FrequencyGrid& grid,
                               const MinMaxOptions& options) {
  pp.validate();
  if (grid.samples.empty()) throw Error(ErrorKind::invalid_argument, "empty frequency grid");
  OptimizedChoice out = asymptotic_params(family, OptimizationScope::finite(pp.J), pp, pp.delta);
  const auto ks = scan_wavenumbers(grid, options);

  auto objective = [&](const std::vector<double>& x) {
    std::vector<double> c(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) c[i] = std::exp(x[i]);
    const auto tp = make_transmission(family, c);
    try {
      const double v = max_of(extrema(pp, tp, ks, scan(pp, tp, ks, options.threads)));
      return std::isfinite(v) ? v : kInf;
    } catch (const Error&) {
      return kInf;
    }
  };

  std::vector<double> seed;
  for (double c : coefficients(out.params)) seed.push_back(std::log(c));
  std::vector<std::vector<double>> starts{seed};
  for (std::size_t i = 0; i < seed.size(); ++i) {
    for (double factor : {0.5, 2.0}) {
      auto s = seed;
      s[i] += std::log(factor);
      starts.push_back(s);
    }
  }

  NelderMeadResult best;
  int evaluations = 0;
  for (const auto& s : starts) {
    auto r = nelder_mead(objective, s, options.initial_log_step, options.relative_tolerance,
                         options.max_evaluations_per_start);
    evaluations += r.evaluations;
    if (r.f < best.f) best = std::move(r);
  }
  if (best.x.empty()) best.x = seed;
  // Restarting from the winner with a fresh simplex unsticks the method at
  // the kinks the max creates.
  for (double step : {0.1, 0.02}) {
    auto r = nelder_mead(objective, best.x, step, options.relative_tolerance, options.max_evaluations_per_start);
    evaluations += r.evaluations;
    if (r.f <= best.f) best = std::move(r);
  }

  std::vector<double> c(best.x.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = std::exp(best.x[i]);
  out.params = make_transmission(family, c);
  out.numeric_rho = best.f;
  out.stalled = best.stalled;
  out.evaluations = evaluations;
  out.extrapolated = false;
  out.maxima = equioscillation_report(out.params, pp, grid, options);
  return out;
}

std::vector<SpectrumPoint> equioscillation_report(const TransmissionParams& tp, const ProblemParams& pp,
                                                  const FrequencyGrid& grid, const MinMaxOptions& options) {
  if (grid.samples.empty()) throw Error(ErrorKind::invalid_argument, "empty frequency grid");
  const auto ks = scan_wavenumbers(grid, options);
  const auto ex = extrema(pp, tp, ks, scan(pp, tp, ks, options.threads));
  std::vector<SpectrumPoint> out{ex.first};
  out.insert(out.end(), ex.interior.begin(), ex.interior.end());
  if (ex.last) out.push_back(*ex.last);
  return out;
}

}  // namespace osm
