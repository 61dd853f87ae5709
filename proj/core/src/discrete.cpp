#include "osm/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "osm/error.hpp"

namespace osm {

namespace {

// n when x / h is within rounding of an integer n, -1 otherwise.
int grid_multiple(double x, double h) {
  const double r = x / h;
  const double n = std::round(r);
  return std::abs(r - n) <= 1e-8 * std::max(1.0, r) ? static_cast<int>(n) : -1;
}

[[noreturn]] void misaligned(const std::string& what) { throw Error(ErrorKind::grid_misalignment, what); }

}  // namespace

DiscreteProblem discretize(const ProblemParams& pp, double h, const Forcing& f) {
  if (!(h > 0.0)) throw Error(ErrorKind::invalid_argument, "mesh size must be positive");
  if (pp.J < 1) throw Error(ErrorKind::invalid_argument, "need at least one subdomain");
  if (!(pp.L > 0.0) || !(pp.Lhat > 0.0)) throw Error(ErrorKind::invalid_argument, "domain sizes must be positive");
  if (pp.eta < 0.0 || pp.epsilon < 0.0) throw Error(ErrorKind::invalid_argument, "eta and epsilon must be >= 0");

  const int nl = grid_multiple(pp.L, h);
  const int nh = grid_multiple(pp.Lhat, h);
  const int nd = grid_multiple(pp.delta, h);
  if (nl < 0) misaligned("L / h is not an integer");
  if (nh < 0) misaligned("Lhat / h is not an integer");
  if (nd < 0 || nd % 2 != 0 || nd == 0) misaligned("overlap is not a positive even multiple of h");
  if (nl < 4) throw Error(ErrorKind::invalid_argument, "need h <= L / 4");
  if (nd >= 2 * nl) throw Error(ErrorKind::invalid_argument, "overlap too large for the subdomain width");

  DiscreteProblem dp;
  dp.h = h;
  dp.J = pp.J;
  dp.cells_per_subdomain = nl;
  dp.overlap_cells = nd;
  dp.nx = pp.J * nl - 1;
  dp.ny = nh - 1;
  dp.shift = Complex(pp.eta, -pp.epsilon);

  const double ih2 = 1.0 / (h * h);
  const Eigen::Index n = dp.size();
  std::vector<Eigen::Triplet<Complex, int>> entries;
  entries.reserve(static_cast<std::size_t>(5 * n));
  for (int c = 1; c <= dp.nx; ++c) {
    for (int r = 1; r <= dp.ny; ++r) {
      const int i = dp.index(c, r);
      entries.emplace_back(i, i, 4.0 * ih2 + dp.shift);
      if (c > 1) entries.emplace_back(i, dp.index(c - 1, r), -ih2);
      if (c < dp.nx) entries.emplace_back(i, dp.index(c + 1, r), -ih2);
      if (r > 1) entries.emplace_back(i, dp.index(c, r - 1), -ih2);
      if (r < dp.ny) entries.emplace_back(i, dp.index(c, r + 1), -ih2);
    }
  }
  dp.A.resize(n, n);
  dp.A.setFromTriplets(entries.begin(), entries.end());
  dp.A.makeCompressed();

  dp.b = Vector::Zero(n);
  std::visit(
      [&](const auto& src) {
        using T = std::decay_t<decltype(src)>;
        if constexpr (std::is_same_v<T, PointSource>) {
          const int c = std::clamp(static_cast<int>(std::lround(src.x / h)), 1, dp.nx);
          const int r = std::clamp(static_cast<int>(std::lround(src.y / h)), 1, dp.ny);
          dp.b[dp.index(c, r)] = -src.amplitude * ih2;
        } else if constexpr (std::is_same_v<T, FieldForcing>) {
          for (int c = 1; c <= dp.nx; ++c)
            for (int r = 1; r <= dp.ny; ++r) dp.b[dp.index(c, r)] = -src.f(c * h, r * h);
        } else if constexpr (std::is_same_v<T, RandomForcing>) {
          std::mt19937_64 gen(src.seed);
          std::uniform_real_distribution<double> u(0.0, 1.0);
          for (Eigen::Index i = 0; i < n; ++i) {
            const double re = u(gen);
            dp.b[i] = -Complex(re, u(gen));
          }
        }
      },
      f);
  return dp;
}

}  // namespace osm
