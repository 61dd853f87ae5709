#include "osm/schwarz.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <string>

#include "osm/error.hpp"
#include "osm/parallel.hpp"

namespace osm {

namespace {

using Triplet = Eigen::Triplet<Complex, int>;

struct Edge {
  bool present = false;
  CoefficientSet coefs;
};

SparseMatrix local_matrix(const DiscreteProblem& dp, const Subdomain& s, const Edge& left, const Edge& right) {
  const int ny = dp.ny;
  const int ncols = s.last_col - s.first_col + 1;
  const double h = dp.h;
  const double ih2 = 1.0 / (h * h);
  auto at = [&](int c, int r) { return (c - s.first_col) * ny + (r - 1); };

  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(5 * ncols * ny));
  for (int c = s.first_col; c <= s.last_col; ++c) {
    const bool lrow = left.present && c == s.first_col;
    const bool rrow = right.present && c == s.last_col;
    for (int r = 1; r <= ny; ++r) {
      const int i = at(c, r);
      if (lrow || rrow) {
        const auto& cs = lrow ? left.coefs : right.coefs;
        const int inner = lrow ? c + 1 : c - 1;
        const double qh = cs.q / h * ih2;
        t.emplace_back(i, i, 2.0 * ih2 + 0.5 * dp.shift + cs.p / h + 2.0 * qh);
        t.emplace_back(i, at(inner, r), -ih2);
        if (r > 1) t.emplace_back(i, at(c, r - 1), -0.5 * ih2 - qh);
        if (r < ny) t.emplace_back(i, at(c, r + 1), -0.5 * ih2 - qh);
        continue;
      }
      t.emplace_back(i, i, 4.0 * ih2 + dp.shift);
      if (c > s.first_col) t.emplace_back(i, at(c - 1, r), -ih2);
      if (c < s.last_col) t.emplace_back(i, at(c + 1, r), -ih2);
      if (r > 1) t.emplace_back(i, at(c, r - 1), -ih2);
      if (r < ny) t.emplace_back(i, at(c, r + 1), -ih2);
    }
  }
  SparseMatrix m(s.size, s.size);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

}  // namespace

std::vector<int> Subdomain::weights(int ny) const {
  std::vector<int> w(static_cast<std::size_t>(size), 0);
  for (int c = owned_first; c <= owned_last; ++c)
    for (int r = 0; r < ny; ++r) w[static_cast<std::size_t>((c - first_col) * ny + r)] = 1;
  return w;
}

std::vector<Subdomain> strip_partition(const DiscreteProblem& dp, const TransmissionParams& tp, int threads) {
  validate(tp);
  if (dp.overlap_cells % 2 != 0) throw Error(ErrorKind::grid_misalignment, "overlap is not an even multiple of h");
  const int nl = dp.cells_per_subdomain;
  const int half = dp.overlap_cells / 2;
  const bool ras = family_of(tp) == Family::dirichlet;

  std::vector<Subdomain> subs(static_cast<std::size_t>(dp.J));
  for (int j = 1; j <= dp.J; ++j) {
    auto& s = subs[static_cast<std::size_t>(j - 1)];
    s.index = j;
    s.first_col = std::max(1, (j - 1) * nl - half);
    s.last_col = std::min(dp.nx, j * nl + half);
    s.owned_first = std::max(1, (j - 1) * nl);
    s.owned_last = std::min(dp.nx, j * nl - 1);
    s.offset = static_cast<Eigen::Index>(s.first_col - 1) * dp.ny;
    s.size = static_cast<Eigen::Index>(s.last_col - s.first_col + 1) * dp.ny;
  }

  parallel_for(subs.size(), threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      auto& s = subs[k];
      const int j = s.index;
      Edge left, right;
      if (!ras) {
        if (j > 1) left = {true, coefficient_set(tp, Side::minus, j - 1)};
        if (j < dp.J) right = {true, coefficient_set(tp, Side::plus, j)};
      }
      s.local_operator = local_matrix(dp, s, left, right);
      auto lu = std::make_shared<LocalSolver>();
      lu->analyzePattern(s.local_operator);
      lu->factorize(s.local_operator);
      if (lu->info() != Eigen::Success)
        throw Error(ErrorKind::singular_local_matrix,
                    "factorization of subdomain " + std::to_string(j) + " failed: " + lu->lastErrorMessage());
      s.factorization = std::move(lu);
    }
  });
  return subs;
}

Vector apply_preconditioner(std::span<const Subdomain> subs, const Vector& r, int threads) {
  Vector z = Vector::Zero(r.size());
  parallel_for(subs.size(), threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      const auto& s = subs[k];
      const Eigen::Index ny = s.size / (s.last_col - s.first_col + 1);
      const Vector y = s.factorization->solve(s.restrict(r));
      const Eigen::Index skip = (s.owned_first - s.first_col) * ny;
      const Eigen::Index len = (s.owned_last - s.owned_first + 1) * ny;
      z.segment(s.offset + skip, len) = y.segment(skip, len);
    }
  });
  return z;
}

Vector ras_iterate(const DiscreteProblem& dp, std::span<const Subdomain> subs, const Vector& u, int threads) {
  const Vector r = dp.b - dp.A * u;
  return u + apply_preconditioner(subs, r, threads);
}

Vector random_vector(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = u(gen);
    v[i] = Complex(re, u(gen));
  }
  return v;
}

double contraction_estimate(const std::vector<double>& history) {
  const std::size_t n = history.size();
  if (n < 2) return 0.0;
  const std::size_t k = std::min<std::size_t>(5, n - 1);
  return std::pow(history[n - 1] / history[n - 1 - k], 1.0 / static_cast<double>(k));
}

SolveReport stationary_solve(const DiscreteProblem& dp, std::span<const Subdomain> subs, const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SolveReport rep;
  rep.seed = options.seed;

  Vector exact = Vector::Zero(dp.size());
  if (dp.b.squaredNorm() > 0.0) {
    LocalSolver lu(dp.A);
    if (lu.info() != Eigen::Success) throw Error(ErrorKind::singular_local_matrix, "global factorization failed");
    exact = lu.solve(dp.b);
  }
  Vector u = random_vector(dp.size(), options.seed);
  const double e0 = (u - exact).norm();
  rep.error_history.push_back(1.0);
  while (rep.iterations < options.itmax) {
    u = ras_iterate(dp, subs, u, options.threads);
    ++rep.iterations;
    const double e = (u - exact).norm() / e0;
    rep.error_history.push_back(e);
    if (!std::isfinite(e) || e > 1e6) {
      rep.diverged = true;
      break;
    }
    if (e < options.tol) {
      rep.converged = true;
      break;
    }
  }
  rep.contraction = contraction_estimate(rep.error_history);
  rep.final_residual = (dp.b - dp.A * u).norm();
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace osm
