#include <chrono>
#include <cmath>

#include "osm/schwarz.hpp"

namespace osm {

namespace {

// Rotation [c s; -conj(s) c] that zeroes b against a.
void givens(Complex a, Complex b, double& c, Complex& s) {
  const double na = std::abs(a);
  const double t = std::hypot(na, std::abs(b));
  if (t == 0.0) {
    c = 1.0;
    s = 0.0;
  } else if (na == 0.0) {
    c = 0.0;
    s = 1.0;
  } else {
    c = na / t;
    s = (a / na) * std::conj(b) / t;
  }
}

}  // namespace

SolveReport gmres_solve(const DiscreteProblem& dp, std::span<const Subdomain> subs, const Vector& rhs, Vector& u,
                        const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SolveReport rep;
  rep.seed = options.seed;
  auto precondition = [&](const Vector& v) -> Vector {
    return subs.empty() ? v : apply_preconditioner(subs, v, options.threads);
  };

  u = Vector::Zero(rhs.size());
  const double beta = rhs.norm();
  rep.error_history.push_back(1.0);
  if (beta == 0.0) {
    rep.converged = true;
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
  }

  const int m = std::max(options.itmax, 0);
  std::vector<Vector> V;
  V.reserve(static_cast<std::size_t>(m) + 1);
  V.push_back(rhs / beta);
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(m + 1, m);
  std::vector<double> cs(static_cast<std::size_t>(m));
  std::vector<Complex> sn(static_cast<std::size_t>(m));
  Eigen::VectorXcd g = Eigen::VectorXcd::Zero(m + 1);
  g[0] = beta;

  int k = 0;
  while (k < m) {
    Vector w = dp.A * precondition(V[static_cast<std::size_t>(k)]);
    const double wnorm = w.norm();
    for (int i = 0; i <= k; ++i) {
      H(i, k) = V[static_cast<std::size_t>(i)].dot(w);
      w -= H(i, k) * V[static_cast<std::size_t>(i)];
    }
    const double sub = w.norm();
    H(k + 1, k) = sub;
    for (int i = 0; i < k; ++i) {
      const Complex a = H(i, k), b = H(i + 1, k);
      H(i, k) = cs[i] * a + sn[i] * b;
      H(i + 1, k) = -std::conj(sn[i]) * a + cs[i] * b;
    }
    givens(H(k, k), H(k + 1, k), cs[k], sn[k]);
    H(k, k) = cs[k] * H(k, k) + sn[k] * H(k + 1, k);
    H(k + 1, k) = 0.0;
    g[k + 1] = -std::conj(sn[k]) * g[k];
    g[k] = cs[k] * g[k];
    ++k;

    const double res = std::abs(g[k]) / beta;
    rep.error_history.push_back(res);
    if (res < options.tol) {
      rep.converged = true;
      break;
    }
    if (sub < 1e-14 * std::max(wnorm, 1.0)) {
      // Lucky breakdown: the Krylov space is invariant, the iterate is exact.
      rep.converged = true;
      break;
    }
    V.push_back(w / sub);
  }
  rep.iterations = k;

  if (k > 0) {
    const Eigen::VectorXcd y =
        H.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
    Vector z = Vector::Zero(rhs.size());
    for (int i = 0; i < k; ++i) z += y[i] * V[static_cast<std::size_t>(i)];
    u = precondition(z);
  }
  rep.final_residual = (rhs - dp.A * u).norm() / beta;
  rep.contraction = contraction_estimate(rep.error_history);
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

SolveReport gmres_solve(const DiscreteProblem& dp, std::span<const Subdomain> subs, const SolveOptions& options) {
  Vector u;
  return gmres_solve(dp, subs, random_vector(dp.size(), options.seed), u, options);
}

}  // namespace osm
