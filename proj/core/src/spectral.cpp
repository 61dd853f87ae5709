#include "osm/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "osm/error.hpp"
#include "osm/parallel.hpp"

namespace osm {

namespace {

// A transmission coefficient that may be infinite (Dirichlet limit). Every
// formula below is a ratio in which each coefficient enters linearly; an
// infinite coefficient is divided out, which turns (l + p) into 1 and
// (l - p) into -1, and its "degree" is tracked so that a ratio whose
// numerator grows slower than its denominator correctly evaluates to 0.
struct Coef {
  double value = 0.0;
  bool infinite = false;
};

struct Term {
  Complex value;
  int degree = 0;
};

Complex plus(Complex l, Coef p) { return p.infinite ? Complex{1.0} : l + p.value; }
Complex minus(Complex l, Coef p) { return p.infinite ? Complex{-1.0} : l - p.value; }

// a*b*e1 - c*d*e2 where (a,c) share coefficient x and (b,d) share y.
Term bilinear(Complex l, Coef x, Coef y, Complex e1, Complex e2) {
  return {plus(l, x) * plus(l, y) * e1 - minus(l, x) * minus(l, y) * e2,
          int(x.infinite) + int(y.infinite)};
}

Complex ratio(const Term& num, const Term& den) {
  if (std::abs(den.value) < 1e-300) {
    throw Error(ErrorKind::singular_denominator, "singular denominator in interface coefficients");
  }
  if (num.degree < den.degree) return Complex{0.0};
  if (num.degree > den.degree) return Complex{std::numeric_limits<double>::infinity(), 0.0};
  return num.value / den.value;
}

Coef from_set(const CoefficientSet& s, double k) {
  return s.infinite ? Coef{0.0, true} : Coef{s.p + k * k * s.q, false};
}

// p_j^- and p_j^+ for j = 1..J, stored at index j.
struct SideCoefs {
  std::vector<Coef> minus;
  std::vector<Coef> plus;
};

SideCoefs side_coefficients(double k, const ProblemParams& pp, const TransmissionParams& tp) {
  SideCoefs s;
  s.minus.resize(static_cast<std::size_t>(pp.J) + 1);
  s.plus.resize(static_cast<std::size_t>(pp.J) + 1);
  for (int j = 1; j <= pp.J; ++j) {
    if (j >= 2) s.minus[j] = from_set(coefficient_set(tp, Side::minus, j - 1), k);
    if (j <= pp.J - 1) s.plus[j] = from_set(coefficient_set(tp, Side::plus, j), k);
  }
  if (const auto* robin = std::get_if<RobinOuter>(&pp.outer_bc)) {
    s.minus[1] = Coef{robin->p_a, false};
    s.plus[pp.J] = Coef{robin->p_b, false};
  } else {
    s.minus[1] = Coef{0.0, true};
    s.plus[pp.J] = Coef{0.0, true};
  }
  return s;
}

// Exponentials of the recurrence, all rescaled by e^{-l(L+delta)} so that
// every exponent has nonpositive real part.
struct Exps {
  Complex e_L;         // e^{-l L}
  Complex e_L2d;       // e^{-l (L + 2 delta)}
  Complex e_2Ld;       // e^{-l (2L + delta)}
  Complex e_d;         // e^{-l delta}
  Complex e_2Ld2;      // e^{-2 l (L + delta)}
};

Exps exponentials(Complex l, const ProblemParams& pp) {
  return {std::exp(-l * pp.L), std::exp(-l * (pp.L + 2.0 * pp.delta)), std::exp(-l * (2.0 * pp.L + pp.delta)),
          std::exp(-l * pp.delta), std::exp(-2.0 * l * (pp.L + pp.delta))};
}

Term denominator(Complex l, const SideCoefs& s, int j, const Exps& e) {
  return bilinear(l, s.plus[j], s.minus[j], Complex{1.0}, e.e_2Ld2);
}

InterfaceCoefficients coefficients_at(int j, Complex l, const SideCoefs& s, const Exps& e, int J) {
  InterfaceCoefficients c;
  if (j >= 2) {
    const Term d = denominator(l, s, j - 1, e);
    c.alpha_minus = ratio(bilinear(l, s.plus[j - 1], s.minus[j], e.e_L, e.e_L2d), d);
    // (l + p_j^-)(l - p_{j-1}^-) e^{-l(2L+d)} - (l - p_j^-)(l + p_{j-1}^-) e^{-l d}
    const Term num{plus(l, s.minus[j]) * minus(l, s.minus[j - 1]) * e.e_2Ld -
                       minus(l, s.minus[j]) * plus(l, s.minus[j - 1]) * e.e_d,
                   int(s.minus[j].infinite) + int(s.minus[j - 1].infinite)};
    c.beta_minus = ratio(num, d);
  }
  if (j <= J - 1) {
    const Term d = denominator(l, s, j + 1, e);
    c.alpha_plus = ratio(bilinear(l, s.minus[j + 1], s.plus[j], e.e_L, e.e_L2d), d);
    const Term num{plus(l, s.plus[j]) * minus(l, s.plus[j + 1]) * e.e_2Ld -
                       minus(l, s.plus[j]) * plus(l, s.plus[j + 1]) * e.e_d,
                   int(s.plus[j].infinite) + int(s.plus[j + 1].infinite)};
    c.beta_plus = ratio(num, d);
  }
  return c;
}

}  // namespace

InterfaceCoefficients interface_coeffs(int j, double k, const ProblemParams& pp, const TransmissionParams& tp) {
  if (j < 1 || j > pp.J) throw Error(ErrorKind::invalid_argument, "subdomain index out of range");
  const Complex l = lambda(k, pp);
  return coefficients_at(j, l, side_coefficients(k, pp, tp), exponentials(l, pp), pp.J);
}

std::vector<InterfaceCoefficients> all_interface_coeffs(double k, const ProblemParams& pp,
                                                        const TransmissionParams& tp) {
  const Complex l = lambda(k, pp);
  const auto sides = side_coefficients(k, pp, tp);
  const auto e = exponentials(l, pp);
  std::vector<InterfaceCoefficients> out(static_cast<std::size_t>(pp.J));
  for (int j = 1; j <= pp.J; ++j) out[j - 1] = coefficients_at(j, l, sides, e, pp.J);
  return out;
}

Eigen::MatrixXcd structured_iteration_matrix(std::span<const InterfaceCoefficients> coeffs) {
  const int J = static_cast<int>(coeffs.size());
  if (J < 2) throw Error(ErrorKind::invalid_argument, "iteration matrix needs J >= 2");
  const int n = 2 * (J - 1);
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(n, n);
  // R_+(b_j) sits at 2(j-1), R_-(a_j) at 2j-3.
  for (int j = 2; j <= J; ++j) {
    const auto& c = coeffs[j - 1];
    const int row = 2 * j - 3;
    t(row, 2 * (j - 2)) = c.beta_minus;
    if (j >= 3) t(row, 2 * j - 5) = c.alpha_minus;
  }
  for (int j = 1; j <= J - 1; ++j) {
    const auto& c = coeffs[j - 1];
    const int row = 2 * (j - 1);
    t(row, 2 * j - 1) = c.beta_plus;
    if (j + 1 <= J - 1) t(row, 2 * j) = c.alpha_plus;
  }
  return t;
}

IterationMatrix assemble_iteration_matrix(double k, const ProblemParams& pp, const TransmissionParams& tp) {
  const auto coeffs = all_interface_coeffs(k, pp, tp);
  return {structured_iteration_matrix(coeffs), k};
}

double spectral_radius(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  if (!m.allFinite()) throw Error(ErrorKind::invalid_argument, "matrix has non-finite entries");
  if (m.rows() == 1) return std::abs(m(0, 0));
  if (m.rows() == 2) {
    // closed form; the general solver is used for everything larger
    const Complex tr = m(0, 0) + m(1, 1);
    const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const Complex disc = std::sqrt(tr * tr - 4.0 * det);
    return std::max(std::abs(0.5 * (tr + disc)), std::abs(0.5 * (tr - disc)));
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver;
  solver.setMaxIterations(60 * static_cast<Eigen::Index>(m.rows()));
  solver.compute(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::eigensolver_failure,
                "eigensolver did not converge (matrix norm " + std::to_string(m.norm()) + ")");
  }
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double SpectrumCurve::max_rho() const {
  double best = 0.0;
  for (const auto& p : points) best = std::max(best, p.rho);
  return best;
}

double convergence_factor(double k, const ProblemParams& pp, const TransmissionParams& tp) {
  return spectral_radius(assemble_iteration_matrix(k, pp, tp));
}

SpectrumCurve convergence_curve(const ProblemParams& pp, const TransmissionParams& tp, std::span<const double> ks,
                                int threads) {
  if (ks.empty()) throw Error(ErrorKind::invalid_argument, "empty frequency grid");
  SpectrumCurve curve;
  curve.points.resize(ks.size());
  parallel_for(ks.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) curve.points[i] = {ks[i], convergence_factor(ks[i], pp, tp)};
  });
  return curve;
}

SpectrumCurve convergence_curve(const ProblemParams& pp, const TransmissionParams& tp, const FrequencyGrid& grid,
                                int threads) {
  return convergence_curve(pp, tp, std::span<const double>(grid.samples), threads);
}

double rho_highfreq(double k, const ProblemParams& pp, const TransmissionParams& tp) {
  const Complex l = lambda(k, pp);
  const double damping = std::exp(-l.real() * pp.delta);
  auto factor = [&](const CoefficientSet& s) {
    if (s.infinite) return 1.0;
    const double p = s.p + k * k * s.q;
    return std::abs((l - p) / (l + p));
  };
  const auto f = family_of(tp);
  if (is_two_sided(f)) {
    const double product = factor(coefficient_set(tp, Side::plus, 1)) * factor(coefficient_set(tp, Side::minus, 1));
    return std::sqrt(product) * damping;
  }
  return factor(coefficient_set(tp, Side::plus, 1)) * damping;
}

Eigen::MatrixXcd highfreq_matrix(double k, const ProblemParams& pp, const TransmissionParams& tp) {
  const Complex l = lambda(k, pp);
  const auto s = side_coefficients(k, pp, tp);
  const Complex e_d = std::exp(-l * pp.delta);
  std::vector<InterfaceCoefficients> coeffs(static_cast<std::size_t>(pp.J));
  auto asymptotic_beta = [&](Coef own, Coef other) -> Complex {
    // -(l - p_own)/(l + p_other) e^{-l delta}, with the infinite limits
    if (own.infinite && other.infinite) return e_d;
    if (other.infinite) return Complex{0.0};
    return -minus(l, own) / plus(l, other) * e_d;
  };
  for (int j = 1; j <= pp.J; ++j) {
    auto& c = coeffs[j - 1];
    if (j >= 2) c.beta_minus = asymptotic_beta(s.minus[j], s.plus[j - 1]);
    if (j <= pp.J - 1) c.beta_plus = asymptotic_beta(s.plus[j], s.minus[j + 1]);
  }
  return structured_iteration_matrix(coeffs);
}

double limiting_bound(double k, const ProblemParams& pp, double p_minus, double p_plus) {
  if (!(p_minus > 0.0) || !(p_plus > 0.0)) throw Error(ErrorKind::invalid_argument, "limiting_bound needs p > 0");
  const Complex l = lambda(k, pp);
  const auto e = exponentials(l, pp);
  const Coef pm{p_minus, false};
  const Coef pp_{p_plus, false};
  const Term d = bilinear(l, pp_, pm, Complex{1.0}, e.e_2Ld2);
  const Complex alpha = ratio(bilinear(l, pp_, pm, e.e_L, e.e_L2d), d);
  // (l^2 - p^2)(e^{-lL} - e^{lL}) rescaled by e^{-l(L+delta)}
  const Complex shape = e.e_2Ld - e.e_d;
  const Complex beta_plus = ratio({(l * l - p_minus * p_minus) * shape, 0}, d);
  const Complex beta_minus = ratio({(l * l - p_plus * p_plus) * shape, 0}, d);
  const Complex root = std::sqrt(beta_minus * beta_plus);
  return std::max(std::abs(alpha - root), std::abs(alpha + root));
}

}  // namespace osm
