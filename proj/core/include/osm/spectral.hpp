#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "osm/symbol.hpp"

namespace osm {

/// Coupling coefficients of subdomain j in the Robin-trace recurrence
///
///   R_-^n(a_j) = alpha_j^- R_-^{n-1}(a_{j-1}) + beta_j^- R_+^{n-1}(b_{j-1})
///   R_+^n(b_j) = beta_j^+ R_-^{n-1}(a_{j+1}) + alpha_j^+ R_+^{n-1}(b_{j+1})
///
/// alpha/beta minus are zero for j = 1, alpha/beta plus are zero for j = J.
struct InterfaceCoefficients {
  Complex alpha_minus{};
  Complex alpha_plus{};
  Complex beta_minus{};
  Complex beta_plus{};
};

/// Coefficients for subdomain j (1-based) at frequency k. Outer boundary
/// coefficients come from `pp.outer_bc`; the Dirichlet outer condition and
/// Dirichlet transmission are handled as exact p -> infinity limits.
/// Throws Error(singular_denominator) when a denominator vanishes.
InterfaceCoefficients interface_coeffs(int j, double k, const ProblemParams& pp,
                                       const TransmissionParams& tp);

/// All J subdomains at once (index 0 holds subdomain 1).
std::vector<InterfaceCoefficients> all_interface_coeffs(double k, const ProblemParams& pp,
                                                        const TransmissionParams& tp);

/// Substructured iteration matrix of order 2(J-1) acting on the trace vector
/// (R_+(b_1), R_-(a_2), R_+(b_2), R_-(a_3), ..., R_+(b_{J-1}), R_-(a_J)).
struct IterationMatrix {
  Eigen::MatrixXcd entries;
  double k = 0.0;

  Eigen::Index order() const { return entries.rows(); }
};

/// Places the per-subdomain blocks into the reduced matrix.
Eigen::MatrixXcd structured_iteration_matrix(std::span<const InterfaceCoefficients> coeffs);

IterationMatrix assemble_iteration_matrix(double k, const ProblemParams& pp,
                                          const TransmissionParams& tp);

/// Largest eigenvalue modulus of a dense complex matrix (Hessenberg reduction
/// plus shifted QR). Throws Error(eigensolver_failure) on non-convergence.
double spectral_radius(const Eigen::MatrixXcd& m);
inline double spectral_radius(const IterationMatrix& m) { return spectral_radius(m.entries); }

struct SpectrumPoint {
  double k = 0.0;
  double rho = 0.0;
};

struct SpectrumCurve {
  std::vector<SpectrumPoint> points;

  double max_rho() const;
};

/// rho(T(k)) for a single frequency.
double convergence_factor(double k, const ProblemParams& pp, const TransmissionParams& tp);

/// rho(T(k)) on every grid frequency. `threads > 1` splits the grid into
/// contiguous chunks; the result does not depend on the thread count.
SpectrumCurve convergence_curve(const ProblemParams& pp, const TransmissionParams& tp,
                                std::span<const double> ks, int threads = 1);
SpectrumCurve convergence_curve(const ProblemParams& pp, const TransmissionParams& tp,
                                const FrequencyGrid& grid, int threads = 1);

/// High frequency approximation |(l-p)/(l+p)| e^{-Re(l) delta}; two-sided
/// families return the geometric mean of the two factors.
double rho_highfreq(double k, const ProblemParams& pp, const TransmissionParams& tp);

/// The asymptotic iteration matrix with alpha = 0 and the large-k betas.
Eigen::MatrixXcd highfreq_matrix(double k, const ProblemParams& pp, const TransmissionParams& tp);

/// Limiting-spectrum bound max{|alpha - sqrt(b- b+)|, |alpha + sqrt(b- b+)|}
/// for J -> infinity with constant parameters p_minus, p_plus.
double limiting_bound(double k, const ProblemParams& pp, double p_minus, double p_plus);

}  // namespace osm
