#pragma once

#include <complex>
#include <cstddef>
#include <string_view>
#include <variant>
#include <vector>

namespace osm {

using Complex = std::complex<double>;

struct DirichletOuter {};

struct RobinOuter {
  double p_a = 1.0;
  double p_b = 1.0;
};

using OuterBc = std::variant<DirichletOuter, RobinOuter>;

/// Physical and geometric data of the strip decomposition
///
///   Ω_j = (a_j, b_j) × (0, Lhat),  a_j = (j-1)L - delta/2,  b_j = jL + delta/2
///
/// of the complex diffusion problem  Δu - (eta - i epsilon) u = f.
/// eta = epsilon = 0 (Laplace) is admissible.
struct ProblemParams {
  double eta = 1.0;
  double epsilon = 1.0;
  double L = 1.0;
  double Lhat = 1.0;
  int J = 2;
  double delta = 0.02;
  OuterBc outer_bc = DirichletOuter{};

  bool dirichlet_outer() const { return std::holds_alternative<DirichletOuter>(outer_bc); }

  /// Throws osm::Error(invalid_argument) unless 0 < delta < L, J >= 2,
  /// Lhat > 0, eta, epsilon >= 0 and outer Robin coefficients are positive.
  void validate() const;
};

// Transmission condition families. The two-sided families alternate their
// coefficient sets across interfaces (see `coefficient_set`).

/// Dirichlet transmission, i.e. the p -> infinity limit (classical Schwarz / RAS).
struct DirichletTransmission {};

struct Robin1 {
  double p = 1.0;
};

struct Robin2 {
  double p1 = 1.0;
  double p2 = 1.0;
};

struct Ventcell1 {
  double p = 1.0;
  double q = 0.0;
};

struct Ventcell2 {
  double p1 = 1.0;
  double q1 = 0.0;
  double p2 = 1.0;
  double q2 = 0.0;
};

using TransmissionParams =
    std::variant<DirichletTransmission, Robin1, Robin2, Ventcell1, Ventcell2>;

enum class Family { dirichlet, robin1, robin2, ventcell1, ventcell2 };

Family family_of(const TransmissionParams& tp);
std::string_view family_name(Family f);
Family parse_family(std::string_view name);  // accepts "ras" as alias of "dirichlet"
bool is_two_sided(Family f);
std::size_t coefficient_count(Family f);

/// Free coefficients in declaration order: Robin1 {p}, Robin2 {p1,p2},
/// Ventcell1 {p,q}, Ventcell2 {p1,q1,p2,q2}; Dirichlet has none.
std::vector<double> coefficients(const TransmissionParams& tp);
TransmissionParams make_transmission(Family f, const std::vector<double>& coeffs);

/// Throws unless every p > 0 and every q >= 0.
void validate(const TransmissionParams& tp);

enum class Side { plus, minus };

/// Robin/Ventcell coefficients acting on one side of one interface.
struct CoefficientSet {
  double p = 0.0;
  double q = 0.0;
  bool infinite = false;  // Dirichlet transmission
};

/// Coefficients used on `side` of interface `interface` (1-based, between
/// subdomains `interface` and `interface + 1`). For two-sided families the
/// plus side (owned by the left subdomain) carries set 1 on odd interfaces
/// and set 2 on even ones; the minus side carries the other set.
CoefficientSet coefficient_set(const TransmissionParams& tp, Side side, int interface = 1);

/// p + k^2 q for the selected side (infinity for Dirichlet transmission).
double effective_p(const TransmissionParams& tp, Side side, double k, int interface = 1);

struct Symbol {
  Complex value;
  bool degenerate = false;  // k^2 + eta = 0 and epsilon = 0
};

/// sqrt(k^2 + eta - i epsilon), branch with positive real part.
Symbol fourier_symbol(double k, const ProblemParams& pp);

inline Complex lambda(double k, const ProblemParams& pp) { return fourier_symbol(k, pp).value; }

/// Fourier modes k_m = m pi / Lhat, m = 1..M, M = ceil(Lhat / h).
struct FrequencyGrid {
  double k_min = 0.0;
  double k_max = 0.0;
  int M = 0;
  std::vector<double> samples;

  double spacing() const { return M > 1 ? samples[1] - samples[0] : k_min; }
};

FrequencyGrid frequency_grid(const ProblemParams& pp, double h);

}  // namespace osm
