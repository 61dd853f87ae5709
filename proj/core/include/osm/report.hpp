#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "osm/optimizer.hpp"
#include "osm/sweeps.hpp"

namespace osm {

struct SlopeFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int points_used = 0;
};

/// Least-squares line through (log x, log y). Needs at least three points
/// with positive coordinates; throws Error(insufficient_points) otherwise.
SlopeFit fit_slope(std::span<const std::pair<double, double>> points);

/// 17 significant digits, '.' decimal separator.
std::string format_real(double x);

struct SpectrumRow {
  double k = 0.0;
  double rho = 0.0;
  double rho_hf = 0.0;
};

struct KConstantRow {
  int J = 0;
  double K_J = 0.0;
  double K_inf = 0.0;
};

void write_spectrum_csv(std::ostream& out, std::span<const SpectrumRow> rows);
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);
void write_kconstants_csv(std::ostream& out, std::span<const KConstantRow> rows);

/// Readers expect the header the matching writer emits; throw
/// Error(parse_error) on malformed input.
std::vector<SpectrumRow> read_spectrum_csv(std::istream& in);
std::vector<SweepRow> read_sweep_csv(std::istream& in);
std::vector<KConstantRow> read_kconstants_csv(std::istream& in);

/// {family, scope, J, delta, params, predicted_rho, numeric_rho, constant,
///  maxima: [{k, rho}], stalled, extrapolated}
std::string to_json(const OptimizedChoice& choice);
OptimizedChoice optimized_choice_from_json(std::string_view text);

}  // namespace osm
