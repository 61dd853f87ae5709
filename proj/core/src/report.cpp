#include "osm/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "osm/error.hpp"
#include "osm/params_json.hpp"

namespace osm {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::parse_error, what); }

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double to_real(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) parse_fail("bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    parse_fail("bad number '" + s + "'");
  }
}

int to_int(const std::string& s) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) parse_fail("bad integer '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    parse_fail("bad integer '" + s + "'");
  }
}

// Data rows after checking the header; each row has exactly `width` cells.
std::vector<std::vector<std::string>> table(std::istream& in, std::string_view header) {
  std::string line;
  if (!std::getline(in, line)) parse_fail("missing CSV header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) parse_fail("unexpected CSV header '" + line + "'");
  const std::size_t width = split(line).size();
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != width) parse_fail("row has " + std::to_string(cells.size()) + " cells: '" + line + "'");
    rows.push_back(std::move(cells));
  }
  return rows;
}

constexpr std::string_view kSpectrumHeader = "k,rho,rho_hf";
constexpr std::string_view kSweepHeader = "h,J,family,iterations,contraction,predicted_rho,seconds";
constexpr std::string_view kKHeader = "J,K_J,K_inf";

OptimizationScope scope_from(const std::string& name, int J) {
  if (name == "two_subdomain") return OptimizationScope::two_subdomain();
  if (name == "finite_J") return OptimizationScope::finite(J);
  if (name == "infinite_J") return OptimizationScope::infinite();
  parse_fail("unknown scope '" + name + "'");
}

}  // namespace

SlopeFit fit_slope(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw Error(ErrorKind::insufficient_points, "slope fit needs at least 3 points");
  double sx = 0, sy = 0;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0)) throw Error(ErrorKind::invalid_argument, "slope fit needs positive data");
    sx += std::log(x);
    sy += std::log(y);
  }
  const double n = static_cast<double>(points.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx, dy = std::log(y) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw Error(ErrorKind::insufficient_points, "slope fit needs distinct x values");
  SlopeFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  fit.points_used = static_cast<int>(points.size());
  return fit;
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_spectrum_csv(std::ostream& out, std::span<const SpectrumRow> rows) {
  out << kSpectrumHeader << '\n';
  for (const auto& r : rows) out << format_real(r.k) << ',' << format_real(r.rho) << ',' << format_real(r.rho_hf) << '\n';
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << kSweepHeader << '\n';
  for (const auto& r : rows) {
    out << format_real(r.h) << ',' << r.J << ',' << family_name(r.family) << ',' << r.iterations << ','
        << format_real(r.contraction) << ',' << format_real(r.predicted_rho) << ',' << format_real(r.seconds) << '\n';
  }
}

void write_kconstants_csv(std::ostream& out, std::span<const KConstantRow> rows) {
  out << kKHeader << '\n';
  for (const auto& r : rows) out << r.J << ',' << format_real(r.K_J) << ',' << format_real(r.K_inf) << '\n';
}

std::vector<SpectrumRow> read_spectrum_csv(std::istream& in) {
  std::vector<SpectrumRow> rows;
  for (const auto& c : table(in, kSpectrumHeader)) rows.push_back({to_real(c[0]), to_real(c[1]), to_real(c[2])});
  return rows;
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::vector<SweepRow> rows;
  for (const auto& c : table(in, kSweepHeader)) {
    SweepRow r;
    r.h = to_real(c[0]);
    r.J = to_int(c[1]);
    try {
      r.family = parse_family(c[2]);
    } catch (const Error&) {
      parse_fail("unknown family '" + c[2] + "'");
    }
    r.iterations = to_int(c[3]);
    r.contraction = to_real(c[4]);
    r.predicted_rho = to_real(c[5]);
    r.seconds = to_real(c[6]);
    rows.push_back(r);
  }
  return rows;
}

std::vector<KConstantRow> read_kconstants_csv(std::istream& in) {
  std::vector<KConstantRow> rows;
  for (const auto& c : table(in, kKHeader)) rows.push_back({to_int(c[0]), to_real(c[1]), to_real(c[2])});
  return rows;
}

std::string to_json(const OptimizedChoice& choice) {
  using nlohmann::json;
  json params = json::parse(to_json(choice.params));
  const std::string family = params.at("family").get<std::string>();
  params.erase("family");
  json maxima = json::array();
  for (const auto& m : choice.maxima) maxima.push_back({{"k", m.k}, {"rho", m.rho}});
  json doc = {{"family", family},
              {"scope", std::string(scope_name(choice.scope))},
              {"J", choice.scope.J},
              {"delta", choice.delta},
              {"params", params},
              {"predicted_rho", choice.predicted_rho},
              {"numeric_rho", choice.numeric_rho},
              {"constant", choice.constant_used},
              {"maxima", maxima},
              {"stalled", choice.stalled},
              {"extrapolated", choice.extrapolated}};
  return doc.dump(2);
}

OptimizedChoice optimized_choice_from_json(std::string_view text) {
  using nlohmann::json;
  try {
    const json doc = json::parse(text);
    OptimizedChoice c;
    json params = doc.at("params");
    params["family"] = doc.at("family");
    c.params = transmission_from_json(params.dump());
    c.scope = scope_from(doc.at("scope").get<std::string>(), doc.value("J", 2));
    c.delta = doc.at("delta").get<double>();
    c.predicted_rho = doc.at("predicted_rho").get<double>();
    c.numeric_rho = doc.at("numeric_rho").get<double>();
    c.constant_used = doc.at("constant").get<double>();
    for (const auto& m : doc.at("maxima")) c.maxima.push_back({m.at("k").get<double>(), m.at("rho").get<double>()});
    c.stalled = doc.value("stalled", false);
    c.extrapolated = doc.value("extrapolated", false);
    return c;
  } catch (const json::exception& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace osm
