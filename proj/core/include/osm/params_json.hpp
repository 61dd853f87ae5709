#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "osm/symbol.hpp"

namespace osm {

// JSON documents for the problem and transmission data, e.g.
//   {"eta":1.0,"epsilon":1.0,"L":1.0,"Lhat":1.0,"J":4,"delta":0.02,
//    "outer_bc":{"type":"dirichlet"}}
//   {"family":"ventcell2","p1":..,"q1":..,"p2":..,"q2":..}
// Parse failures throw osm::Error(parse_error).

std::string to_json(const ProblemParams& pp);
ProblemParams problem_from_json(std::string_view text);

std::string to_json(const TransmissionParams& tp);
TransmissionParams transmission_from_json(std::string_view text);

/// Configuration file used by the CLI: a problem document that may carry an
/// optional "transmission" object and an optional "h" mesh size.
struct Config {
  ProblemParams problem;
  std::optional<TransmissionParams> transmission;
  std::optional<double> h;
};

Config config_from_json(std::string_view text);
Config load_config(const std::string& path);

}  // namespace osm
