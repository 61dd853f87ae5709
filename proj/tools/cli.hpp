#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace osm::cli {

enum ExitCode { ok = 0, failure = 1, config_error = 2, diverged = 3 };

/// Runs one subcommand: optimize, spectrum, solve, sweep-h, sweep-J,
/// fit-slope or kconstants. Results go to --out or `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "0.01", "1/200" or "1e-3".
double parse_real(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

}  // namespace osm::cli
