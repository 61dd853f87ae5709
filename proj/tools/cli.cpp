#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "osm/error.hpp"
#include "osm/optimizer.hpp"
#include "osm/params_json.hpp"
#include "osm/report.hpp"
#include "osm/sweeps.hpp"

namespace osm::cli {

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Divergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct Options {
  std::string config;
  std::string family;
  std::string scope = "J";
  std::string J;
  std::string h;
  std::string out;
  std::string mode;
  std::string solver = "stationary";
  std::string in;
  std::string x_column = "h";
  std::string y_column = "iterations";
  std::uint64_t seed = 0x5EED;
  int threads = 1;
};

Config problem_config(const Options& o) {
  if (o.config.empty()) {
    Config c;
    c.problem.J = 4;
    return c;
  }
  return load_config(o.config);
}

Family family_or_config(const Options& o, const Config& c) {
  if (!o.family.empty()) return parse_family(o.family);
  if (c.transmission) return family_of(*c.transmission);
  throw ConfigError("no transmission family: pass --family or add \"transmission\" to the config");
}

double mesh_or_default(const Options& o, const Config& c) {
  if (!o.h.empty()) return parse_real(o.h);
  if (c.h) return *c.h;
  return c.problem.delta / 2;
}

OptimizationScope scope_from(const std::string& s, int J) {
  if (s == "2" || s == "two" || s == "two_subdomain") return OptimizationScope::two_subdomain();
  if (s == "J" || s == "finite" || s == "finite_J") return OptimizationScope::finite(J);
  if (s == "inf" || s == "infinite" || s == "infinite_J") return OptimizationScope::infinite();
  throw ConfigError("unknown scope '" + s + "' (use 2, J or inf)");
}

SweepOptions sweep_options(const Options& o) {
  SweepOptions so;
  so.seed = o.seed;
  so.threads = o.threads;
  so.minmax.threads = o.threads;
  if (o.solver == "stationary") {
    so.mode = SolverMode::stationary;
  } else if (o.solver == "gmres") {
    so.mode = SolverMode::gmres;
  } else {
    throw ConfigError("unknown solver '" + o.solver + "' (use stationary or gmres)");
  }
  return so;
}

void check_rows(const std::vector<SweepRow>& rows) {
  for (const auto& r : rows)
    if (r.diverged) throw Divergence("iteration diverged at h=" + format_real(r.h) + ", J=" + std::to_string(r.J));
}

void optimize(const Options& o, std::ostream& out) {
  auto c = problem_config(o);
  auto pp = c.problem;
  const Family family = family_or_config(o, c);
  const auto scope = scope_from(o.scope, pp.J);
  if (scope.kind == OptimizationScope::Kind::two_subdomain) pp.J = 2;
  const auto grid = frequency_grid(pp, mesh_or_default(o, c));
  const auto seed = asymptotic_params(family, scope, pp, pp.delta);
  MinMaxOptions mo;
  mo.threads = o.threads;
  OptimizedChoice choice;
  if (scope.kind == OptimizationScope::Kind::infinite_J) {
    // No finite matrix to optimize against: report the closed form evaluated at pp.J.
    choice = seed;
    choice.numeric_rho = sampled_max_rho(pp, seed.params, grid, mo);
    choice.maxima = equioscillation_report(seed.params, pp, grid, mo);
  } else {
    choice = numeric_minmax(family, pp, grid, mo);
    choice.scope = scope;
    choice.predicted_rho = seed.predicted_rho;
    choice.constant_used = seed.constant_used;
  }
  out << to_json(choice) << '\n';
}

void spectrum(const Options& o, std::ostream& out) {
  const auto c = problem_config(o);
  const auto& pp = c.problem;
  const double h = mesh_or_default(o, c);
  TransmissionParams tp;
  if (o.family.empty() && c.transmission) {
    tp = *c.transmission;
  } else {
    double unused = 0;
    tp = tuned_transmission(family_or_config(o, c), pp, h, unused);
  }
  const auto curve = convergence_curve(pp, tp, frequency_grid(pp, h), o.threads);
  std::vector<SpectrumRow> rows;
  for (const auto& p : curve.points) rows.push_back({p.k, p.rho, rho_highfreq(p.k, pp, tp)});
  write_spectrum_csv(out, rows);
}

void solve(const Options& o, std::ostream& out) {
  const auto c = problem_config(o);
  const double h = mesh_or_default(o, c);
  auto pp = c.problem;
  if (o.config.empty()) pp.delta = 2 * h;
  const auto row = run_case(pp, family_or_config(o, c), h, sweep_options(o));
  write_sweep_csv(out, std::vector<SweepRow>{row});
  check_rows({row});
}

void sweep_h(const Options& o, std::ostream& out) {
  auto c = problem_config(o);
  if (!o.J.empty()) c.problem.J = parse_int_list(o.J).at(0);
  if (o.h.empty()) throw ConfigError("sweep-h needs --h");
  const auto hs = parse_real_list(o.h);
  const auto rows = sweep_mesh(c.problem, family_or_config(o, c), hs, sweep_options(o));
  write_sweep_csv(out, rows);
  check_rows(rows);
}

void sweep_J(const Options& o, std::ostream& out) {
  const auto c = problem_config(o);
  if (o.J.empty()) throw ConfigError("sweep-J needs --J");
  const auto js = parse_int_list(o.J);
  SubdomainMode mode = SubdomainMode::fixed_width;
  if (o.mode == "fixed_global") {
    mode = SubdomainMode::fixed_global;
  } else if (!o.mode.empty() && o.mode != "fixed_width") {
    throw ConfigError("unknown mode '" + o.mode + "' (use fixed_width or fixed_global)");
  }
  const double h = o.h.empty() ? (c.h ? *c.h : 0.01) : parse_real(o.h);
  const auto rows = sweep_subdomains(c.problem, family_or_config(o, c), js, h, mode, sweep_options(o));
  write_sweep_csv(out, rows);
  check_rows(rows);
}

void fit(const Options& o, std::ostream& out) {
  std::ifstream file;
  if (!o.in.empty()) {
    file.open(o.in);
    if (!file) throw ConfigError("cannot open '" + o.in + "'");
  }
  std::istream& in = o.in.empty() ? std::cin : file;
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty input");
  const auto header = split(line, ',');
  auto column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ConfigError("no column '" + name + "' in input");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t xi = column(o.x_column), yi = column(o.y_column);
  std::vector<std::pair<double, double>> pts;
  while (std::getline(in, line)) {
    const auto cells = split(line, ',');
    if (cells.empty()) continue;
    if (cells.size() != header.size()) throw ConfigError("malformed row '" + line + "'");
    pts.emplace_back(parse_real(cells[xi]), parse_real(cells[yi]));
  }
  const auto f = fit_slope(pts);
  out << "{\"exponent\": " << format_real(f.exponent) << ", \"intercept\": " << format_real(f.intercept)
      << ", \"r_squared\": " << format_real(f.r_squared) << ", \"points_used\": " << f.points_used << "}\n";
}

void kconstants(const Options& o, std::ostream& out) {
  const auto c = problem_config(o);
  if (o.J.empty()) throw ConfigError("kconstants needs --J");
  std::vector<KConstantRow> rows;
  const double kinf = constant_Kinf(c.problem);
  for (int J : parse_int_list(o.J)) rows.push_back({J, constant_KJ(c.problem, J), kinf});
  write_kconstants_csv(out, rows);
}

}  // namespace

double parse_real(const std::string& text) {
  const auto slash = text.find('/');
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw ConfigError("not a number: '" + text + "'");
    return v;
  };
  if (slash == std::string::npos) return number(text);
  const double den = number(text.substr(slash + 1));
  if (den == 0.0) throw ConfigError("zero denominator in '" + text + "'");
  return number(text.substr(0, slash)) / den;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split(text, ',')) out.push_back(parse_real(s));
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& s : split(text, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw ConfigError("not an integer: '" + s + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimized Schwarz methods for strip decompositions", "osm"};
  app.require_subcommand(1, 1);
  app.set_help_flag("--help", "print help");
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print help");
    sub->add_option("--config", o.config, "JSON problem configuration");
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  };
  auto* opt = app.add_subcommand("optimize", "optimized transmission parameters as JSON");
  common(opt);
  opt->add_option("--family", o.family, "robin1, robin2, ventcell1, ventcell2");
  opt->add_option("--scope", o.scope, "2, J or inf");
  opt->add_option("--h", o.h, "mesh size of the Fourier grid (default delta/2)");

  auto* spc = app.add_subcommand("spectrum", "convergence factor curve as CSV k,rho,rho_hf");
  common(spc);
  spc->add_option("--family", o.family, "optimize this family instead of the configured parameters");
  spc->add_option("--h", o.h, "mesh size of the Fourier grid");

  auto* sol = app.add_subcommand("solve", "one Schwarz solve");
  common(sol);
  sol->add_option("--family", o.family, "transmission family (ras = dirichlet)");
  sol->add_option("--h", o.h, "mesh size");
  sol->add_option("--seed", o.seed, "random seed");
  sol->add_option("--solver", o.solver, "stationary or gmres");

  auto* sh = app.add_subcommand("sweep-h", "iteration counts over mesh sizes, delta = 2h");
  common(sh);
  sh->add_option("--family", o.family, "transmission family");
  sh->add_option("--h", o.h, "comma separated mesh sizes, e.g. 1/50,1/100");
  sh->add_option("--J", o.J, "number of subdomains");
  sh->add_option("--seed", o.seed, "random seed");
  sh->add_option("--solver", o.solver, "stationary or gmres");

  auto* sj = app.add_subcommand("sweep-J", "iteration counts over subdomain counts");
  common(sj);
  sj->add_option("--family", o.family, "transmission family");
  sj->add_option("--J", o.J, "comma separated subdomain counts");
  sj->add_option("--h", o.h, "mesh size (default 1/100)");
  sj->add_option("--mode", o.mode, "fixed_width or fixed_global");
  sj->add_option("--seed", o.seed, "random seed");
  sj->add_option("--solver", o.solver, "stationary or gmres");

  auto* fs = app.add_subcommand("fit-slope", "log-log least squares fit of two CSV columns");
  fs->set_help_flag("--help", "print help");
  fs->add_option("--in", o.in, "CSV input (default stdin)");
  fs->add_option("--x", o.x_column, "x column (default h)");
  fs->add_option("--y", o.y_column, "y column (default iterations)");
  fs->add_option("--out", o.out, "output file (default stdout)");

  auto* kc = app.add_subcommand("kconstants", "K_J and K_inf as CSV");
  common(kc);
  kc->add_option("--J", o.J, "comma separated subdomain counts");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "osm: " << e.what() << '\n';
    return config_error;
  }

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) {
      err << "osm: cannot write '" << o.out << "'\n";
      return config_error;
    }
  }
  std::ostream& dest = o.out.empty() ? out : file;

  try {
    if (*opt) optimize(o, dest);
    else if (*spc) spectrum(o, dest);
    else if (*sol) solve(o, dest);
    else if (*sh) sweep_h(o, dest);
    else if (*sj) sweep_J(o, dest);
    else if (*fs) fit(o, dest);
    else if (*kc) kconstants(o, dest);
  } catch (const Divergence& e) {
    err << "osm: " << e.what() << '\n';
    return diverged;
  } catch (const ConfigError& e) {
    err << "osm: " << e.what() << '\n';
    return config_error;
  } catch (const Error& e) {
    err << "osm: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::parse_error:
      case ErrorKind::invalid_argument:
      case ErrorKind::grid_misalignment:
      case ErrorKind::mesh_coarser_than_domain:
      case ErrorKind::insufficient_points: return config_error;
      default: return failure;
    }
  } catch (const std::exception& e) {
    err << "osm: " << e.what() << '\n';
    return failure;
  }
  return ok;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace osm::cli
