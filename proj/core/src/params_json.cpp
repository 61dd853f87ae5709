#include "osm/params_json.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "osm/error.hpp"

namespace osm {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) {
  throw Error(ErrorKind::parse_error, what);
}

json problem_document(const ProblemParams& pp) {
  json bc;
  if (const auto* robin = std::get_if<RobinOuter>(&pp.outer_bc)) {
    bc = {{"type", "robin"}, {"p_a", robin->p_a}, {"p_b", robin->p_b}};
  } else {
    bc = {{"type", "dirichlet"}};
  }
  return {{"eta", pp.eta},     {"epsilon", pp.epsilon}, {"L", pp.L},          {"Lhat", pp.Lhat},
          {"J", pp.J},         {"delta", pp.delta},     {"outer_bc", bc}};
}

json transmission_document(const TransmissionParams& tp) {
  const auto f = family_of(tp);
  json j = {{"family", std::string(family_name(f))}};
  const auto c = coefficients(tp);
  switch (f) {
    case Family::dirichlet: break;
    case Family::robin1: j["p"] = c[0]; break;
    case Family::robin2: j["p1"] = c[0]; j["p2"] = c[1]; break;
    case Family::ventcell1: j["p"] = c[0]; j["q"] = c[1]; break;
    case Family::ventcell2:
      j["p1"] = c[0]; j["q1"] = c[1]; j["p2"] = c[2]; j["q2"] = c[3];
      break;
  }
  return j;
}

ProblemParams problem_from(const json& j) {
  ProblemParams pp;
  pp.eta = j.at("eta").get<double>();
  pp.epsilon = j.at("epsilon").get<double>();
  pp.L = j.at("L").get<double>();
  pp.Lhat = j.at("Lhat").get<double>();
  pp.J = j.at("J").get<int>();
  pp.delta = j.at("delta").get<double>();
  if (j.contains("outer_bc")) {
    const auto& bc = j.at("outer_bc");
    const auto type = bc.at("type").get<std::string>();
    if (type == "dirichlet") {
      pp.outer_bc = DirichletOuter{};
    } else if (type == "robin") {
      pp.outer_bc = RobinOuter{bc.at("p_a").get<double>(), bc.at("p_b").get<double>()};
    } else {
      parse_fail("unknown outer_bc type '" + type + "'");
    }
  }
  return pp;
}

TransmissionParams transmission_from(const json& j) {
  const auto f = parse_family(j.at("family").get<std::string>());
  auto get = [&](const char* key) { return j.at(key).get<double>(); };
  switch (f) {
    case Family::dirichlet: return DirichletTransmission{};
    case Family::robin1: return Robin1{get("p")};
    case Family::robin2: return Robin2{get("p1"), get("p2")};
    case Family::ventcell1: return Ventcell1{get("p"), get("q")};
    case Family::ventcell2: return Ventcell2{get("p1"), get("q1"), get("p2"), get("q2")};
  }
  parse_fail("unknown family");
}

template <class F>
auto guarded(std::string_view text, F&& f) {
  try {
    return f(json::parse(text));
  } catch (const json::exception& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string to_json(const ProblemParams& pp) { return problem_document(pp).dump(); }

ProblemParams problem_from_json(std::string_view text) {
  return guarded(text, [](const json& j) { return problem_from(j); });
}

std::string to_json(const TransmissionParams& tp) { return transmission_document(tp).dump(); }

TransmissionParams transmission_from_json(std::string_view text) {
  return guarded(text, [](const json& j) { return transmission_from(j); });
}

Config config_from_json(std::string_view text) {
  return guarded(text, [](const json& j) {
    Config c;
    c.problem = problem_from(j);
    if (j.contains("transmission")) c.transmission = transmission_from(j.at("transmission"));
    if (j.contains("h")) c.h = j.at("h").get<double>();
    return c;
  });
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return config_from_json(buffer.str());
}

}  // namespace osm
