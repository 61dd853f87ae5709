#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "osm/report.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = osm::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("number parsing") {
    CHECK(osm::cli::parse_real("1/200") == doctest::Approx(0.005));
    CHECK(osm::cli::parse_real("1e-3") == 1e-3);
    CHECK_THROWS(osm::cli::parse_real("abc"));
    CHECK_THROWS(osm::cli::parse_real("1/0"));
    CHECK_THROWS(osm::cli::parse_real("0.1x"));
    CHECK(osm::cli::parse_real_list("1/50,1/100").size() == 2);
    CHECK(osm::cli::parse_int_list("2,4,8") == std::vector<int>{2, 4, 8});
    CHECK_THROWS(osm::cli::parse_int_list("2,x"));
  }

  TEST_CASE("usage errors exit with code 2") {
    CHECK(call({}).code == 2);
    CHECK(call({"bogus"}).code == 2);
    CHECK(call({"kconstants", "--J", "2", "--frobnicate"}).code == 2);
    CHECK(call({"optimize", "--family", "robin3"}).code == 2);
    CHECK(call({"optimize", "--family", "robin1", "--scope", "7"}).code == 2);
    CHECK(call({"solve", "--config", "/nonexistent/config.json", "--family", "robin1"}).code == 2);
    const auto broken = temp_file("osm_cli_broken.json", "{\"eta\": 1,");
    const auto r = call({"optimize", "--config", broken.string(), "--family", "robin1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("osm:") != std::string::npos);
  }

  TEST_CASE("help exits cleanly") {
    const auto r = call({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("sweep-h") != std::string::npos);
  }

  TEST_CASE("kconstants") {
    const auto r = call({"kconstants", "--J", "2,4,8"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    const auto rows = osm::read_kconstants_csv(in);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].K_J == doctest::Approx(3.30908428201981131).epsilon(1e-14));
    CHECK(rows[2].K_inf == doctest::Approx(3.06651834512113727).epsilon(1e-14));
  }

  TEST_CASE("optimize prints a JSON document") {
    const auto r = call({"optimize", "--family", "robin1", "--scope", "J"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("family") == "robin1");
    CHECK(j.at("J") == 4);
    CHECK(j.at("numeric_rho").get<double>() < 1.0);
    CHECK(j.at("maxima").size() == 2);
    const auto inf = nlohmann::json::parse(call({"optimize", "--family", "ventcell1", "--scope", "inf"}).out);
    CHECK(inf.at("extrapolated") == true);
  }

  TEST_CASE("configured transmission drives spectrum") {
    const auto cfg = temp_file("osm_cli_cfg.json",
                               R"({"eta": 1, "epsilon": 1, "L": 1, "Lhat": 1, "J": 3, "delta": 0.02, "h": 0.01,)"
                               R"( "transmission": {"family": "robin1", "p": 7.0}})");
    const auto r = call({"spectrum", "--config", cfg.string()});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    const auto rows = osm::read_spectrum_csv(in);
    CHECK(rows.size() == 100);
    for (const auto& row : rows) CHECK(row.rho < 1.0);
  }

  TEST_CASE("solve and fit-slope through files") {
    const auto csv = std::filesystem::temp_directory_path() / "osm_cli_sweep.csv";
    const auto r = call({"sweep-h", "--family", "robin1", "--h", "1/20,1/40,1/80", "--out", csv.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    const auto fit = call({"fit-slope", "--in", csv.string()});
    REQUIRE(fit.code == 0);
    const auto j = nlohmann::json::parse(fit.out);
    CHECK(j.at("points_used") == 3);
    CHECK(j.at("exponent").get<double>() < 0.0);

    const auto one = call({"solve", "--family", "ventcell1", "--h", "1/40", "--solver", "gmres"});
    REQUIRE(one.code == 0);
    std::istringstream in(one.out);
    const auto rows = osm::read_sweep_csv(in);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].iterations > 0);

    CHECK(call({"fit-slope", "--in", csv.string(), "--x", "nope"}).code == 2);
    CHECK(call({"solve", "--family", "robin1", "--h", "0.03"}).code == 2);
  }

  TEST_CASE("sweep-J modes") {
    const auto r = call({"sweep-J", "--family", "robin1", "--J", "2,4", "--h", "1/40", "--mode", "fixed_global"});
    REQUIRE(r.code == 0);
    CHECK(call({"sweep-J", "--family", "robin1", "--J", "2", "--mode", "sideways"}).code == 2);
  }
}
