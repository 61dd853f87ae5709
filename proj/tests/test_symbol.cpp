#include "doctest.h"
#include "osm/error.hpp"
#include "osm/params_json.hpp"
#include "osm/symbol.hpp"

#include <cmath>
#include <numbers>

using namespace osm;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no osm::Error thrown");
  return ErrorKind::invalid_argument;
}

}  // namespace

TEST_SUITE("symbol") {
  TEST_CASE("fourier symbol golden value") {
    ProblemParams pp;  // eta = epsilon = 1
    const Complex s = lambda(std::numbers::pi, pp);
    CHECK(s.real() == doctest::Approx(3.30038722812633607).epsilon(1e-15));
    CHECK(s.imag() == doctest::Approx(-0.151497374531974288).epsilon(1e-14));
  }

  TEST_CASE("principal branch has positive real part") {
    ProblemParams pp;
    for (double eps : {0.0, 1e-6, 1.0, 100.0}) {
      pp.epsilon = eps;
      for (double k : {0.0, 0.5, 3.0, 1e4}) {
        const Complex s = lambda(k, pp);
        CHECK(s.real() > 0.0);
        CHECK(std::abs(s * s - Complex(k * k + pp.eta, -eps)) <= 1e-12 * (k * k + 1.0 + eps));
      }
    }
  }

  TEST_CASE("laplace at k = 0 is flagged degenerate") {
    ProblemParams pp;
    pp.eta = 0;
    pp.epsilon = 0;
    CHECK(fourier_symbol(0.0, pp).degenerate);
    CHECK_FALSE(fourier_symbol(1.0, pp).degenerate);
    CHECK(lambda(2.0, pp) == Complex(2.0, 0.0));
  }

  TEST_CASE("frequency grid") {
    ProblemParams pp;
    const auto g = frequency_grid(pp, 0.01);
    CHECK(g.M == 100);
    CHECK(g.k_min == doctest::Approx(std::numbers::pi));
    CHECK(g.k_max == doctest::Approx(100 * std::numbers::pi));
    CHECK(g.spacing() == doctest::Approx(std::numbers::pi));
    CHECK(frequency_grid(pp, 0.3).M == 4);
    CHECK(kind_of([&] { frequency_grid(pp, 1.0); }) == ErrorKind::mesh_coarser_than_domain);
    CHECK(kind_of([&] { frequency_grid(pp, 2.0); }) == ErrorKind::mesh_coarser_than_domain);
  }

  TEST_CASE("problem validation") {
    ProblemParams pp;
    CHECK_NOTHROW(pp.validate());
    auto bad = pp;
    bad.J = 1;
    CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::invalid_argument);
    bad = pp;
    bad.delta = pp.L;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = pp;
    bad.epsilon = -1;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = pp;
    bad.outer_bc = RobinOuter{0.0, 1.0};
    CHECK_THROWS_AS(bad.validate(), Error);
  }

  TEST_CASE("transmission validation") {
    CHECK_NOTHROW(validate(Robin1{1.0}));
    CHECK_NOTHROW(validate(Ventcell1{1.0, 0.0}));
    CHECK_THROWS_AS(validate(Robin1{0.0}), Error);
    CHECK_THROWS_AS(validate(Robin2{1.0, -1.0}), Error);
    CHECK_THROWS_AS(validate(Ventcell2{1.0, -0.1, 1.0, 0.0}), Error);
  }

  TEST_CASE("families and coefficients round trip") {
    for (auto f : {Family::dirichlet, Family::robin1, Family::robin2, Family::ventcell1, Family::ventcell2}) {
      std::vector<double> c;
      for (std::size_t i = 0; i < coefficient_count(f); ++i) c.push_back(1.5 + static_cast<double>(i));
      const auto tp = make_transmission(f, c);
      CHECK(family_of(tp) == f);
      CHECK(coefficients(tp) == c);
      CHECK(parse_family(family_name(f)) == f);
    }
    CHECK(parse_family("ras") == Family::dirichlet);
    CHECK_THROWS_AS(parse_family("neumann"), Error);
    CHECK_THROWS_AS(make_transmission(Family::robin2, {1.0}), Error);
  }

  TEST_CASE("two-sided sets alternate across interfaces") {
    const TransmissionParams tp = Ventcell2{10.0, 0.1, 2.0, 0.3};
    for (int i = 1; i <= 6; ++i) {
      const auto plus = coefficient_set(tp, Side::plus, i);
      const auto minus = coefficient_set(tp, Side::minus, i);
      CHECK(plus.p == (i % 2 ? 10.0 : 2.0));
      CHECK(minus.p == (i % 2 ? 2.0 : 10.0));
      CHECK(plus.q == (i % 2 ? 0.1 : 0.3));
    }
    // each subdomain sees one set on both of its interfaces
    for (int j = 2; j <= 5; ++j)
      CHECK(coefficient_set(tp, Side::minus, j - 1).p == coefficient_set(tp, Side::plus, j).p);
  }

  TEST_CASE("effective p") {
    CHECK(effective_p(Ventcell1{2.0, 0.5}, Side::plus, 4.0) == doctest::Approx(10.0));
    CHECK(effective_p(Robin1{3.0}, Side::minus, 100.0) == 3.0);
    CHECK(std::isinf(effective_p(DirichletTransmission{}, Side::plus, 1.0)));
    CHECK(effective_p(Robin2{7.0, 5.0}, Side::minus, 0.0) == 5.0);
  }

  TEST_CASE("json round trip") {
    ProblemParams pp;
    pp.eta = 0.25;
    pp.epsilon = 1e-3;
    pp.L = 0.5;
    pp.Lhat = 2.0;
    pp.J = 7;
    pp.delta = 1.0 / 3.0;
    pp.outer_bc = RobinOuter{2.5, 0.1};
    const auto back = problem_from_json(to_json(pp));
    CHECK(back.eta == pp.eta);
    CHECK(back.epsilon == pp.epsilon);
    CHECK(back.L == pp.L);
    CHECK(back.Lhat == pp.Lhat);
    CHECK(back.J == pp.J);
    CHECK(back.delta == pp.delta);
    REQUIRE(std::holds_alternative<RobinOuter>(back.outer_bc));
    CHECK(std::get<RobinOuter>(back.outer_bc).p_a == 2.5);

    const TransmissionParams tp = Ventcell2{1.0 / 3.0, 1e-7, 17.25, 0.0};
    CHECK(coefficients(transmission_from_json(to_json(tp))) == coefficients(tp));
    CHECK(family_of(transmission_from_json(to_json(DirichletTransmission{}))) == Family::dirichlet);
  }

  TEST_CASE("config parsing errors") {
    CHECK(kind_of([] { config_from_json("{not json"); }) == ErrorKind::parse_error);
    CHECK(kind_of([] { config_from_json(R"({"eta":1})"); }) == ErrorKind::parse_error);
    CHECK(kind_of([] { load_config("/nonexistent/config.json"); }) == ErrorKind::parse_error);
    const auto c = config_from_json(
        R"({"eta":1,"epsilon":1,"L":1,"Lhat":1,"J":4,"delta":0.02,"h":0.01,
            "transmission":{"family":"robin1","p":6.5}})");
    CHECK(c.problem.J == 4);
    CHECK(c.problem.dirichlet_outer());
    REQUIRE(c.h);
    CHECK(*c.h == 0.01);
    REQUIRE(c.transmission);
    CHECK(coefficients(*c.transmission) == std::vector<double>{6.5});
  }
}
