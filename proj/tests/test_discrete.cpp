#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "osm/error.hpp"
#include "osm/schwarz.hpp"
#include "osm/spectral.hpp"
#include "osm/sweeps.hpp"

using namespace osm;

namespace {

ProblemParams strips(int J, double h) {
  ProblemParams pp;
  pp.J = J;
  pp.delta = 2 * h;
  return pp;
}

}  // namespace

TEST_SUITE("discrete") {
  TEST_CASE("operator is complex symmetric with zero Laplacian row sums") {
    const auto dp = discretize(strips(2, 0.125), 0.125);
    CHECK(dp.nx == 15);
    CHECK(dp.ny == 7);
    const SparseMatrix diff = SparseMatrix(dp.A.transpose()) - dp.A;
    CHECK(diff.norm() == 0.0);
    const int i = dp.index(5, 4);  // away from the boundary
    Complex sum = 0.0;
    for (SparseMatrix::InnerIterator it(dp.A, i); it; ++it) sum += it.value();
    CHECK(std::abs(sum - dp.shift) < 1e-12);
  }

  TEST_CASE("grid alignment is enforced") {
    auto pp = strips(2, 0.1);
    CHECK_THROWS_AS(discretize(pp, 0.03), Error);
    pp.delta = 0.3;  // odd multiple of h
    try {
      discretize(pp, 0.1);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::grid_misalignment);
    }
    pp = strips(2, 0.5);
    CHECK_THROWS_AS(discretize(pp, 0.5), Error);  // h > L / 4
  }

  TEST_CASE("zero forcing has the zero solution") {
    const auto dp = discretize(strips(2, 0.125), 0.125);
    CHECK(dp.b.norm() == 0.0);
  }

  TEST_CASE("point source against a dense solve") {
    ProblemParams pp;
    pp.J = 1;
    pp.eta = 0;
    pp.epsilon = 0;
    pp.delta = 2.0 / 9;
    const double h = 1.0 / 9;  // 8 x 8 interior nodes
    const auto dp = discretize(pp, h, PointSource{0.4, 0.6, Complex(1.0, 0.5)});
    REQUIRE(dp.nx == 8);
    REQUIRE(dp.ny == 8);
    const Eigen::MatrixXcd dense = oracle::dense_operator(8, 8, h, 0.0);
    CHECK((Eigen::MatrixXcd(dp.A) - dense).norm() == 0.0);
    const Eigen::VectorXcd want = dense.fullPivLu().solve(dp.b);
    LocalSolver lu(dp.A);
    const Eigen::VectorXcd got = lu.solve(dp.b);
    CHECK((got - want).norm() <= 1e-12 * want.norm());
  }

  TEST_CASE("single Fourier mode is second order accurate") {
    std::vector<double> errors;
    for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
      auto pp = strips(2, h);
      const double W = pp.J * pp.L;
      const Complex sigma(pp.eta, -pp.epsilon);
      auto mode = [&](double x, double y) { return std::sin(std::numbers::pi * y) * std::sin(std::numbers::pi * x / W); };
      const auto dp = discretize(pp, h, FieldForcing{[&](double x, double y) { return Complex(mode(x, y)); }});
      LocalSolver lu(dp.A);
      const Eigen::VectorXcd u = lu.solve(dp.b);
      // continuous solution of Δu - sigma u = f
      const Complex factor = 1.0 / (-(std::numbers::pi * std::numbers::pi) * (1.0 + 1.0 / (W * W)) - sigma);
      double err = 0.0;
      for (int c = 1; c <= dp.nx; ++c)
        for (int r = 1; r <= dp.ny; ++r) err = std::max(err, std::abs(u[dp.index(c, r)] - factor * mode(c * h, r * h)));
      errors.push_back(err);
    }
    CHECK(errors[0] / errors[1] == doctest::Approx(4.0).epsilon(0.05));
    CHECK(errors[1] / errors[2] == doctest::Approx(4.0).epsilon(0.05));
  }

  TEST_CASE("strip partition geometry") {
    const double h = 1.0 / 20;
    auto pp = strips(2, h);
    const auto dp = discretize(pp, h);
    const auto subs = strip_partition(dp, Robin1{5.0});
    REQUIRE(subs.size() == 2);
    const int half = (dp.nx + 1) / 2;
    CHECK(subs[0].first_col == 1);
    CHECK(subs[0].last_col == half + 1);
    CHECK(subs[1].first_col == half - 1);
    CHECK(subs[1].last_col == dp.nx);
    // adjacent strips share delta / h + 1 columns
    CHECK(subs[0].last_col - subs[1].first_col + 1 == dp.overlap_cells + 1);
  }

  TEST_CASE("Boolean weights form a partition of unity") {
    for (int J : {1, 2, 3, 5}) {
      const double h = 1.0 / 12;
      auto pp = strips(J, h);
      pp.delta = 4 * h;
      const auto dp = discretize(pp, h);
      const auto subs = strip_partition(dp, DirichletTransmission{});
      std::vector<int> count(static_cast<std::size_t>(dp.size()), 0);
      for (const auto& s : subs) {
        const auto w = s.weights(dp.ny);
        for (Eigen::Index i = 0; i < s.size; ++i) count[static_cast<std::size_t>(s.offset + i)] += w[static_cast<std::size_t>(i)];
      }
      CHECK(std::all_of(count.begin(), count.end(), [](int c) { return c == 1; }));
    }
  }

  TEST_CASE("Ventcell interface row acts as the discrete effective coefficient") {
    const double h = 1.0 / 40;
    auto pp = strips(2, h);
    const auto dp = discretize(pp, h);
    const double p = 3.0, q = 0.02;
    const auto with_q = strip_partition(dp, Ventcell1{p, q});
    const auto neumann = strip_partition(dp, Ventcell1{1e-300, 0.0});
    const auto& a = with_q[0];
    const auto& b = neumann[0];
    for (int m : {1, 3, 10}) {
      Eigen::VectorXcd trace = Eigen::VectorXcd::Zero(a.size);
      const Eigen::Index base = (a.last_col - a.first_col) * dp.ny;
      for (int r = 1; r <= dp.ny; ++r) trace[base + r - 1] = std::sin(m * std::numbers::pi * r * h);
      const Eigen::VectorXcd diff = (a.local_operator - b.local_operator) * trace;
      const double want = p + 2.0 / (h * h) * (1.0 - std::cos(m * std::numbers::pi * h)) * q;
      for (int r = 1; r <= dp.ny; ++r) {
        const double t = trace[base + r - 1].real();
        if (std::abs(t) > 1e-3) CHECK(std::abs(diff[base + r - 1] * h / t - want) < 1e-9 * want);
      }
      CHECK(want == doctest::Approx(p + std::pow(m * std::numbers::pi, 2) * q).epsilon(0.05));
    }
  }

  TEST_CASE("local solves are accurate") {
    const double h = 1.0 / 40;
    const auto dp = discretize(strips(3, h), h);
    const auto subs = strip_partition(dp, Ventcell2{8.0, 0.01, 2.0, 0.05});
    const auto r = random_vector(dp.size(), 3);
    for (const auto& s : subs) {
      const Vector rhs = s.restrict(r);
      const Vector x = s.factorization->solve(rhs);
      CHECK((s.local_operator * x - rhs).norm() <= 1e-12 * rhs.norm());
    }
  }

  TEST_CASE("exact solution is a fixed point") {
    const double h = 1.0 / 32;
    const auto dp = discretize(strips(3, h), h, RandomForcing{11});
    LocalSolver lu(dp.A);
    const Vector u = lu.solve(dp.b);
    for (const auto& tp : std::vector<TransmissionParams>{DirichletTransmission{}, Robin1{6.0}, Ventcell2{8.0, 0.01, 2.0, 0.05}}) {
      const auto subs = strip_partition(dp, tp);
      CHECK((ras_iterate(dp, subs, u) - u).norm() <= 1e-12 * u.norm());
    }
  }

  TEST_CASE("stationary solve bookkeeping") {
    const double h = 1.0 / 32;
    const auto dp = discretize(strips(2, h), h);
    const auto subs = strip_partition(dp, Robin1{6.0});
    SolveOptions none;
    none.itmax = 0;
    const auto r0 = stationary_solve(dp, subs, none);
    CHECK(r0.iterations == 0);
    CHECK(r0.error_history == std::vector<double>{1.0});
    const auto r = stationary_solve(dp, subs);
    CHECK(r.converged);
    CHECK(r.error_history.front() == 1.0);
    CHECK(r.error_history.back() < 1e-6);
    CHECK(r.contraction > 0.0);
    CHECK(r.contraction < 1.0);
    CHECK(r.seed == 0x5EED);
  }

  TEST_CASE("stationary solve with a nonzero right-hand side") {
    const double h = 1.0 / 32;
    const auto dp = discretize(strips(2, h), h, RandomForcing{5});
    const auto subs = strip_partition(dp, Robin1{6.0});
    const auto r = stationary_solve(dp, subs);
    CHECK(r.converged);
    CHECK(r.final_residual < 1e-4 * dp.b.norm());
  }

  TEST_CASE("iteration counts are deterministic across thread counts") {
    const double h = 1.0 / 40;
    const auto dp = discretize(strips(4, h), h);
    const auto subs = strip_partition(dp, Robin1{6.0}, 4);
    SolveOptions one, four;
    four.threads = 4;
    const auto a = stationary_solve(dp, subs, one);
    const auto b = stationary_solve(dp, subs, four);
    CHECK(a.iterations == b.iterations);
    CHECK(a.error_history == b.error_history);
  }

  TEST_CASE("measured contraction follows the Fourier analysis") {
    for (int J : {2, 4}) {
      for (double h : {1.0 / 50, 1.0 / 100}) {
        auto pp = strips(J, h);
        const auto row = run_case(pp, Family::robin1, h);
        CHECK(row.converged);
        CHECK(std::abs(row.contraction - row.predicted_rho) <= 0.15 * row.predicted_rho);
      }
    }
  }

  TEST_CASE("GMRES with an exact preconditioner takes one step") {
    const double h = 1.0 / 32;
    auto pp = strips(1, h);
    const auto dp = discretize(pp, h);
    const auto subs = strip_partition(dp, DirichletTransmission{});
    const auto r = gmres_solve(dp, subs);
    CHECK(r.converged);
    CHECK(r.iterations == 1);
    CHECK(r.final_residual < 1e-10);
  }

  TEST_CASE("GMRES residual and preconditioning") {
    const double h = 1.0 / 50;
    const auto dp = discretize(strips(4, h), h);
    const auto subs = strip_partition(dp, Robin1{6.0});
    const auto pre = gmres_solve(dp, subs);
    CHECK(pre.converged);
    CHECK(pre.final_residual <= 2e-6);
    CHECK(pre.error_history.front() == 1.0);
    const auto plain = gmres_solve(dp, {});
    CHECK(plain.iterations > pre.iterations);
    // true solution check on a given right-hand side
    const Vector rhs = random_vector(dp.size(), 99);
    Vector u;
    const auto rep = gmres_solve(dp, subs, rhs, u);
    CHECK(rep.converged);
    CHECK((rhs - dp.A * u).norm() <= 2e-6 * rhs.norm());
  }

  TEST_CASE("sweeps") {
    ProblemParams pp;
    pp.J = 2;
    const std::vector<double> hs{1.0 / 20};
    const auto rows = sweep_mesh(pp, Family::robin1, hs);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].J == 2);
    CHECK(rows[0].iterations > 0);
    const std::vector<int> js{2};
    const auto again = sweep_subdomains(pp, Family::robin1, js, 1.0 / 20, SubdomainMode::fixed_width);
    REQUIRE(again.size() == 1);
    CHECK(again[0].iterations == rows[0].iterations);
    const std::vector<int> js2{2, 4};
    const auto global = sweep_subdomains(pp, Family::dirichlet, js2, 1.0 / 40, SubdomainMode::fixed_global);
    CHECK(global[1].J == 4);
    CHECK(global[1].iterations > 0);
  }
}
