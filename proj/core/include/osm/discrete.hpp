#pragma once

#include <Eigen/Sparse>
#include <cstdint>
#include <functional>
#include <variant>

#include "osm/symbol.hpp"

namespace osm {

using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::ColMajor, int>;
using Vector = Eigen::VectorXcd;

struct ZeroForcing {};

/// Discrete delta at the grid node nearest to (x, y), scaled by 1/h^2.
struct PointSource {
  double x = 0.5;
  double y = 0.5;
  Complex amplitude{1.0, 0.0};
};

struct FieldForcing {
  std::function<Complex(double, double)> f;
};

/// Uniform complex entries in the unit square.
struct RandomForcing {
  std::uint64_t seed = 0x5EED;
};

using Forcing = std::variant<ZeroForcing, PointSource, FieldForcing, RandomForcing>;

/// 5-point discretization of  Δu - (eta - i epsilon) u = f  on
/// [0, J L] x [0, Lhat] with homogeneous Dirichlet data, written as
/// A u = b with A = -Δ_h + (eta - i epsilon) I and b = -f.
///
/// Unknowns are the interior nodes (c h, r h), c = 1..nx, r = 1..ny,
/// numbered column by column: index (c - 1) ny + (r - 1).
struct DiscreteProblem {
  double h = 0.0;
  int nx = 0;
  int ny = 0;
  int J = 1;
  int cells_per_subdomain = 0;  // L / h
  int overlap_cells = 2;        // delta / h
  Complex shift{};              // eta - i epsilon
  SparseMatrix A;
  Vector b;

  int index(int c, int r) const { return (c - 1) * ny + (r - 1); }
  Eigen::Index size() const { return static_cast<Eigen::Index>(nx) * ny; }
};

/// Builds the global system. `pp.J` may be 1 here; the overlap `pp.delta`
/// must be an even multiple of h and L / h, Lhat / h integers.
/// Throws Error(grid_misalignment) otherwise.
DiscreteProblem discretize(const ProblemParams& pp, double h, const Forcing& f = ZeroForcing{});

}  // namespace osm
