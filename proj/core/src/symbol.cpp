#include "osm/symbol.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "osm/error.hpp"

namespace osm {

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorKind::invalid_argument, what);
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

void ProblemParams::validate() const {
  if (!(eta >= 0.0) || !(epsilon >= 0.0)) invalid("eta and epsilon must be nonnegative");
  if (!(L > 0.0)) invalid("L must be positive");
  if (!(Lhat > 0.0)) invalid("Lhat must be positive");
  if (J < 2) invalid("J must be at least 2");
  if (!(delta > 0.0) || !(delta < L)) invalid("overlap must satisfy 0 < delta < L");
  if (const auto* robin = std::get_if<RobinOuter>(&outer_bc)) {
    if (!(robin->p_a > 0.0) || !(robin->p_b > 0.0)) invalid("outer Robin coefficients must be positive");
  }
}

Family family_of(const TransmissionParams& tp) {
  return static_cast<Family>(tp.index());
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::dirichlet: return "dirichlet";
    case Family::robin1: return "robin1";
    case Family::robin2: return "robin2";
    case Family::ventcell1: return "ventcell1";
    case Family::ventcell2: return "ventcell2";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  if (name == "dirichlet" || name == "ras") return Family::dirichlet;
  if (name == "robin1") return Family::robin1;
  if (name == "robin2") return Family::robin2;
  if (name == "ventcell1") return Family::ventcell1;
  if (name == "ventcell2") return Family::ventcell2;
  invalid("unknown transmission family '" + std::string(name) + "'");
}

bool is_two_sided(Family f) { return f == Family::robin2 || f == Family::ventcell2; }

std::size_t coefficient_count(Family f) {
  switch (f) {
    case Family::dirichlet: return 0;
    case Family::robin1: return 1;
    case Family::robin2:
    case Family::ventcell1: return 2;
    case Family::ventcell2: return 4;
  }
  return 0;
}

std::vector<double> coefficients(const TransmissionParams& tp) {
  return std::visit(overloaded{
                        [](const DirichletTransmission&) { return std::vector<double>{}; },
                        [](const Robin1& r) { return std::vector<double>{r.p}; },
                        [](const Robin2& r) { return std::vector<double>{r.p1, r.p2}; },
                        [](const Ventcell1& v) { return std::vector<double>{v.p, v.q}; },
                        [](const Ventcell2& v) { return std::vector<double>{v.p1, v.q1, v.p2, v.q2}; },
                    },
                    tp);
}

TransmissionParams make_transmission(Family f, const std::vector<double>& c) {
  if (c.size() != coefficient_count(f)) invalid("wrong number of transmission coefficients");
  switch (f) {
    case Family::dirichlet: return DirichletTransmission{};
    case Family::robin1: return Robin1{c[0]};
    case Family::robin2: return Robin2{c[0], c[1]};
    case Family::ventcell1: return Ventcell1{c[0], c[1]};
    case Family::ventcell2: return Ventcell2{c[0], c[1], c[2], c[3]};
  }
  invalid("unknown family");
}

void validate(const TransmissionParams& tp) {
  const auto f = family_of(tp);
  const auto c = coefficients(tp);
  const bool has_q = f == Family::ventcell1 || f == Family::ventcell2;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const bool is_q = has_q && (i % 2 == 1);
    if (is_q ? !(c[i] >= 0.0) : !(c[i] > 0.0)) {
      invalid(std::string(family_name(f)) + ": p coefficients must be > 0 and q coefficients >= 0");
    }
  }
}

CoefficientSet coefficient_set(const TransmissionParams& tp, Side side, int interface) {
  // set 1 sits on the plus side of odd interfaces
  const bool first = ((interface % 2 != 0) == (side == Side::plus));
  return std::visit(overloaded{
                        [](const DirichletTransmission&) { return CoefficientSet{0.0, 0.0, true}; },
                        [](const Robin1& r) { return CoefficientSet{r.p, 0.0, false}; },
                        [&](const Robin2& r) { return CoefficientSet{first ? r.p1 : r.p2, 0.0, false}; },
                        [](const Ventcell1& v) { return CoefficientSet{v.p, v.q, false}; },
                        [&](const Ventcell2& v) {
                          return first ? CoefficientSet{v.p1, v.q1, false} : CoefficientSet{v.p2, v.q2, false};
                        },
                    },
                    tp);
}

double effective_p(const TransmissionParams& tp, Side side, double k, int interface) {
  const auto set = coefficient_set(tp, side, interface);
  if (set.infinite) return std::numeric_limits<double>::infinity();
  return set.p + k * k * set.q;
}

Symbol fourier_symbol(double k, const ProblemParams& pp) {
  const double re = k * k + pp.eta;
  if (re == 0.0 && pp.epsilon == 0.0) return {Complex{0.0, 0.0}, true};
  Complex s = std::sqrt(Complex{re, -pp.epsilon});
  if (s.real() < 0.0) s = -s;
  return {s, false};
}

FrequencyGrid frequency_grid(const ProblemParams& pp, double h) {
  if (!(h > 0.0)) invalid("mesh size must be positive");
  if (h >= pp.Lhat) throw Error(ErrorKind::mesh_coarser_than_domain, "mesh coarser than domain");
  // Lhat/h is integral in every practical configuration; the slack keeps
  // 1/(1/100) from rounding up to 101.
  const int M = static_cast<int>(std::ceil(pp.Lhat / h - 1e-9));
  FrequencyGrid grid;
  grid.M = M;
  grid.samples.reserve(static_cast<std::size_t>(M));
  const double dk = std::numbers::pi / pp.Lhat;
  for (int m = 1; m <= M; ++m) grid.samples.push_back(m * dk);
  grid.k_min = grid.samples.front();
  grid.k_max = grid.samples.back();
  return grid;
}

}  // namespace osm
