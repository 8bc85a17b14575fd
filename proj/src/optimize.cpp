#include "szilard/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace szilard {

namespace {

constexpr double kEquilibriumLo = 1e-4;
constexpr double kEquilibriumHi = 1.0 - 1e-4;

// a beats b only by more than rounding noise.
bool clearly_greater(double a, double b) {
  if (b == kNegInf) return a > b;
  return a > b + 1e-13 * std::max(1.0, std::abs(b));
}

struct ScanBest {
  std::size_t index = 0;
  double value = kNegInf;
};

ScanBest scan(const std::vector<double>& grid, const std::function<double(double)>& f) {
  ScanBest best;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = f(grid[i]);
    if (clearly_greater(v, best.value)) best = {i, v};
  }
  return best;
}

}  // namespace

BracketResult golden_section_maximize(const std::function<double(double)>& f, double lo,
                                      double hi, double tolerance, int max_iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  while (it < max_iterations && b - a > tolerance) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++it;
  }
  BracketResult r;
  r.iterations = it;
  r.converged = b - a <= tolerance;
  if (fc >= fd) {
    r.x_star = c;
    r.objective_value = fc;
  } else {
    r.x_star = d;
    r.objective_value = fd;
  }
  return r;
}

double generalized_force(double x, int m_left, const EnsembleSpec& ensemble,
                         const ThermalParams& thermal) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw GuardError("force evaluated off the box at x=" + std::to_string(x));
  }
  const double lo = std::max(0.0, x - kForceStep);
  const double hi = std::min(1.0, x + kForceStep);
  const LogZ z_lo = log_z_split(Geometry(lo), m_left, ensemble, thermal);
  const LogZ z_hi = log_z_split(Geometry(hi), m_left, ensemble, thermal);
  if (z_lo.is_zero() || z_hi.is_zero()) {
    throw GuardError("force stencil at x=" + std::to_string(x) +
                     " squeezes an occupied subwell");
  }
  return thermal.tau * (z_hi.value() - z_lo.value()) / (hi - lo);
}

BracketResult equilibrium_position(int m_left, const EnsembleSpec& ensemble,
                                   const ThermalParams& thermal) {
  ensemble.split(m_left).validate();
  const auto objective = [&](double x) {
    return log_z_split(Geometry(x), m_left, ensemble, thermal).value();
  };

  std::vector<double> grid(kEquilibriumScanPoints);
  for (int i = 0; i < kEquilibriumScanPoints; ++i) {
    grid[i] = kEquilibriumLo + (kEquilibriumHi - kEquilibriumLo) * i / (kEquilibriumScanPoints - 1);
  }
  const ScanBest best = scan(grid, objective);

  // Scan maximal at a boundary point: the optimum is the box edge itself if
  // the edge is admissible (all particles on the surviving side).
  if (best.index == 0 || best.index + 1 == grid.size()) {
    const double edge = best.index == 0 ? 0.0 : 1.0;
    const double at_edge = objective(edge);
    if (at_edge != kNegInf && at_edge >= best.value) return {edge, at_edge, 0, true};
  }

  const double lo = best.index == 0 ? kEquilibriumLo : grid[best.index - 1];
  const double hi = best.index + 1 == grid.size() ? kEquilibriumHi : grid[best.index + 1];
  BracketResult r = golden_section_maximize(objective, lo, hi);
  if (clearly_greater(best.value, r.objective_value)) {
    r.x_star = grid[best.index];
    r.objective_value = best.value;
  }
  return r;
}

BracketResult optimal_insertion_position(const EnsembleSpec& ensemble, const ThermalParams& thermal,
                                         Protocol protocol, const TargetPolicy& policy) {
  ensemble.validate();
  thermal.validate();
  // Targets depend on the split only, not on where the barrier went in.
  const std::vector<double> targets = resolve_targets(policy, ensemble, thermal);
  CycleConfig cfg{ensemble, thermal, 0.5, protocol, policy};
  const auto objective = [&](double x) {
    cfg.insertion_x = x;
    return run_cycle(cfg, targets).total_work;
  };

  std::vector<double> grid(kInsertionScanPoints);
  for (int i = 0; i < kInsertionScanPoints; ++i) {
    grid[i] = static_cast<double>(i + 1) / (kInsertionScanPoints + 1);
  }
  const ScanBest best = scan(grid, objective);
  const double lo = best.index == 0 ? 0.0 : grid[best.index - 1];
  const double hi = best.index + 1 == grid.size() ? 1.0 : grid[best.index + 1];
  BracketResult r = golden_section_maximize(objective, lo, hi);
  if (!clearly_greater(r.objective_value, best.value)) {
    r.x_star = grid[best.index];
    r.objective_value = best.value;
  }
  return r;
}

}  // namespace szilard
