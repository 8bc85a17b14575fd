#pragma once

#include <functional>

#include "szilard/engine.hpp"

namespace szilard {

struct BracketResult {
  double x_star = 0.0;
  double objective_value = 0.0;
  int iterations = 0;
  /// Final bracket width <= tolerance (which is <= 1e-6).
  bool converged = false;
};

inline constexpr double kForceStep = 1e-6;
inline constexpr int kEquilibriumScanPoints = 64;
inline constexpr int kInsertionScanPoints = 129;
inline constexpr int kGoldenMaxIterations = 100;
inline constexpr double kGoldenTolerance = 1e-9;

/// Maximizes f on [lo, hi] by golden-section search. Ties move toward
/// smaller x.
BracketResult golden_section_maximize(const std::function<double(double)>& f, double lo,
                                      double hi, double tolerance = kGoldenTolerance,
                                      int max_iterations = kGoldenMaxIterations);

/// Isothermal force on the barrier, tau * d/dx ln Z_m(x), by central
/// difference. Positive pushes the barrier right. Throws GuardError when a
/// stencil point squeezes an occupied subwell or x is off the box.
double generalized_force(double x, int m_left, const EnsembleSpec& ensemble,
                         const ThermalParams& thermal);

/// Barrier position maximizing ln Z_m(x): the point where the pressures from
/// both sides balance. One-sided splits return the edge exactly.
BracketResult equilibrium_position(int m_left, const EnsembleSpec& ensemble,
                                   const ThermalParams& thermal);

/// Insertion point maximizing the expected cycle work.
BracketResult optimal_insertion_position(
    const EnsembleSpec& ensemble, const ThermalParams& thermal, Protocol protocol,
    const TargetPolicy& policy = TargetPolicy::equilibrium_or_edge());

}  // namespace szilard
