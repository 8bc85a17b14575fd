#pragma once

#include <optional>
#include <string_view>

#include "szilard/log_domain.hpp"

// Reduced units throughout: box length L = 1, E0 = pi^2 hbar^2 / (2 m L^2) = 1,
// Boltzmann constant k = 1. Temperatures are tau = kT / E0.

namespace szilard {

enum class Statistics { boson, fermion, distinguishable };

std::string_view to_string(Statistics s);
Statistics parse_statistics(std::string_view text);

/// Position of the barrier as a fraction of the box; the left subwell has
/// length barrier_x and the right one 1 - barrier_x. The values 0 and 1
/// mean the box is not divided.
class Geometry {
 public:
  explicit Geometry(double barrier_x);

  double barrier_x() const { return barrier_x_; }
  double left_length() const { return barrier_x_; }
  double right_length() const { return 1.0 - barrier_x_; }
  Geometry mirrored() const { return Geometry(1.0 - barrier_x_); }

 private:
  double barrier_x_;
};

struct ThermalParams {
  static constexpr double kMinTau = 1e-3;
  static constexpr double kMaxTau = 1e3;

  double tau = 1.0;
  double tail_tol = 1e-16;

  /// Throws std::invalid_argument outside the supported range.
  void validate() const;
};

/// m_left of n_total particles sit in the left subwell.
struct SplitConfig {
  int m_left = 0;
  int n_total = 1;
  Statistics statistics = Statistics::boson;

  int m_right() const { return n_total - m_left; }
  SplitConfig mirrored() const { return {n_total - m_left, n_total, statistics}; }
  void validate() const;
};

/// n^2 / length^2. Throws GuardError for a zero-length subwell.
double level_energy(double subwell_length, int n);

/// Number of levels kept so that the Boltzmann tail beyond it is below
/// tail_tol relative to the ground term, with room for n_particles fermions.
int truncation_index(double subwell_length, const ThermalParams& thermal, int n_particles);

/// log sum_{n=1..n_max} exp(-k E_n / tau); log of the empty sum (-inf) for a
/// zero-length subwell. n_max defaults to truncation_index(length, thermal, 0).
LogZ single_particle_log_weight_sum(double subwell_length, const ThermalParams& thermal, int k,
                                    std::optional<int> n_max = std::nullopt);

/// Lowest many-body energy of one subwell holding `count` particles.
/// +inf if count > 0 and the subwell has zero length.
double subwell_ground_energy(double subwell_length, int count, Statistics statistics);

/// Lowest energy of the divided box with the given split; +inf when an
/// occupied subwell has zero length.
double split_ground_energy(const Geometry& geom, const SplitConfig& split);

/// Energy released when `split` relaxes to the lowest-energy split of the
/// divided box. Always >= 0.
double ground_gap(const Geometry& geom, const SplitConfig& split);

}  // namespace szilard
