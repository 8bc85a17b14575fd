#include "szilard/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace szilard {

std::string_view to_string(Statistics s) {
  switch (s) {
    case Statistics::boson: return "boson";
    case Statistics::fermion: return "fermion";
    case Statistics::distinguishable: return "distinguishable";
  }
  return "unknown";
}

Statistics parse_statistics(std::string_view text) {
  if (text == "boson") return Statistics::boson;
  if (text == "fermion") return Statistics::fermion;
  if (text == "distinguishable") return Statistics::distinguishable;
  throw std::invalid_argument("unknown statistics '" + std::string(text) + "'");
}

Geometry::Geometry(double barrier_x) : barrier_x_(barrier_x) {
  if (!(barrier_x >= 0.0 && barrier_x <= 1.0)) {
    throw std::invalid_argument("barrier position must lie in [0, 1], got " +
                                std::to_string(barrier_x));
  }
}

void ThermalParams::validate() const {
  if (!(tau >= kMinTau && tau <= kMaxTau)) {
    throw std::invalid_argument("tau must lie in [1e-3, 1e3], got " + std::to_string(tau));
  }
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
    throw std::invalid_argument("tail tolerance must lie in (0, 1)");
  }
}

void SplitConfig::validate() const {
  if (n_total < 1) throw std::invalid_argument("particle number must be >= 1");
  if (m_left < 0 || m_left > n_total) {
    throw std::invalid_argument("split count out of range");
  }
}

double level_energy(double subwell_length, int n) {
  if (n < 1) throw std::invalid_argument("level index must be >= 1");
  if (!(subwell_length > 0.0)) throw GuardError("infinite energy: level of a zero-length subwell");
  const double level = n;
  return level * level / (subwell_length * subwell_length);
}

int truncation_index(double subwell_length, const ThermalParams& thermal, int n_particles) {
  const double scale = std::sqrt(thermal.tau * std::log(1.0 / thermal.tail_tol));
  return static_cast<int>(std::ceil(subwell_length * scale)) + n_particles + 2;
}

LogZ single_particle_log_weight_sum(double subwell_length, const ThermalParams& thermal, int k,
                                    std::optional<int> n_max) {
  if (k < 1) throw std::invalid_argument("Boltzmann power k must be >= 1");
  if (!(subwell_length > 0.0)) return LogZ::zero();
  const int levels = n_max.value_or(truncation_index(subwell_length, thermal, 0));
  const double ground = k * level_energy(subwell_length, 1) / thermal.tau;
  // Factor out the ground term; remaining terms are all < 1.
  double tail = 0.0;
  for (int n = 2; n <= levels; ++n) {
    tail += std::exp(ground - k * level_energy(subwell_length, n) / thermal.tau);
  }
  return LogZ(-ground + std::log1p(tail));
}

double subwell_ground_energy(double subwell_length, int count, Statistics statistics) {
  if (count == 0) return 0.0;
  if (!(subwell_length > 0.0)) return kPosInf;
  if (statistics != Statistics::fermion) return count * level_energy(subwell_length, 1);
  double energy = 0.0;
  for (int n = 1; n <= count; ++n) energy += level_energy(subwell_length, n);
  return energy;
}

double split_ground_energy(const Geometry& geom, const SplitConfig& split) {
  split.validate();
  return subwell_ground_energy(geom.left_length(), split.m_left, split.statistics) +
         subwell_ground_energy(geom.right_length(), split.m_right(), split.statistics);
}

double ground_gap(const Geometry& geom, const SplitConfig& split) {
  const double energy = split_ground_energy(geom, split);
  double lowest = kPosInf;
  for (int m = 0; m <= split.n_total; ++m) {
    lowest = std::min(lowest, split_ground_energy(geom, {m, split.n_total, split.statistics}));
  }
  return energy - lowest;
}

}  // namespace szilard
