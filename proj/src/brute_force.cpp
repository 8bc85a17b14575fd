#include <functional>
#include <vector>

#include "szilard/partition.hpp"

namespace szilard {

namespace {

struct SingleParticleState {
  double energy;
  bool left;
};

struct Enumeration {
  std::vector<SingleParticleState> states;
  // -1: no constraint; otherwise the required number of particles on the left.
  int required_left = -1;
  // Labeled split: particle i must sit on the left iff i < required_left.
  bool labeled = false;
};

void append_levels(std::vector<SingleParticleState>& states, double length, bool left,
                   int levels) {
  if (!(length > 0.0)) return;
  for (int n = 1; n <= levels; ++n) states.push_back({level_energy(length, n), left});
}

int levels_for(double length, const ThermalParams& thermal, int n_particles,
               std::optional<int> n_max_override) {
  const int levels = n_max_override.value_or(truncation_index(length, thermal, n_particles));
  if (levels > kOracleMaxLevels) {
    throw GuardError("oracle scale exceeded: " + std::to_string(levels) + " levels");
  }
  return levels;
}

}  // namespace

LogZ brute_force_log_z(const BoxSelector& selector, const EnsembleSpec& ensemble,
                       const ThermalParams& thermal, std::optional<int> n_max_override) {
  ensemble.validate();
  const int n = ensemble.n_particles;
  if (n > kOracleMaxParticles) {
    throw GuardError("oracle scale exceeded: " + std::to_string(n) + " particles");
  }
  if (n_max_override && *n_max_override > kOracleMaxLevels) {
    throw GuardError("oracle scale exceeded: " + std::to_string(*n_max_override) + " levels");
  }

  Enumeration en;
  if (const auto* whole = std::get_if<WholeBox>(&selector)) {
    append_levels(en.states, whole->length, true,
                  levels_for(whole->length, thermal, n, n_max_override));
  } else {
    const Geometry geom = std::holds_alternative<SplitBox>(selector)
                              ? std::get<SplitBox>(selector).geom
                              : std::get<DividedBox>(selector).geom;
    append_levels(en.states, geom.left_length(), true,
                  levels_for(geom.left_length(), thermal, n, n_max_override));
    append_levels(en.states, geom.right_length(), false,
                  levels_for(geom.right_length(), thermal, n, n_max_override));
    if (const auto* split = std::get_if<SplitBox>(&selector)) {
      ensemble.split(split->m_left).validate();
      en.required_left = split->m_left;
      en.labeled = ensemble.measurement == Measurement::full_labels;
    }
  }

  // Bosons: non-decreasing state indices (multisets). Fermions: strictly
  // increasing (subsets). Distinguishable: every ordered tuple.
  const int count_states = static_cast<int>(en.states.size());
  LogSumAccumulator acc;
  std::vector<int> chosen(n);
  std::function<void(int, int, double, int)> visit = [&](int particle, int first, double energy,
                                                         int on_left) {
    if (particle == n) {
      if (en.required_left < 0 || on_left == en.required_left) acc.add(-energy / thermal.tau);
      return;
    }
    for (int s = first; s < count_states; ++s) {
      const SingleParticleState& st = en.states[s];
      if (en.labeled && st.left != (particle < en.required_left)) continue;
      const int next_first = ensemble.statistics == Statistics::boson     ? s
                             : ensemble.statistics == Statistics::fermion ? s + 1
                                                                          : 0;
      visit(particle + 1, next_first, energy + st.energy, on_left + (st.left ? 1 : 0));
    }
  };
  visit(0, 0, 0.0, 0);
  return acc.result();
}

}  // namespace szilard
