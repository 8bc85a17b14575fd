#pragma once

#include <optional>
#include <string_view>
#include <variant>

#include "szilard/log_domain.hpp"
#include "szilard/spectrum.hpp"

namespace szilard {

/// What the measurement after insertion reveals: only how many particles
/// sit on each side, or (distinguishable particles only) which ones.
enum class Measurement { side_counts, full_labels };

std::string_view to_string(Measurement m);
Measurement parse_measurement(std::string_view text);

struct EnsembleSpec {
  int n_particles = 1;
  Statistics statistics = Statistics::boson;
  Measurement measurement = Measurement::side_counts;

  /// Throws std::invalid_argument for N < 1 or labels with identical particles.
  void validate() const;
  SplitConfig split(int m_left) const { return {m_left, n_particles, statistics}; }
  /// Number of labeled configurations each side-count outcome stands for.
  long multiplicity(int m_left) const;
};

/// Canonical log Z of `count` particles in one box of the given length.
/// count = 0 gives log Z = 0; an occupied zero-length box gives -inf.
LogZ log_z_canonical(double subwell_length, int count, Statistics statistics,
                     const ThermalParams& thermal);

/// Same, with an explicit number of single-particle levels. Throws
/// GuardError("insufficient truncation") when fermions do not fit.
LogZ log_z_canonical(double subwell_length, int count, Statistics statistics,
                     const ThermalParams& thermal, int n_max);

/// log Z of the undivided unit box.
LogZ log_z_whole(const EnsembleSpec& ensemble, const ThermalParams& thermal);

/// Conditional log Z given m_left particles on the left. Distinguishable
/// particles measured by side counts carry the C(N, m) label multiplicity;
/// with full labels the value is per labeled configuration.
LogZ log_z_split(const Geometry& geom, int m_left, const EnsembleSpec& ensemble,
                 const ThermalParams& thermal);

/// log Z of the divided box, summed over all splits.
LogZ log_z_divided(const Geometry& geom, const EnsembleSpec& ensemble,
                   const ThermalParams& thermal);

// Brute-force enumeration oracle. Independent of the recursions above: it
// sums Boltzmann weights over explicit many-body configurations.

struct WholeBox {
  double length = 1.0;
};
struct SplitBox {
  Geometry geom;
  int m_left;
};
struct DividedBox {
  Geometry geom;
};
using BoxSelector = std::variant<WholeBox, SplitBox, DividedBox>;

inline constexpr int kOracleMaxParticles = 4;
inline constexpr int kOracleMaxLevels = 40;

/// Throws GuardError("oracle scale exceeded") above 4 particles or 40 levels
/// per subwell. Levels default to truncation_index(length, thermal, N).
LogZ brute_force_log_z(const BoxSelector& selector, const EnsembleSpec& ensemble,
                       const ThermalParams& thermal,
                       std::optional<int> n_max_override = std::nullopt);

}  // namespace szilard
