#include "szilard/partition.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace szilard {

namespace {

// Largest error amplification tolerated from the alternating fermion
// recursion before switching to the positive-weight level sweep.
constexpr double kMaxAmplification = 1e4;

struct RecursionOutcome {
  double log_z = kNegInf;
  bool well_conditioned = false;
};

// Z_M = (1/M) sum_{k=1..M} sign^{k-1} z(k beta) Z_{M-k}, in log domain.
// Tracks the product over M of sum|t_k| / |sum t_k|, which bounds how much
// rounding in the inputs is amplified.
RecursionOutcome canonical_recursion(const std::vector<double>& log_zk, int count, int sign) {
  std::vector<double> log_z(count + 1, kNegInf);
  log_z[0] = 0.0;
  double amplification = 1.0;
  for (int total = 1; total <= count; ++total) {
    double peak = kNegInf;
    for (int k = 1; k <= total; ++k) peak = std::max(peak, log_zk[k - 1] + log_z[total - k]);
    double signed_sum = 0.0;
    double abs_sum = 0.0;
    for (int k = 1; k <= total; ++k) {
      const double term = std::exp(log_zk[k - 1] + log_z[total - k] - peak);
      const bool negative = sign < 0 && k % 2 == 0;
      signed_sum += negative ? -term : term;
      abs_sum += term;
    }
    if (!(signed_sum > 0.0)) return {};
    amplification *= abs_sum / signed_sum;
    if (amplification > kMaxAmplification) return {};
    log_z[total] = peak + std::log(signed_sum) - std::log(static_cast<double>(total));
  }
  return {log_z[count], true};
}

// Elementary symmetric polynomial e_count of the level weights, accumulated
// level by level; every term is positive.
double fermion_level_sweep(double length, int count, const ThermalParams& thermal, int n_max) {
  std::vector<double> e(count + 1, kNegInf);
  e[0] = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const double log_weight = -level_energy(length, n) / thermal.tau;
    for (int j = std::min(n, count); j >= 1; --j) {
      e[j] = log_add(LogZ(e[j]), LogZ(log_weight + e[j - 1])).value();
    }
  }
  return e[count];
}

}  // namespace

std::string_view to_string(Measurement m) {
  return m == Measurement::side_counts ? "counts" : "labels";
}

Measurement parse_measurement(std::string_view text) {
  if (text == "counts" || text == "side_counts") return Measurement::side_counts;
  if (text == "labels" || text == "full_labels") return Measurement::full_labels;
  throw std::invalid_argument("unknown measurement '" + std::string(text) + "'");
}

void EnsembleSpec::validate() const {
  if (n_particles < 1) throw std::invalid_argument("particle number must be >= 1");
  if (measurement == Measurement::full_labels && statistics != Statistics::distinguishable) {
    throw std::invalid_argument("label-resolving measurement requires distinguishable particles");
  }
}

long EnsembleSpec::multiplicity(int m_left) const {
  return measurement == Measurement::full_labels ? binomial(n_particles, m_left) : 1;
}

LogZ log_z_canonical(double subwell_length, int count, Statistics statistics,
                     const ThermalParams& thermal) {
  return log_z_canonical(subwell_length, count, statistics, thermal,
                         truncation_index(subwell_length, thermal, count));
}

LogZ log_z_canonical(double subwell_length, int count, Statistics statistics,
                     const ThermalParams& thermal, int n_max) {
  if (count < 0) throw std::invalid_argument("particle count must be >= 0");
  if (count == 0) return LogZ::one();
  if (!(subwell_length > 0.0)) return LogZ::zero();

  if (statistics == Statistics::distinguishable) {
    return single_particle_log_weight_sum(subwell_length, thermal, 1, n_max).pow(count);
  }
  if (statistics == Statistics::fermion && n_max < count) {
    throw GuardError("insufficient truncation: " + std::to_string(n_max) + " levels for " +
                     std::to_string(count) + " fermions");
  }

  std::vector<double> log_zk(count);
  for (int k = 1; k <= count; ++k) {
    log_zk[k - 1] = single_particle_log_weight_sum(subwell_length, thermal, k, n_max).value();
  }
  const int sign = statistics == Statistics::boson ? +1 : -1;
  const RecursionOutcome rec = canonical_recursion(log_zk, count, sign);
  if (rec.well_conditioned) return LogZ(rec.log_z);
  if (statistics == Statistics::boson) {
    throw GuardError("boson recursion lost positivity");
  }
  return LogZ(fermion_level_sweep(subwell_length, count, thermal, n_max));
}

LogZ log_z_whole(const EnsembleSpec& ensemble, const ThermalParams& thermal) {
  return log_z_canonical(1.0, ensemble.n_particles, ensemble.statistics, thermal);
}

LogZ log_z_split(const Geometry& geom, int m_left, const EnsembleSpec& ensemble,
                 const ThermalParams& thermal) {
  ensemble.split(m_left).validate();
  const int n = ensemble.n_particles;
  LogZ z = log_z_canonical(geom.left_length(), m_left, ensemble.statistics, thermal) *
           log_z_canonical(geom.right_length(), n - m_left, ensemble.statistics, thermal);
  if (ensemble.statistics == Statistics::distinguishable &&
      ensemble.measurement == Measurement::side_counts) {
    z = z * LogZ(log_binomial(n, m_left));
  }
  return z;
}

LogZ log_z_divided(const Geometry& geom, const EnsembleSpec& ensemble,
                   const ThermalParams& thermal) {
  // Sum over side-count outcomes; for labeled splits the C(N, m) label
  // multiplicity is added back (binomial theorem for distinguishable).
  LogSumAccumulator acc;
  for (int m = 0; m <= ensemble.n_particles; ++m) {
    double term = log_z_split(geom, m, ensemble, thermal).value();
    if (ensemble.measurement == Measurement::full_labels) {
      term += log_binomial(ensemble.n_particles, m);
    }
    acc.add(term);
  }
  return acc.result();
}

}  // namespace szilard
