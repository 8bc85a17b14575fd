#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "szilard/partition.hpp"

// Work accounting for the four-stage cycle: insert the barrier, measure the
// split, move the barrier quasi-statically, remove it. Positive work is work
// extracted by the agent; every stage is an isothermal free-energy change
// tau * ln(Z_after / Z_before).

namespace szilard {

enum class Protocol {
  /// Every generalized force on the barrier is harvested.
  optimal,
  /// Barrier first lowered until tunnelling is free (nothing extracted,
  /// conditional-to-divided free-energy drop lost), then removed.
  two_phase,
};

std::string_view to_string(Protocol p);
Protocol parse_protocol(std::string_view text);

/// Where the barrier is moved to after the split is known.
class TargetPolicy {
 public:
  enum class Kind { equilibrium_or_edge, fixed };

  /// One-sided splits go to the adjacent edge, mixed ones to the
  /// pressure-balance position.
  static TargetPolicy equilibrium_or_edge() { return TargetPolicy(Kind::equilibrium_or_edge, 0.0); }
  static TargetPolicy fixed(double x);

  Kind kind() const { return kind_; }
  double fixed_x() const { return fixed_x_; }
  std::string to_string() const;
  static TargetPolicy parse(std::string_view text);

 private:
  TargetPolicy(Kind kind, double x) : kind_(kind), fixed_x_(x) {}
  Kind kind_;
  double fixed_x_;
};

struct Outcome {
  SplitConfig split;
  long multiplicity = 1;
  double probability = 0.0;  // per single labeled outcome
};

struct OutcomeDistribution {
  std::vector<Outcome> outcomes;
  /// Probability mass of dropped (p < 1e-300) outcomes.
  double pruned_probability = 0.0;
};

struct OutcomeBranch {
  SplitConfig split;
  long multiplicity = 1;
  double probability = 0.0;
  double target_x = 0.0;
  double movement_work = 0.0;
  double removal_work = 0.0;
  double dissipation = 0.0;
};

struct CycleConfig {
  EnsembleSpec ensemble;
  ThermalParams thermal;
  double insertion_x = 0.5;
  Protocol protocol = Protocol::optimal;
  TargetPolicy target_policy = TargetPolicy::equilibrium_or_edge();

  void validate() const;
};

struct CycleReport {
  CycleConfig config;
  double insertion_work = 0.0;
  std::vector<OutcomeBranch> branches;
  double total_work = 0.0;
  double outcome_entropy = 0.0;
  /// |total_work - tau * outcome_entropy|; zero up to rounding for the
  /// optimal protocol, the mean dissipation for two-phase removal.
  double identity_residual = 0.0;
  double pruned_probability = 0.0;

  /// Work of the whole cycle conditional on branch i being measured.
  double branch_cycle_work(std::size_t i) const;
};

struct RemovalWork {
  double work = 0.0;
  double dissipation = 0.0;
};

inline constexpr double kPruneProbability = 1e-300;

/// tau * ln(Z_divided / Z_free); <= 0, exactly 0 at x in {0, 1}.
double insertion_work(const Geometry& geom, const EnsembleSpec& ensemble,
                      const ThermalParams& thermal);

OutcomeDistribution outcome_distribution(const Geometry& geom, const EnsembleSpec& ensemble,
                                         const ThermalParams& thermal);

/// tau * ln(Z_m(to) / Z_m(from)). Throws GuardError when either endpoint
/// squeezes an occupied subwell to zero length.
double movement_work(double from_x, double to_x, int m_left, const EnsembleSpec& ensemble,
                     const ThermalParams& thermal);

RemovalWork removal_work(const Geometry& geom, int m_left, const EnsembleSpec& ensemble,
                         const ThermalParams& thermal, Protocol protocol);

/// -sum multiplicity * p * ln p.
double outcome_entropy(std::span<const Outcome> outcomes);

/// Barrier target for every split m = 0..N under the policy.
std::vector<double> resolve_targets(const TargetPolicy& policy, const EnsembleSpec& ensemble,
                                    const ThermalParams& thermal);

CycleReport run_cycle(const CycleConfig& config);

/// run_cycle with precomputed per-split targets (index m).
CycleReport run_cycle(const CycleConfig& config, std::span<const double> targets);

}  // namespace szilard
