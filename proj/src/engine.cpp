#include "szilard/engine.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "szilard/optimize.hpp"

namespace szilard {

std::string_view to_string(Protocol p) {
  return p == Protocol::optimal ? "optimal" : "two-phase";
}

Protocol parse_protocol(std::string_view text) {
  if (text == "optimal") return Protocol::optimal;
  if (text == "two-phase" || text == "two_phase") return Protocol::two_phase;
  throw std::invalid_argument("unknown protocol '" + std::string(text) + "'");
}

TargetPolicy TargetPolicy::fixed(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("fixed target must lie in [0, 1]");
  return TargetPolicy(Kind::fixed, x);
}

std::string TargetPolicy::to_string() const {
  if (kind_ == Kind::equilibrium_or_edge) return "equilibrium";
  char buf[64];
  std::snprintf(buf, sizeof buf, "fixed:%.12g", fixed_x_);
  return buf;
}

TargetPolicy TargetPolicy::parse(std::string_view text) {
  if (text == "equilibrium" || text == "equilibrium-or-edge") return equilibrium_or_edge();
  constexpr std::string_view prefix = "fixed:";
  if (text.starts_with(prefix)) {
    const std::string value(text.substr(prefix.size()));
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) {
      throw std::invalid_argument("bad fixed target '" + value + "'");
    }
    return fixed(x);
  }
  throw std::invalid_argument("unknown target policy '" + std::string(text) + "'");
}

void CycleConfig::validate() const {
  ensemble.validate();
  thermal.validate();
  Geometry{insertion_x};
}

double CycleReport::branch_cycle_work(std::size_t i) const {
  const OutcomeBranch& b = branches.at(i);
  return insertion_work + b.movement_work + b.removal_work;
}

double insertion_work(const Geometry& geom, const EnsembleSpec& ensemble,
                      const ThermalParams& thermal) {
  const LogZ divided = log_z_divided(geom, ensemble, thermal);
  const LogZ free_box = log_z_whole(ensemble, thermal);
  return thermal.tau * (divided.value() - free_box.value());
}

OutcomeDistribution outcome_distribution(const Geometry& geom, const EnsembleSpec& ensemble,
                                         const ThermalParams& thermal) {
  const double divided = log_z_divided(geom, ensemble, thermal).value();
  OutcomeDistribution dist;
  for (int m = 0; m <= ensemble.n_particles; ++m) {
    const LogZ split = log_z_split(geom, m, ensemble, thermal);
    const long mult = ensemble.multiplicity(m);
    const double p = split.is_zero() ? 0.0 : std::exp(split.value() - divided);
    if (p < kPruneProbability) {
      dist.pruned_probability += mult * p;
      continue;
    }
    dist.outcomes.push_back({ensemble.split(m), mult, p});
  }
  return dist;
}

namespace {

LogZ occupied_split(double x, int m_left, const EnsembleSpec& ensemble,
                    const ThermalParams& thermal) {
  const LogZ z = log_z_split(Geometry(x), m_left, ensemble, thermal);
  if (z.is_zero()) {
    throw GuardError("barrier at x=" + std::to_string(x) + " squeezes an occupied subwell (split " +
                     std::to_string(m_left) + ":" + std::to_string(ensemble.n_particles - m_left) +
                     ")");
  }
  return z;
}

}  // namespace

double movement_work(double from_x, double to_x, int m_left, const EnsembleSpec& ensemble,
                     const ThermalParams& thermal) {
  const LogZ from = occupied_split(from_x, m_left, ensemble, thermal);
  const LogZ to = occupied_split(to_x, m_left, ensemble, thermal);
  return thermal.tau * (to.value() - from.value());
}

RemovalWork removal_work(const Geometry& geom, int m_left, const EnsembleSpec& ensemble,
                         const ThermalParams& thermal, Protocol protocol) {
  const double conditional = occupied_split(geom.barrier_x(), m_left, ensemble, thermal).value();
  const double free_box = log_z_whole(ensemble, thermal).value();
  if (protocol == Protocol::optimal) {
    return {thermal.tau * (free_box - conditional), 0.0};
  }
  const double divided = log_z_divided(geom, ensemble, thermal).value();
  return {thermal.tau * (free_box - divided), thermal.tau * (divided - conditional)};
}

double outcome_entropy(std::span<const Outcome> outcomes) {
  double h = 0.0;
  for (const Outcome& o : outcomes) {
    if (o.probability > 0.0) h -= o.multiplicity * o.probability * std::log(o.probability);
  }
  return h;
}

std::vector<double> resolve_targets(const TargetPolicy& policy, const EnsembleSpec& ensemble,
                                    const ThermalParams& thermal) {
  const int n = ensemble.n_particles;
  std::vector<double> targets(n + 1, policy.fixed_x());
  if (policy.kind() == TargetPolicy::Kind::fixed) return targets;
  targets.front() = 0.0;
  targets.back() = 1.0;
  for (int m = 1; m < n; ++m) targets[m] = equilibrium_position(m, ensemble, thermal).x_star;
  return targets;
}

CycleReport run_cycle(const CycleConfig& config) {
  config.validate();
  const auto targets = resolve_targets(config.target_policy, config.ensemble, config.thermal);
  return run_cycle(config, targets);
}

CycleReport run_cycle(const CycleConfig& config, std::span<const double> targets) {
  config.validate();
  const EnsembleSpec& ens = config.ensemble;
  const ThermalParams& th = config.thermal;
  if (targets.size() != static_cast<std::size_t>(ens.n_particles + 1)) {
    throw std::invalid_argument("need one target per split");
  }
  const Geometry geom(config.insertion_x);

  CycleReport report;
  report.config = config;
  report.insertion_work = insertion_work(geom, ens, th);

  const OutcomeDistribution dist = outcome_distribution(geom, ens, th);
  report.pruned_probability = dist.pruned_probability;
  report.outcome_entropy = outcome_entropy(dist.outcomes);

  double expected = 0.0;
  for (const Outcome& o : dist.outcomes) {
    OutcomeBranch b;
    b.split = o.split;
    b.multiplicity = o.multiplicity;
    b.probability = o.probability;
    b.target_x = targets[o.split.m_left];
    b.movement_work = movement_work(config.insertion_x, b.target_x, o.split.m_left, ens, th);
    const RemovalWork rem = removal_work(Geometry(b.target_x), o.split.m_left, ens, th,
                                         config.protocol);
    b.removal_work = rem.work;
    b.dissipation = rem.dissipation;
    report.branches.push_back(b);
    // Grouped per branch so rounding in p multiplies the small conditional
    // cycle work rather than the large stage works; equal to
    // insertion + sum p (movement + removal) because sum p = 1.
    expected += b.multiplicity * b.probability * report.branch_cycle_work(report.branches.size() - 1);
  }
  report.total_work = expected;
  report.identity_residual = std::abs(report.total_work - th.tau * report.outcome_entropy);
  return report;
}

}  // namespace szilard
