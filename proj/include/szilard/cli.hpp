#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "szilard/engine.hpp"

namespace szilard::cli {

enum class OutputFormat { json, csv };

/// "var:min:max:steps" with var in {tau, x, n}. tau is log-spaced, the
/// others linear; steps >= 2.
struct SweepSpec {
  enum class Variable { tau, x, n };

  Variable variable = Variable::tau;
  double min = 0.0;
  double max = 0.0;
  int steps = 2;

  static SweepSpec parse(std::string_view text);
  std::string_view variable_name() const;
  /// Ascending grid; integer-valued for n.
  std::vector<double> grid() const;
};

struct RunConfig {
  int n_particles = 1;
  Statistics statistics = Statistics::boson;
  Measurement measurement = Measurement::side_counts;
  double tau = 1.0;
  /// nullopt means "auto": optimize the insertion point.
  std::optional<double> insertion_x = 0.5;
  Protocol protocol = Protocol::optimal;
  TargetPolicy target_policy = TargetPolicy::equilibrium_or_edge();
  OutputFormat output = OutputFormat::json;
  double tail_tol = 1e-16;
  std::optional<SweepSpec> sweep;
  std::uint64_t seed = 12345;

  /// Throws std::invalid_argument; called before any computation.
  void validate() const;
  EnsembleSpec ensemble() const;
  ThermalParams thermal() const;
};

/// printf "%.12g"; non-finite values become "null" in JSON and "nan"/"inf" in CSV.
std::string format_number(double value);

/// Runs one cycle, resolving "auto" insertion first.
CycleReport evaluate(const RunConfig& config);

std::string report_to_json(const CycleReport& report, const RunConfig& config);

std::string csv_header();
std::string csv_row(std::string_view variable, double value, const CycleReport& report,
                    const RunConfig& config);

/// Serialized report (JSON object, or CSV header plus one row).
std::string cmd_cycle(const RunConfig& config);

/// One CSV row per grid point in ascending order (JSON array with --output json).
std::string cmd_sweep(const RunConfig& config);

/// Prints one line per acceptance check; returns 0 if all pass, else 2.
int cmd_validate(std::uint64_t seed, std::ostream& out, std::ostream& err);

/// Entry point: 0 success, 1 usage error, 2 numerical guard failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace szilard::cli
