#include "szilard/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <ostream>
#include <sstream>
#include <thread>

#include "szilard/optimize.hpp"
#include "szilard/validation.hpp"

namespace szilard::cli {

namespace {

double parse_double(const std::string& text, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw std::invalid_argument(std::string("bad ") + what + " '" + text + "'");
  }
  return v;
}

std::string quoted(std::string_view s) { return "\"" + std::string(s) + "\""; }

}  // namespace

SweepSpec SweepSpec::parse(std::string_view text) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == ':') {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  if (parts.size() != 4) throw std::invalid_argument("sweep must be var:min:max:steps");

  SweepSpec s;
  if (parts[0] == "tau") {
    s.variable = Variable::tau;
  } else if (parts[0] == "x") {
    s.variable = Variable::x;
  } else if (parts[0] == "n") {
    s.variable = Variable::n;
  } else {
    throw std::invalid_argument("sweep variable must be tau, x or n");
  }
  s.min = parse_double(parts[1], "sweep minimum");
  s.max = parse_double(parts[2], "sweep maximum");
  const double steps = parse_double(parts[3], "sweep steps");
  if (steps != std::floor(steps) || steps < 2 || steps > 100000) {
    throw std::invalid_argument("sweep steps must be an integer >= 2");
  }
  s.steps = static_cast<int>(steps);
  if (!(s.max > s.min)) throw std::invalid_argument("sweep maximum must exceed minimum");
  if (s.variable == Variable::tau && !(s.min > 0.0)) {
    throw std::invalid_argument("tau sweep needs a positive minimum");
  }
  if (s.variable == Variable::n) {
    for (int i = 0; i < s.steps; ++i) {
      const double v = s.min + (s.max - s.min) * i / (s.steps - 1);
      if (std::abs(v - std::round(v)) > 1e-9 || v < 1.0) {
        throw std::invalid_argument("n sweep grid must fall on integers");
      }
    }
  }
  return s;
}

std::string_view SweepSpec::variable_name() const {
  switch (variable) {
    case Variable::tau: return "tau";
    case Variable::x: return "x";
    case Variable::n: return "n";
  }
  return "?";
}

std::vector<double> SweepSpec::grid() const {
  std::vector<double> g(steps);
  for (int i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) / (steps - 1);
    if (variable == Variable::tau) {
      g[i] = std::exp(std::log(min) + t * (std::log(max) - std::log(min)));
    } else {
      g[i] = min + t * (max - min);
    }
    if (variable == Variable::n) g[i] = std::round(g[i]);
  }
  // Pin the endpoints against rounding in exp/log.
  g.front() = min;
  g.back() = max;
  return g;
}

void RunConfig::validate() const {
  ensemble().validate();
  thermal().validate();
  if (insertion_x) Geometry{*insertion_x};
  if (sweep) {
    for (double v : sweep->grid()) {
      RunConfig point = *this;
      point.sweep.reset();
      switch (sweep->variable) {
        case SweepSpec::Variable::tau: point.tau = v; break;
        case SweepSpec::Variable::x: point.insertion_x = v; break;
        case SweepSpec::Variable::n: point.n_particles = static_cast<int>(v); break;
      }
      point.validate();
    }
  }
}

EnsembleSpec RunConfig::ensemble() const { return {n_particles, statistics, measurement}; }

ThermalParams RunConfig::thermal() const {
  ThermalParams th;
  th.tau = tau;
  th.tail_tol = tail_tol;
  return th;
}

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

namespace {

std::string json_number(double value) {
  return std::isfinite(value) ? format_number(value) : "null";
}

}  // namespace

CycleReport evaluate(const RunConfig& config) {
  config.validate();
  CycleConfig c;
  c.ensemble = config.ensemble();
  c.thermal = config.thermal();
  c.protocol = config.protocol;
  c.target_policy = config.target_policy;
  if (config.insertion_x) {
    c.insertion_x = *config.insertion_x;
  } else {
    c.insertion_x =
        optimal_insertion_position(c.ensemble, c.thermal, c.protocol, c.target_policy).x_star;
  }
  return run_cycle(c);
}

std::string report_to_json(const CycleReport& report, const RunConfig& config) {
  const CycleConfig& c = report.config;
  std::ostringstream o;
  o << "{\"config\":{"
    << "\"n\":" << c.ensemble.n_particles
    << ",\"stats\":" << quoted(to_string(c.ensemble.statistics))
    << ",\"measurement\":" << quoted(to_string(c.ensemble.measurement))
    << ",\"tau\":" << json_number(c.thermal.tau)
    << ",\"x_insert\":" << json_number(c.insertion_x)
    << ",\"x_mode\":" << quoted(config.insertion_x ? "fixed" : "auto")
    << ",\"protocol\":" << quoted(to_string(c.protocol))
    << ",\"target_policy\":" << quoted(c.target_policy.to_string())
    << ",\"tail_tol\":" << json_number(c.thermal.tail_tol) << "}";
  o << ",\"insertion_work\":" << json_number(report.insertion_work) << ",\"branches\":[";
  for (std::size_t i = 0; i < report.branches.size(); ++i) {
    const OutcomeBranch& b = report.branches[i];
    if (i) o << ",";
    o << "{\"m\":" << b.split.m_left << ",\"multiplicity\":" << b.multiplicity
      << ",\"probability\":" << json_number(b.probability)
      << ",\"target_x\":" << json_number(b.target_x)
      << ",\"movement_work\":" << json_number(b.movement_work)
      << ",\"removal_work\":" << json_number(b.removal_work)
      << ",\"dissipation\":" << json_number(b.dissipation) << "}";
  }
  o << "],\"total_work\":" << json_number(report.total_work)
    << ",\"outcome_entropy\":" << json_number(report.outcome_entropy)
    << ",\"identity_residual\":" << json_number(report.identity_residual) << "}";
  return o.str();
}

std::string csv_header() {
  return "var,value,n,stats,measurement,x_insert,protocol,total_work,outcome_entropy,"
         "insertion_work";
}

std::string csv_row(std::string_view variable, double value, const CycleReport& report,
                    const RunConfig&) {
  const CycleConfig& c = report.config;
  std::ostringstream o;
  o << variable << "," << format_number(value) << "," << c.ensemble.n_particles << ","
    << to_string(c.ensemble.statistics) << "," << to_string(c.ensemble.measurement) << ","
    << format_number(c.insertion_x) << "," << to_string(c.protocol) << ","
    << format_number(report.total_work) << "," << format_number(report.outcome_entropy) << ","
    << format_number(report.insertion_work);
  return o.str();
}

std::string cmd_cycle(const RunConfig& config) {
  const CycleReport report = evaluate(config);
  if (config.output == OutputFormat::json) return report_to_json(report, config) + "\n";
  return csv_header() + "\n" + csv_row("x", report.config.insertion_x, report, config) + "\n";
}

std::string cmd_sweep(const RunConfig& config) {
  config.validate();
  if (!config.sweep) throw std::invalid_argument("no sweep specified");
  const SweepSpec& sweep = *config.sweep;
  const std::vector<double> grid = sweep.grid();

  std::vector<RunConfig> points;
  for (double v : grid) {
    RunConfig point = config;
    point.sweep.reset();
    switch (sweep.variable) {
      case SweepSpec::Variable::tau: point.tau = v; break;
      case SweepSpec::Variable::x: point.insertion_x = v; break;
      case SweepSpec::Variable::n: point.n_particles = static_cast<int>(v); break;
    }
    points.push_back(point);
  }

  // Grid points are independent; results are collected in grid order.
  const std::size_t batch = std::max(1u, std::thread::hardware_concurrency());
  std::vector<CycleReport> reports;
  for (std::size_t start = 0; start < points.size(); start += batch) {
    std::vector<std::future<CycleReport>> pending;
    for (std::size_t i = start; i < std::min(points.size(), start + batch); ++i) {
      pending.push_back(std::async(std::launch::async, [&p = points[i]] { return evaluate(p); }));
    }
    for (auto& f : pending) reports.push_back(f.get());
  }

  std::string out;
  if (config.output == OutputFormat::csv) {
    out = csv_header() + "\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
      out += csv_row(sweep.variable_name(), grid[i], reports[i], points[i]) + "\n";
    }
  } else {
    out = "[";
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (i) out += ",\n";
      out += report_to_json(reports[i], points[i]);
    }
    out += "]\n";
  }
  return out;
}

int cmd_validate(std::uint64_t seed, std::ostream& out, std::ostream& err) {
  const std::vector<CheckResult> checks = run_acceptance_checks(seed);
  const CheckResult* first_failure = nullptr;
  for (const CheckResult& c : checks) {
    out << format_check_line(c) << "\n";
    if (!c.passed && !first_failure) first_failure = &c;
  }
  if (first_failure) {
    err << "validation failed: " << first_failure->id << " " << first_failure->name << "\n";
    return 2;
  }
  out << "all " << checks.size() << " checks passed\n";
  return 0;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum Szilard engine work calculator"};
  RunConfig config;
  std::string stats = "boson";
  std::string measurement = "counts";
  std::string x_text = "0.5";
  std::string protocol = "optimal";
  std::string policy = "equilibrium";
  std::string sweep;
  std::string output;

  app.add_option("--n", config.n_particles, "particle number")->check(CLI::PositiveNumber);
  app.add_option("--stats", stats, "boson|fermion|distinguishable");
  app.add_option("--measurement", measurement, "counts|labels");
  app.add_option("--tau", config.tau, "reduced temperature kT/E0");
  app.add_option("--x", x_text, "barrier insertion fraction, or 'auto'");
  app.add_option("--protocol", protocol, "optimal|two-phase");
  app.add_option("--target-policy", policy, "equilibrium|fixed:<x>");
  app.add_option("--sweep", sweep, "var:min:max:steps with var in tau, x, n");
  app.add_option("--output", output, "json|csv (default json, csv for sweeps)");
  app.add_option("--tol", config.tail_tol, "relative spectrum truncation tolerance");
  app.add_option("--seed", config.seed, "seed for the validation samples");
  CLI::App* validate = app.add_subcommand("validate", "run the acceptance checks");
  validate->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (validate->parsed()) return cmd_validate(config.seed, out, err);

    config.statistics = parse_statistics(stats);
    config.measurement = parse_measurement(measurement);
    config.protocol = parse_protocol(protocol);
    config.target_policy = TargetPolicy::parse(policy);
    if (x_text == "auto") {
      config.insertion_x.reset();
    } else {
      config.insertion_x = parse_double(x_text, "insertion position");
    }
    if (!sweep.empty()) config.sweep = SweepSpec::parse(sweep);
    if (output.empty()) {
      config.output = config.sweep ? OutputFormat::csv : OutputFormat::json;
    } else if (output == "json") {
      config.output = OutputFormat::json;
    } else if (output == "csv") {
      config.output = OutputFormat::csv;
    } else {
      throw std::invalid_argument("output must be json or csv");
    }
    config.validate();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    out << (config.sweep ? cmd_sweep(config) : cmd_cycle(config));
  } catch (const GuardError& e) {
    err << "numerical guard: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace szilard::cli
