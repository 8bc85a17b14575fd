#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "szilard/optimize.hpp"

using namespace szilard;

namespace {

constexpr double kLn2 = std::numbers::ln2;

ThermalParams at_tau(double tau) {
  ThermalParams th;
  th.tau = tau;
  return th;
}

const EnsembleSpec kBoson3{3, Statistics::boson};

// Ground-energy oracle for three bosons split 2:1: minimize 2/x^2 + 1/(1-x)^2
// by dense scan then bisection on the derivative.
double three_boson_ground_minimizer() {
  const auto slope = [](double x) { return -4.0 / (x * x * x) + 2.0 / std::pow(1.0 - x, 3); };
  double lo = 0.01;
  double hi = 0.99;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (slope(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("golden-section maximization") {
  const auto parabola = [](double x) { return -(x - 0.3) * (x - 0.3) + 2.0; };
  const BracketResult r = golden_section_maximize(parabola, 0.0, 1.0);
  CHECK(r.converged);
  CHECK(r.x_star == doctest::Approx(0.3).epsilon(1e-7));
  CHECK(r.objective_value == doctest::Approx(2.0));
  CHECK(r.iterations <= kGoldenMaxIterations);

  // Monotone objective: converges to the bracket end.
  const BracketResult edge = golden_section_maximize([](double x) { return x; }, 0.0, 1.0);
  CHECK(edge.x_star == doctest::Approx(1.0).epsilon(1e-8));

  const BracketResult capped = golden_section_maximize(parabola, 0.0, 1.0, 1e-12, 3);
  CHECK(capped.iterations == 3);
  CHECK_FALSE(capped.converged);
}

TEST_CASE("generalized force") {
  for (Statistics s : {Statistics::boson, Statistics::fermion, Statistics::distinguishable}) {
    CHECK(std::abs(generalized_force(0.5, 1, {2, s}, at_tau(1.0))) <= 1e-6);
  }
  const ThermalParams cold = at_tau(0.02);
  CHECK(std::abs(generalized_force(0.557507, 2, kBoson3, cold)) <= 2e-3);
  // 2:1 at the midpoint: ground energy falls toward x* > 0.5, so it pushes right.
  CHECK(generalized_force(0.5, 2, kBoson3, cold) == doctest::Approx(16.0).epsilon(1e-3));
  // Low-temperature limit of the force is -dE/dx.
  CHECK(generalized_force(0.4, 1, kBoson3, cold) ==
        doctest::Approx(2.0 / std::pow(0.4, 3) - 4.0 / std::pow(0.6, 3)).epsilon(1e-4));

  CHECK_THROWS_AS(generalized_force(1.0, 2, kBoson3, cold), GuardError);
  CHECK_THROWS_AS(generalized_force(1.2, 3, kBoson3, cold), GuardError);
  // Edge stencil is clamped: all three on the left at x = 1 is admissible.
  CHECK(generalized_force(1.0, 3, kBoson3, cold) > 0.0);
}

TEST_CASE("force is antisymmetric under mirroring") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> pick_x(0.05, 0.95);
  for (int i = 0; i < 100; ++i) {
    const EnsembleSpec ens{1 + i % 4, static_cast<Statistics>(i % 3)};
    const ThermalParams th = at_tau(0.05 + 0.01 * i);
    const double x = pick_x(rng);
    const int m = i % (ens.n_particles + 1);
    if (m == 0 || m == ens.n_particles) continue;
    const double f = generalized_force(x, m, ens, th);
    const double mirrored = generalized_force(1.0 - x, ens.n_particles - m, ens, th);
    CHECK(f == doctest::Approx(-mirrored).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("equilibrium positions") {
  const BracketResult one = equilibrium_position(1, {1}, at_tau(0.05));
  CHECK(one.x_star == 1.0);
  CHECK(one.converged);
  CHECK(equilibrium_position(0, kBoson3, at_tau(0.05)).x_star == 0.0);

  const double oracle = three_boson_ground_minimizer();
  CHECK(oracle == doctest::Approx(std::cbrt(2.0) / (1.0 + std::cbrt(2.0))).epsilon(1e-12));
  const BracketResult eq = equilibrium_position(2, kBoson3, at_tau(0.02));
  CHECK(eq.converged);
  CHECK(std::abs(eq.x_star - oracle) <= 1e-3);
  CHECK(std::abs(eq.x_star - 0.5575) <= 1e-3);

  const BracketResult sym = equilibrium_position(1, {2}, at_tau(1.0));
  CHECK(std::abs(sym.x_star - 0.5) <= 1e-6);
}

TEST_CASE("force vanishes at interior equilibria") {
  for (int n = 2; n <= 4; ++n) {
    for (Statistics s : {Statistics::boson, Statistics::fermion, Statistics::distinguishable}) {
      for (double tau : {0.02, 0.3, 4.0}) {
        const EnsembleSpec ens{n, s};
        for (int m = 1; m < n; ++m) {
          const BracketResult eq = equilibrium_position(m, ens, at_tau(tau));
          CAPTURE(n);
          CAPTURE(m);
          CAPTURE(tau);
          CHECK(eq.x_star > 0.0);
          CHECK(eq.x_star < 1.0);
          CHECK(std::abs(generalized_force(eq.x_star, m, ens, at_tau(tau))) <= 1e-4);
        }
      }
    }
  }
}

TEST_CASE("optimal insertion positions") {
  const BracketResult boson = optimal_insertion_position(kBoson3, at_tau(0.05), Protocol::optimal);
  CHECK(boson.x_star == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(boson.objective_value == doctest::Approx(0.05 * std::log(4.0)).epsilon(1e-9));

  const BracketResult fermion =
      optimal_insertion_position({2, Statistics::fermion}, at_tau(0.02), Protocol::optimal);
  const double to_third =
      std::min(std::abs(fermion.x_star - 1.0 / 3.0), std::abs(fermion.x_star - 2.0 / 3.0));
  CHECK(to_third <= 1e-3);
  CHECK(fermion.objective_value == doctest::Approx(0.02 * kLn2).epsilon(1e-6));

  const BracketResult single = optimal_insertion_position({1}, at_tau(1.0), Protocol::optimal);
  CHECK(single.x_star == 0.5);
  CHECK(single.objective_value == doctest::Approx(kLn2).epsilon(1e-12));
}

TEST_CASE("fermion optimum sits where two splits are degenerate") {
  // Grid oracle on the ground energies: the first crossing of E(1:1) and
  // E(0:2) seen from the left, found on a fine scan.
  const auto e11 = [](double x) { return 1 / (x * x) + 1 / ((1 - x) * (1 - x)); };
  const auto e02 = [](double x) { return 5 / ((1 - x) * (1 - x)); };
  double crossing = 0.0;
  for (int i = 1; i < 100000; ++i) {
    const double x = i / 100000.0;
    if (e11(x) <= e02(x)) {
      crossing = x;
      break;
    }
  }
  CHECK(crossing == doctest::Approx(1.0 / 3.0).epsilon(1e-4));
}

TEST_CASE("expected work is mirror symmetric") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> pick_x(0.05, 0.95);
  for (int i = 0; i < 30; ++i) {
    CycleConfig c;
    c.ensemble = {1 + i % 4, static_cast<Statistics>(i % 3)};
    c.thermal = at_tau(0.05 + 0.1 * i);
    c.insertion_x = pick_x(rng);
    const double w = run_cycle(c).total_work;
    c.insertion_x = 1.0 - c.insertion_x;
    CHECK(run_cycle(c).total_work == doctest::Approx(w).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("optimal work does not decrease with particle number") {
  const ThermalParams th = at_tau(0.05);
  const std::vector<EnsembleSpec> families = {
      {1, Statistics::boson},
      {1, Statistics::fermion},
      {1, Statistics::distinguishable, Measurement::full_labels},
  };
  for (const EnsembleSpec& family : families) {
    double previous = -1.0;
    for (int n = 1; n <= 4; ++n) {
      EnsembleSpec ens = family;
      ens.n_particles = n;
      const double w = optimal_insertion_position(ens, th, Protocol::optimal).objective_value;
      CHECK(w >= previous - 1e-12);
      previous = w;
      if (ens.statistics == Statistics::boson) {
        CHECK(w / th.tau == doctest::Approx(std::log(n + 1.0)).epsilon(1e-6));
      } else if (ens.statistics == Statistics::fermion) {
        CHECK(w / th.tau == doctest::Approx(kLn2).epsilon(1e-6));
      } else {
        CHECK(w / th.tau == doctest::Approx(n * kLn2).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("two-phase insertion optimum exists and is no better than optimal") {
  const ThermalParams th = at_tau(0.05);
  const BracketResult two = optimal_insertion_position(kBoson3, th, Protocol::two_phase);
  const BracketResult opt = optimal_insertion_position(kBoson3, th, Protocol::optimal);
  CHECK(two.objective_value <= opt.objective_value + 1e-12);
  CHECK(two.x_star > 0.0);
  CHECK(two.x_star < 1.0);
}
