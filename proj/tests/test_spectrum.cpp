#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "szilard/spectrum.hpp"

using namespace szilard;

namespace {

ThermalParams at_tau(double tau) {
  ThermalParams th;
  th.tau = tau;
  return th;
}

// Minimizer of 2/x^2 + 1/(1-x)^2 (three bosons split 2:1), from
// d/dx = 0  =>  (1-x)^3 / x^3 = 1/2.
const double kThreeBosonEquilibrium = std::cbrt(2.0) / (1.0 + std::cbrt(2.0));

}  // namespace

TEST_CASE("level energies") {
  CHECK(level_energy(0.5, 1) == doctest::Approx(4.0));
  CHECK(level_energy(1.0, 3) == doctest::Approx(9.0));
  CHECK(level_energy(0.557507, 1) == doctest::Approx(3.21736).epsilon(1e-5));
  CHECK_THROWS_AS(level_energy(0.0, 1), GuardError);
  CHECK_THROWS_AS(level_energy(0.5, 0), std::invalid_argument);
}

TEST_CASE("level energies are monotone") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> len(0.01, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double a = len(rng);
    const double b = len(rng);
    const int n = 1 + i % 20;
    CHECK(level_energy(a, n + 1) > level_energy(a, n));
    if (a < b) CHECK(level_energy(a, n) > level_energy(b, n));
  }
}

TEST_CASE("truncation index") {
  CHECK(truncation_index(1.0, at_tau(1.0), 0) == 9);
  CHECK(truncation_index(0.5, at_tau(0.05), 3) == 6);
  CHECK(truncation_index(1.0, at_tau(100.0), 1) == 64);
}

TEST_CASE("single-particle log weight sums") {
  // Direct summation of e^{-n^2}, n = 1..10.
  CHECK(single_particle_log_weight_sum(1.0, at_tau(1.0), 1).value() ==
        doctest::Approx(-0.951092855115137).epsilon(1e-14));
  CHECK(single_particle_log_weight_sum(0.0, at_tau(1.0), 1).is_zero());
  CHECK(single_particle_log_weight_sum(1.0, at_tau(0.05), 1).value() ==
        doctest::Approx(-20.0).epsilon(1e-15));
  // k scales the inverse temperature.
  CHECK(single_particle_log_weight_sum(1.0, at_tau(2.0), 2).value() ==
        doctest::Approx(single_particle_log_weight_sum(1.0, at_tau(1.0), 1).value())
            .epsilon(1e-14));
}

TEST_CASE("log weight sums: monotone and converged at the truncation index") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> len(0.02, 1.0);
  std::uniform_real_distribution<double> log_tau(std::log(1e-3), std::log(1e3));
  for (int i = 0; i < 300; ++i) {
    const double l = len(rng);
    const ThermalParams th = at_tau(std::exp(log_tau(rng)));
    const int k = 1 + i % 4;
    const double base = single_particle_log_weight_sum(l, th, k).value();
    const int n_max = truncation_index(l, th, 0);
    const double doubled = single_particle_log_weight_sum(l, th, k, 2 * n_max).value();
    CHECK(std::abs(doubled - base) <= 1e-14 * std::max(1.0, std::abs(base)));

    ThermalParams hotter = th;
    hotter.tau = std::min(1e3, th.tau * 1.5);
    CHECK(single_particle_log_weight_sum(l, hotter, k).value() >= base);
    CHECK(single_particle_log_weight_sum(std::min(1.0, l * 1.3), th, k).value() >= base);
  }
}

TEST_CASE("split ground energies") {
  const auto boson3 = [](int m) { return SplitConfig{m, 3, Statistics::boson}; };
  CHECK(split_ground_energy(Geometry(0.5), boson3(3)) == doctest::Approx(12.0));
  CHECK(split_ground_energy(Geometry(1.0 / 3.0), {1, 2, Statistics::fermion}) ==
        doctest::Approx(11.25));
  CHECK(split_ground_energy(Geometry(0.557507), boson3(2)) ==
        doctest::Approx(11.54197).epsilon(1e-6));
  CHECK(split_ground_energy(Geometry(1.0 / 3.0), {2, 2, Statistics::fermion}) ==
        doctest::Approx(45.0));
  CHECK(split_ground_energy(Geometry(0.5), {2, 3, Statistics::distinguishable}) ==
        doctest::Approx(12.0));
  CHECK(std::isinf(split_ground_energy(Geometry(1.0), boson3(2))));
}

TEST_CASE("ground gap") {
  const auto boson3 = [](int m) { return SplitConfig{m, 3, Statistics::boson}; };
  CHECK(ground_gap(Geometry(0.5), boson3(2)) == doctest::Approx(0.0));
  // Gap equals the single-particle gap between the two sides.
  const double x = kThreeBosonEquilibrium;
  const double expected = 1.0 / ((1 - x) * (1 - x)) - 1.0 / (x * x);
  CHECK(expected == doctest::Approx(1.88989).epsilon(1e-5));
  CHECK(ground_gap(Geometry(x), boson3(2)) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(ground_gap(Geometry(0.557507), boson3(2)) == doctest::Approx(1.88989).epsilon(1e-5));
  CHECK(ground_gap(Geometry(1.0), boson3(3)) == 0.0);
}

TEST_CASE("ground gap invariants") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pos(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Geometry g(pos(rng));
    const int n = 1 + i % 5;
    const Statistics s = static_cast<Statistics>(i % 3);
    int zero_gaps = 0;
    for (int m = 0; m <= n; ++m) {
      const double gap = ground_gap(g, {m, n, s});
      CHECK(gap >= 0.0);
      if (gap == 0.0) ++zero_gaps;
    }
    CHECK(zero_gaps >= 1);
  }
  // At the midpoint every boson split costs 4N.
  for (int n = 1; n <= 6; ++n) {
    for (int m = 0; m <= n; ++m) {
      CHECK(split_ground_energy(Geometry(0.5), {m, n, Statistics::boson}) ==
            doctest::Approx(4.0 * n));
      CHECK(ground_gap(Geometry(0.5), {m, n, Statistics::boson}) == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(Geometry(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(Geometry(1.5), std::invalid_argument);
  CHECK_THROWS_AS(at_tau(5e-4).validate(), std::invalid_argument);
  CHECK_THROWS_AS(at_tau(2e3).validate(), std::invalid_argument);
  CHECK_NOTHROW(at_tau(1e-3).validate());
  CHECK_THROWS_AS((SplitConfig{4, 3, Statistics::boson}.validate()), std::invalid_argument);
  CHECK(parse_statistics("fermion") == Statistics::fermion);
  CHECK_THROWS_AS(parse_statistics("anyon"), std::invalid_argument);
}
