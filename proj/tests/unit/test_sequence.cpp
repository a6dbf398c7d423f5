#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "arccover/sequence.hpp"

using namespace arccover;

TEST_CASE("length evaluation per family") {
  CHECK(LengthSequence::power_law(1, 2).length(10) == doctest::Approx(0.01));
  CHECK(LengthSequence::harmonic(1).length(4) == 0.25);
  CHECK(LengthSequence::geometric(0.5).length(3) == doctest::Approx(0.125));
  const auto pl = LengthSequence::power_log(1, 1, 1);
  CHECK(pl.length(1) == doctest::Approx(1.0 / std::log(1.0 + std::exp(1.0))));
  const auto ex = LengthSequence::explicit_list({0.5, 0.25, 0.125});
  CHECK(ex.length(2) == 0.25);
  CHECK_THROWS_AS(ex.length(4), std::out_of_range);
  CHECK_THROWS_AS(ex.length(0), std::invalid_argument);
}

TEST_CASE("construction constraints") {
  CHECK_THROWS_AS(LengthSequence::power_law(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(LengthSequence::power_law(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(LengthSequence::harmonic(-1), std::invalid_argument);
  CHECK_THROWS_AS(LengthSequence::power_log(1, 0.5, 0), std::invalid_argument);
  CHECK_THROWS_AS(LengthSequence::geometric(1.0), std::invalid_argument);
  CHECK_THROWS_AS(LengthSequence::explicit_list({}), std::invalid_argument);
  CHECK_THROWS_AS(LengthSequence::explicit_list({0.5, -0.1}), std::invalid_argument);
  // Strongly growing log factor makes the sequence increase at small n.
  CHECK_THROWS_AS(LengthSequence::power_log(1, 1, -10), std::invalid_argument);
  // Mildly negative beta stays monotone.
  CHECK(LengthSequence::power_log(1, 2, -1).is_nonincreasing(4096));
}

TEST_CASE("critical exponent analytic values") {
  CHECK(LengthSequence::power_law(1, 2).critical_exponent().value == 0.5);
  CHECK(LengthSequence::power_law(1, 2).critical_exponent().method ==
        VerdictMethod::Analytic);
  CHECK(LengthSequence::harmonic(1).critical_exponent().value == 1.0);
  CHECK(LengthSequence::geometric(0.5).critical_exponent().value == 0.0);
  CHECK(LengthSequence::power_log(2, 4, 3).critical_exponent().value == 0.25);
  CHECK(LengthSequence::power_log(1, 1, 2).critical_exponent().value == 1.0);
}

TEST_CASE("critical exponent invariances") {
  // The prefactor never moves s: argmax-style invariance.
  for (double a : {0.01, 0.5, 1.0, 7.0, 1000.0}) {
    for (double alpha : {1.25, 1.5, 2.0, 3.0, 8.0}) {
      CHECK(LengthSequence::power_law(a, alpha).critical_exponent().value ==
            doctest::Approx(1.0 / alpha));
    }
  }
}

TEST_CASE("explicit critical exponent estimator") {
  CHECK_THROWS_AS(LengthSequence::explicit_list({0.5, 0.25}).critical_exponent(),
                  std::invalid_argument);

  // Tail estimator on a sampled power law recovers 1/alpha approximately.
  std::vector<double> v;
  for (int n = 1; n <= 4096; ++n) v.push_back(std::pow(n, -2.0));
  const auto est = LengthSequence::explicit_list(v).critical_exponent();
  CHECK(est.method == VerdictMethod::NumericHeuristic);
  CHECK(est.value == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("nonincreasing check") {
  CHECK(LengthSequence::explicit_list({0.5, 0.5, 0.25}).is_nonincreasing());
  CHECK(!LengthSequence::explicit_list({0.5, 0.6}).is_nonincreasing());
  CHECK(LengthSequence::power_law(1, 2).is_nonincreasing(1000));
}
