#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "arccover/gauge.hpp"
#include "arccover/series.hpp"

using namespace arccover;

namespace {

// Frozen reference values (high-precision summation oracle).
constexpr double kZeta12 = 5.5915824411777508;     // sum n^-1.2
constexpr double kPiSquaredOver6 = 1.6449340668482264;  // sum n^-2

}  // namespace

TEST_CASE("gauge construction and evaluation") {
  CHECK(GaugeFunction::monomial(0.5)(0.04) == doctest::Approx(0.2));
  CHECK(GaugeFunction::identity()(0.37) == 0.37);
  CHECK(GaugeFunction::monomial_log(0.5, 1.0)(0.01) ==
        doctest::Approx(0.1 / std::log(100.0)));
  CHECK_THROWS_AS(GaugeFunction::monomial(1.5), std::invalid_argument);
  CHECK_THROWS_AS(GaugeFunction::monomial(0.0), std::invalid_argument);
  CHECK_THROWS_AS(GaugeFunction::monomial_log(0.5, 1.0)(1.5), std::domain_error);

  const auto table = GaugeFunction::table({{0.01, 0.1}, {0.25, 0.5}});
  CHECK(table(0.01) == doctest::Approx(0.1));
  CHECK(table(0.25) == doctest::Approx(0.5));
  // log-log interpolation of r^0.5 between exact samples stays on the curve
  CHECK(table(0.04) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK_THROWS_AS(table(0.5), std::domain_error);
  CHECK_THROWS_AS(GaugeFunction::table({{0.2, 0.1}, {0.1, 0.2}}),
                  std::invalid_argument);
}

TEST_CASE("gauge validation") {
  CHECK(validate_gauge(GaugeFunction::monomial(0.5)).valid);
  CHECK(validate_gauge(GaugeFunction::identity()).valid);
  // Mild log corrections satisfy both monotonicity axioms on the window.
  CHECK(validate_gauge(GaugeFunction::monomial_log(0.5, 0.3)).valid);

  // The axioms only hold "near zero" for stronger log corrections; the fixed
  // validation window [1e-12, 0.5] reports where they break.
  const auto strong_log = validate_gauge(GaugeFunction::monomial_log(0.5, 1.0));
  CHECK(!strong_log.valid);  // g(r)/r increases on (e^-2, 0.5]
  CHECK(strong_log.axiom == "g(r)/r nonincreasing");
  const auto r_log = validate_gauge(GaugeFunction::monomial_log(1.0, -1.0));
  CHECK(!r_log.valid);  // r log(1/r) decreases on (e^-1, 0.5]
  CHECK(r_log.axiom == "nondecreasing");

  const auto decreasing = validate_gauge(GaugeFunction::table({{0.1, 0.2}, {0.2, 0.1}}));
  CHECK(!decreasing.valid);
  CHECK(decreasing.axiom == "nondecreasing");

  // r^2 violates "g(r)/r nonincreasing" (it increases); encode it as a table
  const auto squared = validate_gauge(
      GaugeFunction::table({{1e-12, 1e-24}, {0.1, 0.01}, {0.5, 0.25}}));
  CHECK(!squared.valid);
  CHECK(squared.axiom == "g(r)/r nonincreasing");
}

TEST_CASE("gauge comparison") {
  const auto finer = compare_gauges(GaugeFunction::monomial(0.4),
                                    GaugeFunction::monomial(0.5));
  CHECK(finer.order == GaugeOrder::FirstFiner);
  CHECK(finer.heuristic);

  CHECK(compare_gauges(GaugeFunction::monomial(0.5), GaugeFunction::monomial(0.5))
            .order == GaugeOrder::NeitherOrEquivalent);

  // Monomial(0.5)/Identity = r^-0.5 -> infinity at zero.
  CHECK(compare_gauges(GaugeFunction::identity(), GaugeFunction::monomial(0.5))
            .order == GaugeOrder::SecondFiner);
  CHECK(compare_gauges(GaugeFunction::monomial(0.5), GaugeFunction::identity())
            .order == GaugeOrder::FirstFiner);
}

TEST_CASE("length-sum classification") {
  CHECK(classify_length_sum(LengthSequence::power_law(1, 2)).outcome ==
        SeriesOutcome::Convergent);
  CHECK(classify_length_sum(LengthSequence::harmonic(0.1)).outcome ==
        SeriesOutcome::Divergent);
  CHECK(classify_length_sum(LengthSequence::geometric(0.9)).outcome ==
        SeriesOutcome::Convergent);
  // Bertrand boundary: sum 1/(n log^beta n) converges iff beta > 1.
  CHECK(classify_length_sum(LengthSequence::power_log(1, 1, 1.5)).outcome ==
        SeriesOutcome::Convergent);
  CHECK(classify_length_sum(LengthSequence::power_log(1, 1, 1.0)).outcome ==
        SeriesOutcome::Divergent);
}

TEST_CASE("shepp test analytic cases") {
  const auto div = shepp_test(LengthSequence::harmonic(1));
  CHECK(div.outcome == SeriesOutcome::Divergent);
  CHECK(div.method == VerdictMethod::Analytic);
  CHECK(!div.partial_sums.empty());

  CHECK(shepp_test(LengthSequence::power_law(1, 2)).outcome ==
        SeriesOutcome::Convergent);
  CHECK(shepp_test(LengthSequence::harmonic(0.5)).outcome ==
        SeriesOutcome::Convergent);
  CHECK(shepp_test(LengthSequence::geometric(0.5)).outcome ==
        SeriesOutcome::Convergent);

  // The verdict flips exactly at c = 1.
  for (double c : {1.0, 1.2, 2.0}) {
    CHECK(shepp_test(LengthSequence::harmonic(c)).outcome ==
          SeriesOutcome::Divergent);
  }
  for (double c : {0.5, 0.9, 0.99}) {
    CHECK(shepp_test(LengthSequence::harmonic(c)).outcome ==
          SeriesOutcome::Convergent);
  }
}

TEST_CASE("shepp numeric heuristic on explicit lists") {
  // Sampled harmonic(2): strongly divergent, detectable from partial sums.
  std::vector<double> v;
  for (int n = 1; n <= 100000; ++n) v.push_back(std::min(1.0, 2.0 / n));
  const auto verdict = shepp_test(LengthSequence::explicit_list(v));
  CHECK(verdict.method == VerdictMethod::NumericHeuristic);
  CHECK(verdict.outcome == SeriesOutcome::Divergent);
}

TEST_CASE("gauge series classification") {
  const auto pl = LengthSequence::power_law(1, 2);
  CHECK(classify_series_gauge(pl, GaugeFunction::monomial(0.5)).outcome ==
        SeriesOutcome::Divergent);
  CHECK(classify_series_gauge(pl, GaugeFunction::monomial(0.6)).outcome ==
        SeriesOutcome::Convergent);
  CHECK(classify_series_gauge(LengthSequence::harmonic(1), GaugeFunction::identity())
            .outcome == SeriesOutcome::Divergent);
  // MonomialLog shifts the Bertrand exponent: p = 1, gamma = beta.
  CHECK(classify_series_gauge(pl, GaugeFunction::monomial_log(0.5, 1.5)).outcome ==
        SeriesOutcome::Convergent);
  CHECK(classify_series_gauge(pl, GaugeFunction::monomial_log(0.5, 0.5)).outcome ==
        SeriesOutcome::Divergent);

  // Table gauge undefined at large lengths -> domain error.
  const auto small_table = GaugeFunction::table({{1e-6, 1e-3}, {1e-4, 1e-2}});
  CHECK_THROWS_AS(classify_series_gauge(pl, small_table), std::domain_error);
}

TEST_CASE("gauge-series criterion is consistent with the critical exponent") {
  const LengthSequence seqs[] = {
      LengthSequence::power_law(1, 2), LengthSequence::power_law(3, 1.25),
      LengthSequence::harmonic(1.5), LengthSequence::power_log(1, 2, 1),
      LengthSequence::geometric(0.5)};
  for (const auto& seq : seqs) {
    const double s = seq.critical_exponent().value;
    for (double offset : {-0.2, -0.05, 0.05, 0.2}) {
      const double probe = s + offset;
      if (probe <= 0.0 || probe >= 1.0) continue;
      const auto verdict = classify_series_gauge(seq, GaugeFunction::monomial(probe));
      if (probe < s) {
        CHECK(verdict.outcome == SeriesOutcome::Divergent);
      } else {
        CHECK(verdict.outcome == SeriesOutcome::Convergent);
      }
    }
  }
}

TEST_CASE("finite tail sums") {
  const auto geo = LengthSequence::geometric(0.5);
  CHECK(tail_gauge_sum(geo, GaugeFunction::identity(), 1, 10) ==
        doctest::Approx(1.0 - std::pow(0.5, 10.0)));
  CHECK(tail_gauge_sum(geo, GaugeFunction::identity(), 5, 4) == 0.0);

  // Nonincreasing in n0, nondecreasing in N.
  const auto pl = LengthSequence::power_law(1, 2);
  const auto g = GaugeFunction::monomial(0.7);
  CHECK(tail_gauge_sum(pl, g, 1, 1000) >= tail_gauge_sum(pl, g, 2, 1000));
  CHECK(tail_gauge_sum(pl, g, 1, 1000) <= tail_gauge_sum(pl, g, 1, 2000));
}

TEST_CASE("infinite tail sums") {
  // sum n^-2 over the identity gauge.
  CHECK(tail_gauge_sum_to_infinity(LengthSequence::power_law(1, 2),
                                   GaugeFunction::identity(), 1) ==
        doctest::Approx(kPiSquaredOver6).epsilon(1e-9));
  // Geometric total mass.
  CHECK(tail_gauge_sum_to_infinity(LengthSequence::geometric(0.5),
                                   GaugeFunction::identity(), 1) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tail_gauge_sum_to_infinity(LengthSequence::geometric(0.5),
                                   GaugeFunction::identity(), 2) ==
        doctest::Approx(0.5).epsilon(1e-12));
  // Slowly convergent p-series: direct summation plus integral remainder.
  CHECK(tail_gauge_sum_to_infinity(LengthSequence::power_law(1, 2),
                                   GaugeFunction::monomial(0.6), 1) ==
        doctest::Approx(kZeta12).epsilon(1e-9));

  CHECK_THROWS_AS(tail_gauge_sum_to_infinity(LengthSequence::power_law(1, 2),
                                             GaugeFunction::monomial(0.4), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      tail_gauge_sum_to_infinity(LengthSequence::explicit_list({0.5, 0.25}),
                                 GaugeFunction::identity(), 1),
      std::invalid_argument);
}

TEST_CASE("infinite tail sums on the Bertrand boundary") {
  // References from direct summation plus the analytic integral remainder,
  // stable across truncation points 2^20 and 2^26.
  // p = 1 with a log correction from the gauge:
  // sum_{n>=2} n^-1 (2 ln n)^-1.5 = 1.0386209396.
  CHECK(tail_gauge_sum_to_infinity(LengthSequence::power_law(1, 2),
                                   GaugeFunction::monomial_log(0.5, 1.5), 2) ==
        doctest::Approx(1.0386209396).epsilon(1e-6));
  // Log correction from the sequence instead:
  // sum_{n>=1} n^-1 log(n+e)^-2 = 1.5420406653.
  CHECK(tail_gauge_sum_to_infinity(LengthSequence::power_log(1, 1, 2),
                                   GaugeFunction::identity(), 1) ==
        doctest::Approx(1.5420406653).epsilon(1e-6));
}

TEST_CASE("slow borderline explicit series stay inconclusive") {
  // Sampled n^-1.5: decade increments shrink by sqrt(10) < stagnation but the
  // tail is far above the convergence threshold, so the honest answer is
  // inconclusive.
  std::vector<double> v;
  for (int n = 1; n <= 100000; ++n) v.push_back(std::pow(n, -1.5));
  const auto verdict =
      classify_series_gauge(LengthSequence::explicit_list(v),
                            GaugeFunction::identity());
  CHECK(verdict.method == VerdictMethod::NumericHeuristic);
  CHECK(verdict.outcome == SeriesOutcome::Inconclusive);
}
