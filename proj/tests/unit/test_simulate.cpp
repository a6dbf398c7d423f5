#include <doctest.h>

#include <cmath>
#include <random>

#include "arccover/simulate.hpp"

using namespace arccover;

TEST_CASE("coverage builder basics") {
  CoverageBuilder b;
  CHECK(b.covered_measure() == 0.0);
  CHECK(!b.full());
  b.insert(0.1, 0.3);
  b.insert(0.3, 0.4);  // touching intervals merge
  CHECK(b.interval_count() == 1);
  b.insert(0.6, 0.8);
  CHECK(b.interval_count() == 2);
  b.insert(0.05, 0.65);
  CHECK(b.interval_count() == 1);
  CHECK(b.covered_measure() == doctest::Approx(0.75));
  b.insert(0.0, 0.05);
  b.insert(0.8, 1.0);
  CHECK(b.full());
  CHECK(b.snapshot().is_full());
}

TEST_CASE("coverage builder matches the arc-set union fold") {
  std::mt19937_64 rng(8080);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> log_len(std::log(1e-6), std::log(1.1));
  for (int rep = 0; rep < 500; ++rep) {
    CoverageBuilder builder;
    ArcSet folded;
    const int arcs = 1 + static_cast<int>(u(rng) * 40.0);
    for (int k = 0; k < arcs; ++k) {
      const CirclePoint center(u(rng));
      const double len = std::exp(log_len(rng));
      builder.insert_arc(center, len);
      folded = folded.unite(make_arc(center, std::min(len, 1.0)));
    }
    CHECK(builder.snapshot() == folded);
    CHECK(builder.full() == folded.is_full());
  }
}

TEST_CASE("single explicit arc trial") {
  TrialConfig cfg(LengthSequence::explicit_list({0.5}), 1);
  cfg.seed = 7;
  cfg.tail_starts = {1};
  const auto result = run_trial(cfg);
  CHECK(!result.first_cover_n.has_value());
  REQUIRE(result.uncovered_curve.size() == 1);
  CHECK(result.uncovered_curve[0].second == doctest::Approx(0.5));
  CHECK(result.tail_union(1).measure() == doctest::Approx(0.5));
  CHECK_THROWS_AS(result.tail_union(2), std::out_of_range);
}

TEST_CASE("trial determinism") {
  TrialConfig cfg(LengthSequence::power_law(1, 2), 5000);
  cfg.seed = 11;
  cfg.tail_starts = {10, 100};
  const auto a = run_trial(cfg);
  const auto b = run_trial(cfg);
  CHECK(a.first_cover_n == b.first_cover_n);
  CHECK(a.uncovered_curve == b.uncovered_curve);
  CHECK(a.tail_union(10) == b.tail_union(10));
  CHECK(a.tail_union(100) == b.tail_union(100));
}

TEST_CASE("config validation") {
  TrialConfig cfg(LengthSequence::harmonic(1), 100);
  cfg.checkpoints = {50, 200};
  CHECK_THROWS_AS(run_trial(cfg), std::invalid_argument);
  cfg.checkpoints.clear();
  cfg.tail_starts = {200};
  CHECK_THROWS_AS(run_trial(cfg), std::invalid_argument);
  cfg.tail_starts = {0};
  CHECK_THROWS_AS(run_trial(cfg), std::invalid_argument);
  TrialConfig short_list(LengthSequence::explicit_list({0.5, 0.25}), 3);
  CHECK_THROWS_AS(run_trial(short_list), std::invalid_argument);
}

TEST_CASE("uncovered curve is nonincreasing and tails are nested") {
  TrialConfig cfg(LengthSequence::harmonic(0.8), 20000);
  cfg.seed = kDefaultSeed;
  cfg.tail_starts = {10, 100, 1000};
  const auto result = run_trial(cfg);
  for (std::size_t i = 1; i < result.uncovered_curve.size(); ++i) {
    CHECK(result.uncovered_curve[i].second <=
          result.uncovered_curve[i - 1].second + 1e-12);
  }
  CHECK(result.tail_union(10).contains_set(result.tail_union(100)));
  CHECK(result.tail_union(100).contains_set(result.tail_union(1000)));
}

TEST_CASE("covered checkpoints report exactly zero uncovered measure") {
  TrialConfig cfg(LengthSequence::harmonic(1.2), 50000);
  cfg.seed = kDefaultSeed;
  const auto result = run_trial(cfg);
  REQUIRE(result.first_cover_n.has_value());
  for (const auto& [n, uncovered] : result.uncovered_curve) {
    if (n >= *result.first_cover_n) CHECK(uncovered == 0.0);
  }
}

TEST_CASE("tail unions meet the subadditivity bound") {
  TrialConfig cfg(LengthSequence::power_law(1, 2), 20000);
  cfg.seed = kDefaultSeed;
  cfg.tail_starts = {1, 10, 100, 1000, 20000};
  const auto result = run_trial(cfg);
  // m = 1 is the full-stage union: its measure complements the final curve value.
  CHECK(result.tail_union(1).measure() ==
        doctest::Approx(1.0 - result.uncovered_curve.back().second).epsilon(1e-12));
  for (const auto m : cfg.tail_starts) {
    double bound = 0.0;
    for (std::uint64_t n = m; n <= cfg.horizon; ++n) bound += cfg.seq.length(n);
    CHECK(result.tail_union(m).measure() <= std::min(1.0, bound) + 1e-9);
  }
  // Deepest tail is the single arc A(X_N, l_N).
  CHECK(result.tail_union(20000).measure() ==
        doctest::Approx(cfg.seq.length(20000)).epsilon(1e-9));
}

TEST_CASE("deterministic tail bound for summable lengths") {
  // measure(tail m) <= sum_{n>=m} n^-2 = trigamma(m), every trial.
  const double trigamma_bounds[][2] = {
      {10, 0.10516633568168575}, {100, 0.010050166663333571},
      {1000, 0.0010005001666666333}};
  TrialConfig cfg(LengthSequence::power_law(1, 2), 20000);
  cfg.seed = kDefaultSeed;
  cfg.tail_starts = {10, 100, 1000};
  for (std::uint32_t t = 0; t < 5; ++t) {
    const auto result = run_trial(cfg.with_trial_index(t));
    for (const auto& [m, bound] : trigamma_bounds) {
      CHECK(result.tail_union(static_cast<std::uint64_t>(m)).measure() <=
            bound + 1e-9);
    }
  }
}

TEST_CASE("ensemble aggregates and reruns identically") {
  TrialConfig cfg(LengthSequence::harmonic(1.2), 4000);
  cfg.seed = 3;
  cfg.tail_starts = {100};
  const auto stats = run_ensemble(cfg, 8);
  CHECK(stats.trials == 8);
  CHECK(stats.per_trial.size() == 8);
  CHECK(stats.coverage_fraction >= 0.0);
  CHECK(stats.coverage_fraction <= 1.0);

  const auto rerun = run_ensemble(cfg, 8);
  CHECK(stats.coverage_fraction == rerun.coverage_fraction);
  CHECK(stats.mean_uncovered == rerun.mean_uncovered);
  CHECK(stats.mean_tail_measure == rerun.mean_tail_measure);

  // First-coverage quantiles exist iff some trial covered, and stay ordered.
  if (stats.coverage_fraction > 0.0) {
    REQUIRE(stats.first_cover_quantiles.has_value());
    CHECK(stats.first_cover_quantiles->q25 <= stats.first_cover_quantiles->median);
    CHECK(stats.first_cover_quantiles->median <= stats.first_cover_quantiles->q75);
    CHECK(stats.mean_first_cover.has_value());
  }

  // Single-trial ensemble equals the plain trial.
  const auto single = run_ensemble(cfg, 1);
  const auto trial = run_trial(cfg);
  CHECK(single.per_trial[0].first_cover_n == trial.first_cover_n);
  CHECK(single.per_trial[0].uncovered_at_horizon ==
        trial.uncovered_curve.back().second);
  CHECK(single.coverage_fraction == (trial.first_cover_n ? 1.0 : 0.0));
}

TEST_CASE("ensemble result does not depend on thread count") {
  TrialConfig cfg(LengthSequence::harmonic(0.9), 2000);
  cfg.seed = 17;
  const auto serial = run_ensemble(cfg, 6, 1);
  const auto parallel = run_ensemble(cfg, 6, 4);
  CHECK(serial.coverage_fraction == parallel.coverage_fraction);
  CHECK(serial.mean_uncovered == parallel.mean_uncovered);
}

TEST_CASE("empirical coverage split matches the pilot at the shipped seed") {
  // harmonic(1.5): l_1 = 1.5 covers at the first arc in every trial.
  TrialConfig covering(LengthSequence::harmonic(1.5), 10000);
  covering.seed = kDefaultSeed;
  const auto hi = run_ensemble(covering, 20);
  CHECK(hi.coverage_fraction == 1.0);

  // harmonic(0.7): the finite union covers with probability strictly between
  // 0 and 1; at the shipped seed trials 0..19 split 7 covered / 13 not.
  TrialConfig partial(LengthSequence::harmonic(0.7), 10000);
  partial.seed = kDefaultSeed;
  const auto lo = run_ensemble(partial, 20);
  CHECK(lo.coverage_fraction == doctest::Approx(7.0 / 20.0));
  for (const auto& t : lo.per_trial) {
    if (!t.first_cover_n) CHECK(t.uncovered_at_horizon > 0.0);
  }
}
