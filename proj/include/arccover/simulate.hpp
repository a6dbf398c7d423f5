#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "arccover/circle.hpp"
#include "arccover/rng.hpp"
#include "arccover/sequence.hpp"

namespace arccover {

/// One seeded covering trial: arcs A(X_n, l_n) for n = 1..horizon.
struct TrialConfig {
  TrialConfig(LengthSequence sequence, std::uint64_t horizon_arcs)
      : seq(std::move(sequence)), horizon(horizon_arcs) {}

  std::uint64_t seed = kDefaultSeed;
  std::uint32_t trial_index = 0;
  LengthSequence seq;
  std::uint64_t horizon;
  /// Stages at which the uncovered measure is recorded; defaulted to powers of
  /// two up to the horizon (plus the horizon itself) when left empty.
  std::vector<std::uint64_t> checkpoints;
  /// Tail starts m for which the union over n = m..horizon is kept.
  std::vector<std::uint64_t> tail_starts;

  TrialConfig with_trial_index(std::uint32_t index) const;

  static std::vector<std::uint64_t> default_checkpoints(std::uint64_t horizon);

  /// Normalizes (sorts, dedups, fills default checkpoints) and checks
  /// horizon >= max(checkpoints), horizon >= max(tail starts), indices >= 1.
  /// Throws std::invalid_argument on violations.
  void validate_and_normalize();

  friend bool operator==(const TrialConfig&, const TrialConfig&) = default;
};

struct TrialResult {
  TrialConfig config;
  /// First stage n with full coverage of the circle (exact detection: the
  /// normalized union equals [0,1)); nullopt when the horizon never covers.
  std::optional<std::uint64_t> first_cover_n;
  /// (checkpoint N, measure of the uncovered set after arc N).
  std::vector<std::pair<std::uint64_t, double>> uncovered_curve;
  /// m -> union of arcs n = m..horizon, for each configured tail start.
  std::vector<std::pair<std::uint64_t, ArcSet>> tail_unions;

  /// Recorded tail union; throws std::out_of_range for an unconfigured m.
  const ArcSet& tail_union(std::uint64_t m) const;
};

/// Pure function of the config (deterministic replay).
TrialResult run_trial(const TrialConfig& config);

struct TrialSummary {
  std::uint32_t trial_index = 0;
  std::optional<std::uint64_t> first_cover_n;
  double uncovered_at_horizon = 1.0;
  /// (m, measure of the tail union) per configured tail start.
  std::vector<std::pair<std::uint64_t, double>> tail_measures;
};

struct CoverQuantiles {
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
};

struct EnsembleStats {
  std::uint32_t trials = 0;
  std::vector<TrialSummary> per_trial;
  double coverage_fraction = 0.0;
  /// First-coverage statistics over covered trials only.
  std::optional<double> mean_first_cover;
  std::optional<CoverQuantiles> first_cover_quantiles;
  /// Mean uncovered measure per checkpoint.
  std::vector<std::pair<std::uint64_t, double>> mean_uncovered;
  /// Mean tail-union measure per tail start.
  std::vector<std::pair<std::uint64_t, double>> mean_tail_measure;
};

/// Runs `trials` independent trials with trial_index base..base+trials-1 and
/// aggregates. Trials execute in parallel; aggregation is order-independent.
/// threads = 0 picks the hardware concurrency.
EnsembleStats run_ensemble(const TrialConfig& base, std::uint32_t trials,
                           unsigned threads = 0);

/// Incremental union of intervals on the circle. Insertion keeps the canonical
/// disjoint sorted representation; all endpoint comparisons are exact.
class CoverageBuilder {
 public:
  /// Inserts [lo,hi), 0 <= lo < hi <= 1.
  void insert(double lo, double hi);
  /// Inserts the open arc around center, splitting wrap-around arcs; arcs whose
  /// length underflows to zero are no-ops.
  void insert_arc(CirclePoint center, double length);

  bool full() const;
  double covered_measure() const;
  std::size_t interval_count() const { return intervals_.size(); }
  ArcSet snapshot() const;

 private:
  std::map<double, double> intervals_;  // lo -> hi
};

}  // namespace arccover
