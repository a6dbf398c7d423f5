#include "arccover/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace arccover {

TrialConfig TrialConfig::with_trial_index(std::uint32_t index) const {
  TrialConfig copy = *this;
  copy.trial_index = index;
  return copy;
}

std::vector<std::uint64_t> TrialConfig::default_checkpoints(std::uint64_t horizon) {
  std::vector<std::uint64_t> cps;
  for (std::uint64_t n = 1; n <= horizon && n != 0; n *= 2) cps.push_back(n);
  if (cps.empty() || cps.back() != horizon) cps.push_back(horizon);
  return cps;
}

void TrialConfig::validate_and_normalize() {
  if (horizon == 0) throw std::invalid_argument("horizon must be >= 1");
  if (horizon > seq.max_index()) {
    throw std::invalid_argument("horizon exceeds the explicit sequence length");
  }
  if (checkpoints.empty()) checkpoints = default_checkpoints(horizon);
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()),
                    checkpoints.end());
  std::sort(tail_starts.begin(), tail_starts.end());
  tail_starts.erase(std::unique(tail_starts.begin(), tail_starts.end()),
                    tail_starts.end());
  if (!checkpoints.empty() &&
      (checkpoints.front() == 0 || checkpoints.back() > horizon)) {
    throw std::invalid_argument("checkpoints must lie in [1, horizon]");
  }
  if (!tail_starts.empty() &&
      (tail_starts.front() == 0 || tail_starts.back() > horizon)) {
    throw std::invalid_argument("tail starts must lie in [1, horizon]");
  }
}

const ArcSet& TrialResult::tail_union(std::uint64_t m) const {
  for (const auto& [start, set] : tail_unions) {
    if (start == m) return set;
  }
  throw std::out_of_range("tail union was not recorded for this start index");
}

void CoverageBuilder::insert(double lo, double hi) {
  auto it = intervals_.upper_bound(lo);
  if (it != intervals_.begin()) {
    auto prev = std::prev(it);
    if (prev->second >= lo) {      // overlaps or touches on the left
      if (prev->second >= hi) return;  // already covered
      lo = prev->first;
      hi = std::max(hi, prev->second);
      it = intervals_.erase(prev);
    }
  }
  while (it != intervals_.end() && it->first <= hi) {
    hi = std::max(hi, it->second);
    it = intervals_.erase(it);
  }
  intervals_.emplace_hint(it, lo, hi);
}

void CoverageBuilder::insert_arc(CirclePoint center, double length) {
  if (!(length > 0.0)) return;  // underflowed length: empty arc
  if (length >= 1.0) {
    intervals_.clear();
    intervals_.emplace(0.0, 1.0);
    return;
  }
  const double c = center.position();
  const double lo = c - length / 2.0;
  const double hi = c + length / 2.0;
  if (lo < 0.0) {
    if (lo + 1.0 < 1.0) insert(lo + 1.0, 1.0);
    if (hi > 0.0) insert(0.0, hi);
  } else if (hi > 1.0) {
    insert(lo, 1.0);
    if (hi - 1.0 > 0.0) insert(0.0, hi - 1.0);
  } else {
    insert(lo, hi);
  }
}

bool CoverageBuilder::full() const {
  return intervals_.size() == 1 && intervals_.begin()->first == 0.0 &&
         intervals_.begin()->second == 1.0;
}

double CoverageBuilder::covered_measure() const {
  double sum = 0.0;
  double comp = 0.0;
  for (const auto& [lo, hi] : intervals_) {
    const double term = hi - lo;
    const double t = sum + term;
    if (std::fabs(sum) >= std::fabs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

ArcSet CoverageBuilder::snapshot() const {
  std::vector<ArcSet::Interval> intervals;
  intervals.reserve(intervals_.size());
  for (const auto& [lo, hi] : intervals_) intervals.push_back({lo, hi});
  return ArcSet::from_sorted_disjoint(std::move(intervals));
}

TrialResult run_trial(const TrialConfig& config) {
  TrialConfig cfg = config;
  cfg.validate_and_normalize();

  CoverageBuilder from_start;
  std::vector<CoverageBuilder> tails(cfg.tail_starts.size());

  TrialResult result{cfg, std::nullopt, {}, {}};
  result.uncovered_curve.reserve(cfg.checkpoints.size());

  std::size_t next_checkpoint = 0;
  std::size_t active_tails = 0;
  for (std::uint64_t n = 1; n <= cfg.horizon; ++n) {
    while (active_tails < cfg.tail_starts.size() &&
           cfg.tail_starts[active_tails] <= n) {
      ++active_tails;
    }
    const CirclePoint x = sample_center(cfg.seed, cfg.trial_index, n);
    const double len = cfg.seq.length(n);
    if (len > 0.0) {
      from_start.insert_arc(x, len);
      for (std::size_t t = 0; t < active_tails; ++t) tails[t].insert_arc(x, len);
    }
    if (!result.first_cover_n && from_start.full()) result.first_cover_n = n;
    if (next_checkpoint < cfg.checkpoints.size() &&
        cfg.checkpoints[next_checkpoint] == n) {
      const double uncovered = std::max(0.0, 1.0 - from_start.covered_measure());
      result.uncovered_curve.emplace_back(n, uncovered);
      ++next_checkpoint;
    }
  }

  result.tail_unions.reserve(tails.size());
  for (std::size_t t = 0; t < tails.size(); ++t) {
    result.tail_unions.emplace_back(cfg.tail_starts[t], tails[t].snapshot());
  }
  return result;
}

namespace {

template <typename Fn>
void parallel_for_indexed(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&next, count, &fn] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

std::optional<double> quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return std::nullopt;
  if (sorted.size() == 1) return sorted.front();
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double w = pos - static_cast<double>(lo);
  return (1.0 - w) * sorted[lo] + w * sorted[hi];
}

}  // namespace

EnsembleStats run_ensemble(const TrialConfig& base, std::uint32_t trials,
                           unsigned threads) {
  if (trials == 0) throw std::invalid_argument("trial count must be >= 1");
  TrialConfig cfg = base;
  cfg.validate_and_normalize();

  struct Slot {
    TrialSummary summary;
    std::vector<std::pair<std::uint64_t, double>> curve;
  };
  std::vector<Slot> slots(trials);
  parallel_for_indexed(trials, threads, [&](std::size_t i) {
    const auto result = run_trial(
        cfg.with_trial_index(base.trial_index + static_cast<std::uint32_t>(i)));
    Slot& slot = slots[i];
    slot.summary.trial_index = result.config.trial_index;
    slot.summary.first_cover_n = result.first_cover_n;
    slot.summary.uncovered_at_horizon =
        result.uncovered_curve.empty() ? 1.0 : result.uncovered_curve.back().second;
    for (const auto& [m, set] : result.tail_unions) {
      slot.summary.tail_measures.emplace_back(m, set.measure());
    }
    slot.curve = result.uncovered_curve;
  });

  EnsembleStats stats;
  stats.trials = trials;
  stats.per_trial.reserve(trials);
  std::vector<double> cover_times;
  for (const auto& slot : slots) {
    stats.per_trial.push_back(slot.summary);
    if (slot.summary.first_cover_n) {
      cover_times.push_back(static_cast<double>(*slot.summary.first_cover_n));
    }
  }
  stats.coverage_fraction =
      static_cast<double>(cover_times.size()) / static_cast<double>(trials);

  std::sort(cover_times.begin(), cover_times.end());
  if (!cover_times.empty()) {
    double sum = 0.0;
    for (double v : cover_times) sum += v;
    stats.mean_first_cover = sum / static_cast<double>(cover_times.size());
    stats.first_cover_quantiles = CoverQuantiles{
        *quantile(cover_times, 0.25), *quantile(cover_times, 0.5),
        *quantile(cover_times, 0.75)};
  }

  if (!slots.empty()) {
    const auto& ref_curve = slots.front().curve;
    stats.mean_uncovered.reserve(ref_curve.size());
    for (std::size_t k = 0; k < ref_curve.size(); ++k) {
      double sum = 0.0;
      for (const auto& slot : slots) sum += slot.curve[k].second;
      stats.mean_uncovered.emplace_back(ref_curve[k].first,
                                        sum / static_cast<double>(trials));
    }
    const auto& ref_tails = slots.front().summary.tail_measures;
    stats.mean_tail_measure.reserve(ref_tails.size());
    for (std::size_t k = 0; k < ref_tails.size(); ++k) {
      double sum = 0.0;
      for (const auto& slot : slots) sum += slot.summary.tail_measures[k].second;
      stats.mean_tail_measure.emplace_back(ref_tails[k].first,
                                           sum / static_cast<double>(trials));
    }
  }
  return stats;
}

}  // namespace arccover
