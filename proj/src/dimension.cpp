#include "arccover/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arccover {

std::uint64_t box_count(const ArcSet& s, int level) {
  if (level < 0 || level > kMaxBoxLevel) {
    throw std::invalid_argument("box-count level must lie in [0, 40]");
  }
  if (s.empty()) return 0;
  const double scale = std::ldexp(1.0, level);  // exact power-of-two scaling
  const std::int64_t cells = std::int64_t(1) << level;
  std::int64_t last = -1;
  std::uint64_t count = 0;
  for (const auto& iv : s.intervals()) {
    // Cell k intersects [lo,hi) iff k < hi*2^j and k+1 > lo*2^j.
    std::int64_t k_lo = static_cast<std::int64_t>(std::floor(iv.lo * scale));
    std::int64_t k_hi = static_cast<std::int64_t>(std::ceil(iv.hi * scale)) - 1;
    k_hi = std::min(k_hi, cells - 1);
    k_lo = std::max(k_lo, last + 1);
    if (k_lo > k_hi) continue;
    count += static_cast<std::uint64_t>(k_hi - k_lo + 1);
    last = k_hi;
  }
  return count;
}

LevelRange default_level_range(const LengthSequence& seq, std::uint64_t m,
                               std::uint64_t horizon) {
  if (m == 0 || m > horizon) {
    throw std::invalid_argument("tail start must lie in [1, horizon]");
  }
  const double l_m = seq.length(m);
  const double l_n = seq.length(horizon);
  if (!(l_m > 0.0) || !(l_n > 0.0)) {
    throw std::invalid_argument(
        "sequence lengths underflow at the requested scales; no meaningful band");
  }
  int lo = static_cast<int>(std::ceil(std::log2(1.0 / l_m))) + 1;
  int hi = static_cast<int>(std::floor(std::log2(1.0 / l_n))) - 1;
  lo = std::clamp(lo, 0, kMaxBoxLevel);
  hi = std::clamp(hi, 0, kMaxBoxLevel);
  if (hi - lo + 1 < 3) {
    throw std::invalid_argument(
        "fewer than 3 dyadic levels between the tail scales; widen m..horizon");
  }
  return {lo, hi};
}

DimensionEstimate estimate_arcset_dimension(const ArcSet& s, LevelRange levels,
                                            std::optional<Arc> window) {
  if (levels.lo < 0 || levels.hi > kMaxBoxLevel || levels.count() < 3) {
    throw std::invalid_argument("level range must hold at least 3 levels in [0, 40]");
  }
  DimensionEstimate est;
  est.levels = levels;
  const ArcSet restricted = window ? s.intersect(make_arc(*window)) : s;
  est.counts.reserve(static_cast<std::size_t>(levels.count()));
  for (int j = levels.lo; j <= levels.hi; ++j) {
    est.counts.emplace_back(j, box_count(restricted, j));
  }
  if (restricted.empty()) {
    est.degenerate = true;
    return est;
  }
  // OLS of log2 N_j on j.
  const double n = static_cast<double>(est.counts.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::vector<double> ys;
  ys.reserve(est.counts.size());
  for (const auto& [j, count] : est.counts) {
    const double x = static_cast<double>(j);
    const double y = std::log2(static_cast<double>(count));
    ys.push_back(y);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  est.raw_slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - est.raw_slope * sx) / n;
  est.dimension = std::clamp(est.raw_slope, 0.0, 1.0);
  for (std::size_t k = 0; k + 1 < ys.size(); ++k) {
    est.local_slopes.push_back(ys[k + 1] - ys[k]);
  }
  for (std::size_t k = 0; k < ys.size(); ++k) {
    const double fit =
        intercept + est.raw_slope * static_cast<double>(est.counts[k].first);
    est.residual_sum += (ys[k] - fit) * (ys[k] - fit);
  }
  return est;
}

DimensionEstimate estimate_dimension(const TrialResult& result, std::uint64_t m,
                                     std::optional<Arc> window,
                                     std::optional<LevelRange> levels) {
  const ArcSet& tail = result.tail_union(m);
  const LevelRange range =
      levels ? *levels : default_level_range(result.config.seq, m, result.config.horizon);
  return estimate_arcset_dimension(tail, range, window);
}

GaugeMeasureBound gauge_measure_bound(const LengthSequence& seq,
                                      const GaugeFunction& g, std::uint64_t n0) {
  if (n0 == 0) throw std::invalid_argument("bound start index must be >= 1");
  GaugeMeasureBound bound;
  bound.n0 = n0;
  bound.context = classify_series_gauge(seq, g);
  if (bound.context.outcome == SeriesOutcome::Divergent) {
    bound.kind = GaugeMeasureBound::Kind::Infinite;
    return bound;
  }
  if (bound.context.outcome == SeriesOutcome::Convergent &&
      bound.context.method == VerdictMethod::Analytic) {
    bound.kind = GaugeMeasureBound::Kind::Finite;
    bound.value = tail_gauge_sum_to_infinity(seq, g, n0);
    return bound;
  }
  bound.kind = GaugeMeasureBound::Kind::Undetermined;
  return bound;
}

DimensionEstimate intersection_experiment(const TrialConfig& base,
                                          unsigned copies, std::uint64_t m,
                                          std::optional<Arc> window,
                                          std::optional<LevelRange> levels) {
  if (copies == 0) throw std::invalid_argument("need at least one copy");
  TrialConfig cfg = base;
  if (std::find(cfg.tail_starts.begin(), cfg.tail_starts.end(), m) ==
      cfg.tail_starts.end()) {
    cfg.tail_starts.push_back(m);
  }
  cfg.validate_and_normalize();

  // Intersection computed exactly as complement(union of complements).
  ArcSet union_of_complements;
  for (unsigned i = 0; i < copies; ++i) {
    const auto result =
        run_trial(cfg.with_trial_index(base.trial_index + i));
    union_of_complements =
        union_of_complements.unite(result.tail_union(m).complement());
  }
  const ArcSet intersection = union_of_complements.complement();
  const LevelRange range =
      levels ? *levels : default_level_range(cfg.seq, m, cfg.horizon);
  return estimate_arcset_dimension(intersection, range, window);
}

}  // namespace arccover
