#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "arccover/circle.hpp"
#include "arccover/gauge.hpp"
#include "arccover/sequence.hpp"
#include "arccover/series.hpp"
#include "arccover/simulate.hpp"

namespace arccover {

/// Deepest dyadic level supported by double endpoints.
inline constexpr int kMaxBoxLevel = 40;

/// Number of dyadic cells [k 2^-j, (k+1) 2^-j) intersecting the set. Exact:
/// scaling by 2^j is lossless on doubles, so cell indices are computed without
/// rounding. Throws std::invalid_argument for j outside [0, kMaxBoxLevel].
std::uint64_t box_count(const ArcSet& s, int level);

struct LevelRange {
  int lo;
  int hi;  // inclusive
  int count() const { return hi - lo + 1; }
  friend bool operator==(const LevelRange&, const LevelRange&) = default;
};

struct DimensionEstimate {
  double dimension = 0.0;  // slope clamped to [0,1]
  double raw_slope = 0.0;
  LevelRange levels{0, 0};
  std::vector<std::pair<int, std::uint64_t>> counts;  // (j, N_j)
  std::vector<double> local_slopes;  // log2 N_{j+1} - log2 N_j per adjacent pair
  double residual_sum = 0.0;         // OLS residual sum of squares
  bool degenerate = false;           // empty (restricted) set
};

/// Meaningful scale band for a tail union starting at m: levels j with
/// l_horizon <~ 2^-j <~ l_m, i.e. j_min = ceil(log2(1/l_m)) + 1 and
/// j_max = floor(log2(1/l_horizon)) - 1, clamped to [0, kMaxBoxLevel].
/// Throws std::invalid_argument when fewer than 3 levels remain.
LevelRange default_level_range(const LengthSequence& seq, std::uint64_t m,
                               std::uint64_t horizon);

/// Least-squares slope of log2 N_j against j over the given levels, computed on
/// the set intersected with the window (full circle when absent).
DimensionEstimate estimate_arcset_dimension(const ArcSet& s, LevelRange levels,
                                            std::optional<Arc> window = {});

/// Box-counting dimension of a recorded tail union.
DimensionEstimate estimate_dimension(const TrialResult& result, std::uint64_t m,
                                     std::optional<Arc> window = {},
                                     std::optional<LevelRange> levels = {});

struct GaugeMeasureBound {
  enum class Kind { Finite, Infinite, Undetermined };
  Kind kind = Kind::Undetermined;
  std::optional<double> value;  // set iff kind == Finite
  std::uint64_t n0 = 1;
  SeriesVerdict context;
};

/// Covering upper bound for the Hausdorff g-measure of the covered set at scale
/// l_{n0}: sum_{n>=n0} g(l_n) when the gauge series converges analytically;
/// an infinity flag when it diverges; Undetermined when only a numeric verdict
/// exists. In the convergent case the bound is nonincreasing in n0 and tends
/// to 0, which is the g-measure-zero statement at vanishing covering scale.
GaugeMeasureBound gauge_measure_bound(const LengthSequence& seq,
                                      const GaugeFunction& g, std::uint64_t n0);

/// Intersects the tail unions of `copies` independent trials (distinct trial
/// indices base..base+copies-1; the intersection is computed exactly as the
/// complement of the union of complements) and estimates its dimension.
/// copies = 1 reduces to estimate_dimension.
DimensionEstimate intersection_experiment(const TrialConfig& base,
                                          unsigned copies, std::uint64_t m,
                                          std::optional<Arc> window = {},
                                          std::optional<LevelRange> levels = {});

}  // namespace arccover
