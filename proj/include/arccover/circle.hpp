#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace arccover {

/// A point of the circle R/Z (circumference 1), stored as a coordinate in [0,1).
class CirclePoint {
 public:
  CirclePoint() = default;
  explicit CirclePoint(double position) : pos_(reduce(position)) {}

  double position() const { return pos_; }

  /// Mod-1 reduction via x - floor(x); result always in [0,1).
  static double reduce(double x);

  friend bool operator==(const CirclePoint&, const CirclePoint&) = default;

 private:
  double pos_ = 0.0;
};

/// Quotient distance on R/Z: min(|x-y|, 1-|x-y|), in [0, 1/2].
double torus_distance(CirclePoint x, CirclePoint y);

/// Open arc with a center and a length in (0,1]; length 1 denotes the whole circle.
struct Arc {
  Arc(CirclePoint center, double length);

  CirclePoint center;
  double length;

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Finite disjoint union of half-open intervals [lo,hi) with 0 <= lo < hi <= 1,
/// sorted by lo and pairwise non-adjacent (touching intervals are merged during
/// normalization). A wrap-around arc is stored as two intervals, one ending at 1
/// and one starting at 0. The representation is canonical: two ArcSets are equal
/// as sets iff their interval lists compare equal. All endpoint comparisons are
/// exact; no merge tolerance is applied.
class ArcSet {
 public:
  struct Interval {
    double lo;
    double hi;
    friend bool operator==(const Interval&, const Interval&) = default;
  };

  ArcSet() = default;  // empty set

  static ArcSet full_circle();
  /// Normalizes arbitrary input intervals (sorts, merges, drops empties).
  /// Throws std::invalid_argument if an interval leaves [0,1] or has hi < lo.
  static ArcSet from_intervals(std::vector<Interval> intervals);
  /// Trusted constructor for already-normalized input (builder snapshots).
  static ArcSet from_sorted_disjoint(std::vector<Interval> intervals);

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  bool is_full() const;
  std::size_t size() const { return intervals_.size(); }

  /// Lebesgue measure: sum of interval lengths (compensated summation).
  double measure() const;

  /// Half-open membership: lo included, hi excluded.
  bool contains(CirclePoint p) const;

  ArcSet unite(const ArcSet& other) const;
  ArcSet complement() const;
  /// Exact intersection via De Morgan on the complement representation.
  ArcSet intersect(const ArcSet& other) const;
  /// True iff other is a subset of this set (exact interval sweep).
  bool contains_set(const ArcSet& other) const;

  friend bool operator==(const ArcSet&, const ArcSet&) = default;

 private:
  std::vector<Interval> intervals_;
};

/// The open arc {y : d(y,center) < length/2} as an ArcSet. Lengths >= 1 clamp to
/// the full circle. Throws std::invalid_argument for non-positive length.
ArcSet make_arc(CirclePoint center, double length);
ArcSet make_arc(const Arc& arc);

/// True iff inner is contained in outer:
/// d(centers) + inner.length/2 <= outer.length/2, or outer is the full circle.
bool arc_contains_arc(const Arc& outer, const Arc& inner);

}  // namespace arccover
