#include "arccover/circle.hpp"

#include <algorithm>
#include <cmath>

namespace arccover {

double CirclePoint::reduce(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("circle coordinate must be finite");
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;  // rounding of x - floor(x) for tiny negative x
  return r;
}

double torus_distance(CirclePoint x, CirclePoint y) {
  const double d = std::fabs(x.position() - y.position());
  return std::min(d, 1.0 - d);
}

Arc::Arc(CirclePoint arc_center, double arc_length)
    : center(arc_center), length(arc_length) {
  if (!(arc_length > 0.0)) throw std::invalid_argument("arc length must be positive");
  if (length > 1.0) length = 1.0;
}

ArcSet ArcSet::full_circle() {
  ArcSet s;
  s.intervals_.push_back({0.0, 1.0});
  return s;
}

ArcSet ArcSet::from_intervals(std::vector<Interval> intervals) {
  for (const auto& iv : intervals) {
    if (!(iv.lo >= 0.0) || !(iv.hi <= 1.0) || !(iv.lo <= iv.hi)) {
      throw std::invalid_argument("interval endpoints must satisfy 0 <= lo <= hi <= 1");
    }
  }
  std::erase_if(intervals, [](const Interval& iv) { return iv.lo == iv.hi; });
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  ArcSet s;
  for (const auto& iv : intervals) {
    if (!s.intervals_.empty() && s.intervals_.back().hi >= iv.lo) {
      s.intervals_.back().hi = std::max(s.intervals_.back().hi, iv.hi);
    } else {
      s.intervals_.push_back(iv);
    }
  }
  return s;
}

ArcSet ArcSet::from_sorted_disjoint(std::vector<Interval> intervals) {
  ArcSet s;
  s.intervals_ = std::move(intervals);
  return s;
}

bool ArcSet::is_full() const {
  return intervals_.size() == 1 && intervals_[0].lo == 0.0 && intervals_[0].hi == 1.0;
}

double ArcSet::measure() const {
  // Neumaier compensated summation; keeps the partition identity
  // measure(S) + measure(complement(S)) = 1 within 1e-9 for large sets.
  double sum = 0.0;
  double comp = 0.0;
  for (const auto& iv : intervals_) {
    const double term = iv.hi - iv.lo;
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

bool ArcSet::contains(CirclePoint p) const {
  const double x = p.position();
  auto it = std::upper_bound(
      intervals_.begin(), intervals_.end(), x,
      [](double value, const Interval& iv) { return value < iv.lo; });
  if (it == intervals_.begin()) return false;
  --it;
  return x < it->hi;  // lo <= x by the search; half-open on the right
}

ArcSet ArcSet::unite(const ArcSet& other) const {
  std::vector<Interval> merged;
  merged.reserve(intervals_.size() + other.intervals_.size());
  std::merge(intervals_.begin(), intervals_.end(), other.intervals_.begin(),
             other.intervals_.end(), std::back_inserter(merged),
             [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  ArcSet s;
  for (const auto& iv : merged) {
    if (!s.intervals_.empty() && s.intervals_.back().hi >= iv.lo) {
      s.intervals_.back().hi = std::max(s.intervals_.back().hi, iv.hi);
    } else {
      s.intervals_.push_back(iv);
    }
  }
  return s;
}

ArcSet ArcSet::complement() const {
  ArcSet s;
  double cursor = 0.0;
  for (const auto& iv : intervals_) {
    if (iv.lo > cursor) s.intervals_.push_back({cursor, iv.lo});
    cursor = iv.hi;
  }
  if (cursor < 1.0) s.intervals_.push_back({cursor, 1.0});
  return s;
}

ArcSet ArcSet::intersect(const ArcSet& other) const {
  return complement().unite(other.complement()).complement();
}

bool ArcSet::contains_set(const ArcSet& other) const {
  std::size_t i = 0;
  for (const auto& iv : other.intervals_) {
    while (i < intervals_.size() && intervals_[i].hi < iv.hi) ++i;
    if (i == intervals_.size()) return false;
    if (!(intervals_[i].lo <= iv.lo && iv.hi <= intervals_[i].hi)) return false;
  }
  return true;
}

ArcSet make_arc(CirclePoint center, double length) {
  if (!(length > 0.0)) throw std::invalid_argument("arc length must be positive");
  if (length >= 1.0) return ArcSet::full_circle();
  const double c = center.position();
  const double lo = c - length / 2.0;
  const double hi = c + length / 2.0;
  std::vector<ArcSet::Interval> parts;
  if (lo < 0.0) {
    parts.push_back({lo + 1.0, 1.0});
    parts.push_back({0.0, hi});
  } else if (hi > 1.0) {
    parts.push_back({lo, 1.0});
    parts.push_back({0.0, hi - 1.0});
  } else {
    parts.push_back({lo, hi});
  }
  std::erase_if(parts, [](const ArcSet::Interval& iv) { return !(iv.lo < iv.hi); });
  std::sort(parts.begin(), parts.end(),
            [](const ArcSet::Interval& a, const ArcSet::Interval& b) { return a.lo < b.lo; });
  // A wrap pair whose pieces meet after rounding is the whole circle.
  if (parts.size() == 2 && parts[0].hi >= parts[1].lo) return ArcSet::full_circle();
  return ArcSet::from_sorted_disjoint(std::move(parts));
}

ArcSet make_arc(const Arc& arc) { return make_arc(arc.center, arc.length); }

bool arc_contains_arc(const Arc& outer, const Arc& inner) {
  if (outer.length >= 1.0) return true;
  return torus_distance(inner.center, outer.center) + inner.length / 2.0 <=
         outer.length / 2.0;
}

}  // namespace arccover
