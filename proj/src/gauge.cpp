#include "arccover/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arccover {

GaugeFunction GaugeFunction::monomial(double s) {
  if (!(s > 0.0 && s <= 1.0)) {
    throw std::invalid_argument("monomial: s must be in (0,1] (r^s/r increases otherwise)");
  }
  GaugeFunction g;
  g.family_ = GaugeFamily::Monomial;
  g.s_ = s;
  return g;
}

GaugeFunction GaugeFunction::monomial_log(double s, double beta) {
  if (!(s > 0.0 && s <= 1.0)) {
    throw std::invalid_argument("monomiallog: s must be in (0,1]");
  }
  if (!std::isfinite(beta)) throw std::invalid_argument("monomiallog: beta must be finite");
  GaugeFunction g;
  g.family_ = GaugeFamily::MonomialLog;
  g.s_ = s;
  g.beta_ = beta;
  return g;
}

GaugeFunction GaugeFunction::identity() {
  GaugeFunction g;
  g.family_ = GaugeFamily::Identity;
  g.s_ = 1.0;
  return g;
}

GaugeFunction GaugeFunction::table(std::vector<std::pair<double, double>> points) {
  if (points.size() < 2) throw std::invalid_argument("table: need at least two sample points");
  for (const auto& [r, v] : points) {
    if (!(r > 0.0) || !(v > 0.0)) {
      throw std::invalid_argument("table: abscissae and values must be positive");
    }
  }
  if (!std::is_sorted(points.begin(), points.end(),
                      [](const auto& p, const auto& q) { return p.first < q.first; })) {
    throw std::invalid_argument("table: abscissae must be strictly increasing");
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].first == points[i - 1].first) {
      throw std::invalid_argument("table: abscissae must be strictly increasing");
    }
  }
  GaugeFunction g;
  g.family_ = GaugeFamily::Table;
  g.points_ = std::move(points);
  return g;
}

double GaugeFunction::operator()(double r) const {
  switch (family_) {
    case GaugeFamily::Monomial:
      if (!(r >= 0.0)) throw std::domain_error("gauge argument must be >= 0");
      return std::pow(r, s_);
    case GaugeFamily::Identity:
      if (!(r >= 0.0)) throw std::domain_error("gauge argument must be >= 0");
      return r;
    case GaugeFamily::MonomialLog:
      if (r == 0.0) return 0.0;  // g(0) = 0 limit; covers underflowed lengths
      if (!(r > 0.0 && r < 1.0)) {
        throw std::domain_error("monomiallog gauge is defined on (0,1)");
      }
      return std::pow(r, s_) * std::pow(-std::log(r), -beta_);
    case GaugeFamily::Table: {
      if (r == 0.0) return 0.0;
      if (!(r >= points_.front().first && r <= points_.back().first)) {
        throw std::domain_error("gauge table does not cover the requested radius");
      }
      auto it = std::lower_bound(
          points_.begin(), points_.end(), r,
          [](const auto& p, double value) { return p.first < value; });
      if (it->first == r) return it->second;
      const auto& hi = *it;
      const auto& lo = *std::prev(it);
      const double w = (std::log(r) - std::log(lo.first)) /
                       (std::log(hi.first) - std::log(lo.first));
      return std::exp((1.0 - w) * std::log(lo.second) + w * std::log(hi.second));
    }
  }
  throw std::logic_error("unreachable");
}

double GaugeFunction::log_eval(double log_r) const {
  switch (family_) {
    case GaugeFamily::Monomial:
      return s_ * log_r;
    case GaugeFamily::Identity:
      return log_r;
    case GaugeFamily::MonomialLog:
      if (!(log_r < 0.0)) throw std::domain_error("monomiallog gauge is defined on (0,1)");
      return s_ * log_r - beta_ * std::log(-log_r);
    case GaugeFamily::Table:
      throw std::invalid_argument("table gauges have no closed-form log evaluation");
  }
  throw std::logic_error("unreachable");
}

std::pair<double, double> GaugeFunction::domain() const {
  switch (family_) {
    case GaugeFamily::Monomial:
    case GaugeFamily::Identity:
      return {0.0, std::numeric_limits<double>::infinity()};
    case GaugeFamily::MonomialLog:
      return {0.0, 0.9999999999999999};
    case GaugeFamily::Table:
      return {points_.front().first, points_.back().first};
  }
  throw std::logic_error("unreachable");
}

namespace {

constexpr std::size_t kGridPoints = 256;
constexpr double kGridLo = 1e-12;
constexpr double kGridHi = 0.5;

std::vector<double> validation_grid(const GaugeFunction& g) {
  const auto [dom_lo, dom_hi] = g.domain();
  const double lo = std::max(kGridLo, dom_lo);
  const double hi = std::min(kGridHi, dom_hi);
  std::vector<double> grid;
  if (!(lo < hi)) return grid;
  grid.reserve(kGridPoints);
  const double step = (std::log(hi) - std::log(lo)) / (kGridPoints - 1);
  for (std::size_t i = 0; i < kGridPoints; ++i) {
    grid.push_back(std::exp(std::log(lo) + step * static_cast<double>(i)));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

}  // namespace

GaugeValidation validate_gauge(const GaugeFunction& g) {
  GaugeValidation report;
  const auto grid = validation_grid(g);
  report.grid_points = grid.size();
  if (grid.empty()) {
    report.valid = false;
    report.axiom = "domain does not meet the validation window";
    return report;
  }
  double prev_r = grid.front();
  double prev_g = g(prev_r);
  if (!(prev_g > 0.0)) {
    report.valid = false;
    report.axiom = "positive";
    report.r_first = prev_r;
    report.r_second = prev_r;
    return report;
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double r = grid[i];
    const double v = g(r);
    if (!(v > 0.0)) {
      report = {false, "positive", r, r, grid.size()};
      return report;
    }
    if (v < prev_g) {
      report = {false, "nondecreasing", prev_r, r, grid.size()};
      return report;
    }
    if (v / r > prev_g / prev_r) {
      report = {false, "g(r)/r nonincreasing", prev_r, r, grid.size()};
      return report;
    }
    prev_r = r;
    prev_g = v;
  }
  return report;
}

namespace {

// Ratio g1/g2 monotone increasing toward zero (grid descending) by >= factor.
bool finer_on_grid(const GaugeFunction& g1, const GaugeFunction& g2,
                   const std::vector<double>& grid, double factor,
                   double* total) {
  // grid ascending; "toward zero" means the ratio decreases along the grid.
  double prev = g1(grid.front()) / g2(grid.front());
  const double at_zero_end = prev;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double cur = g1(grid[i]) / g2(grid[i]);
    if (cur > prev * (1.0 + 1e-12)) return false;  // not monotone toward zero
    prev = cur;
  }
  *total = at_zero_end / prev;  // growth factor accumulated toward r -> 0
  return *total >= factor;
}

}  // namespace

GaugeComparison compare_gauges(const GaugeFunction& g1, const GaugeFunction& g2) {
  // Total monotone growth required across the 11.7-decade grid; 10x
  // corresponds to a monomial-exponent gap of about 0.086.
  constexpr double kFactor = 10.0;
  const auto [lo2, hi2] = g2.domain();
  std::vector<double> grid;
  for (double r : validation_grid(g1)) {
    if (r >= lo2 && r <= hi2) grid.push_back(r);
  }
  if (grid.size() < 8) {
    // Domains barely overlap; no usable evidence either way.
    return {};
  }
  GaugeComparison cmp;
  double total = 1.0;
  if (finer_on_grid(g1, g2, grid, kFactor, &total)) {
    cmp.order = GaugeOrder::FirstFiner;
    cmp.ratio_factor = total;
    return cmp;
  }
  if (finer_on_grid(g2, g1, grid, kFactor, &total)) {
    cmp.order = GaugeOrder::SecondFiner;
    cmp.ratio_factor = total;
    return cmp;
  }
  cmp.ratio_factor = total;
  return cmp;
}

}  // namespace arccover
