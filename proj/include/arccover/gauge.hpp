#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace arccover {

enum class GaugeFamily { Monomial, MonomialLog, Identity, Table };

/// Gauge function g for Hausdorff g-measures: g(0) = 0, g nondecreasing near
/// zero, r -> g(r)/r nonincreasing and positive near zero.
///
/// Families:
///   Monomial(s):          r^s                             (0 < s <= 1)
///   MonomialLog(s, beta): r^s * log(1/r)^-beta on (0,1)   (0 < s <= 1)
///   Identity:             r
///   Table(points):        log-log linear interpolation of sample pairs
///                         (r, g(r)); defined on [r_min, r_max] of the table.
///
/// Construction rejects structurally invalid parameters (s outside (0,1],
/// non-positive or unsorted table abscissae). The monotonicity axioms are
/// checked by validate_gauge, not at construction.
class GaugeFunction {
 public:
  static GaugeFunction monomial(double s);
  static GaugeFunction monomial_log(double s, double beta);
  static GaugeFunction identity();
  static GaugeFunction table(std::vector<std::pair<double, double>> points);

  GaugeFamily family() const { return family_; }
  bool closed_form() const { return family_ != GaugeFamily::Table; }

  /// g(r). Throws std::domain_error outside the gauge's domain.
  double operator()(double r) const;

  /// log g(r) given log r (natural logs). Closed forms only; keeps tail sums
  /// representable when r underflows double precision.
  double log_eval(double log_r) const;

  /// Evaluation domain [lo, hi].
  std::pair<double, double> domain() const;

  double s() const { return s_; }
  double beta() const { return beta_; }
  const std::vector<std::pair<double, double>>& points() const { return points_; }

  friend bool operator==(const GaugeFunction&, const GaugeFunction&) = default;

 private:
  GaugeFunction() = default;

  GaugeFamily family_ = GaugeFamily::Identity;
  // Unused family parameters stay 0 so defaulted equality works.
  double s_ = 0.0;
  double beta_ = 0.0;
  std::vector<std::pair<double, double>> points_;  // Table, sorted by r
};

/// Axiom check report from validate_gauge.
struct GaugeValidation {
  bool valid = true;
  // First violation found, if any.
  std::string axiom;           // "positive", "nondecreasing", "g(r)/r nonincreasing"
  double r_first = 0.0;        // violating pair (r_first < r_second)
  double r_second = 0.0;
  std::size_t grid_points = 0;
};

/// Checks the gauge axioms on a 256-point log-spaced grid over
/// [1e-12, 0.5] intersected with the gauge's domain: g(r) > 0, g nondecreasing,
/// g(r)/r nonincreasing. Violations are reported, not thrown.
GaugeValidation validate_gauge(const GaugeFunction& g);

enum class GaugeOrder {
  FirstFiner,           // g1/g2 grows monotonically toward 0 by a large factor
  SecondFiner,          // symmetric case
  NeitherOrEquivalent,
};

struct GaugeComparison {
  GaugeOrder order = GaugeOrder::NeitherOrEquivalent;
  double ratio_factor = 1.0;  // (g1/g2 at grid minimum) / (g1/g2 at grid maximum)
  bool heuristic = true;      // numeric verdict on a finite grid, never a proof
};

/// Numeric probe of the finer-gauge relation: g1 is reported finer than g2 when
/// g1/g2 increases monotonically toward zero across the validation grid by a
/// total factor of at least 1e3.
GaugeComparison compare_gauges(const GaugeFunction& g1, const GaugeFunction& g2);

}  // namespace arccover
