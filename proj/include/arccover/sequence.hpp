#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace arccover {

enum class SequenceFamily { PowerLaw, Harmonic, PowerLog, Geometric, Explicit };

enum class VerdictMethod { Analytic, NumericHeuristic };

struct CriticalExponent {
  double value;  // in [0,1]
  VerdictMethod method;
};

/// Nonincreasing positive arc-length sequence l_1 >= l_2 >= ... -> 0, either a
/// closed-form family or an explicit list.
///
/// Families (n >= 1):
///   PowerLaw(a, alpha):        a * n^-alpha             (a > 0, alpha > 1)
///   Harmonic(c):               c / n                    (c > 0)
///   PowerLog(a, alpha, beta):  a * n^-alpha * log(n+e)^-beta   (a > 0, alpha >= 1)
///   Geometric(q):              q^n                      (0 < q < 1)
///   Explicit(values):          values[n-1]              (positive reals)
class LengthSequence {
 public:
  static LengthSequence power_law(double a, double alpha);
  static LengthSequence harmonic(double c);
  static LengthSequence power_log(double a, double alpha, double beta);
  static LengthSequence geometric(double q);
  static LengthSequence explicit_list(std::vector<double> values);

  SequenceFamily family() const { return family_; }
  bool closed_form() const { return family_ != SequenceFamily::Explicit; }

  /// l_n. Throws std::out_of_range for Explicit when n exceeds the list.
  /// Closed forms may underflow to 0 for very large n; callers that require
  /// positivity must treat 0 as "below double precision".
  double length(std::uint64_t n) const;

  /// log l(x) for the smooth real extension of the family at x >= 1, where
  /// t = log(x) is supplied instead of x so that astronomically large x stay
  /// representable. Closed forms only.
  double log_length_at_log(double t) const;

  /// Largest valid index: list size for Explicit, unbounded otherwise.
  std::uint64_t max_index() const;

  /// Critical exponent s = sup{ s in (0,1) : sum l_n^s = inf } (sup 0 = 0,
  /// inf 0 = 1). Analytic for families; estimated from the tail for Explicit
  /// (requires at least 64 entries).
  CriticalExponent critical_exponent() const;

  /// True iff the first `count` terms are nonincreasing (Explicit validation).
  bool is_nonincreasing(std::uint64_t count = 0) const;

  double a() const { return a_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double c() const { return c_; }
  double q() const { return q_; }
  const std::vector<double>& values() const { return values_; }

  friend bool operator==(const LengthSequence&, const LengthSequence&) = default;

 private:
  LengthSequence() = default;

  SequenceFamily family_ = SequenceFamily::Harmonic;
  // Unused family parameters stay 0 so defaulted equality works.
  double a_ = 0.0;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  double c_ = 0.0;
  double q_ = 0.0;
  std::vector<double> values_;
};

}  // namespace arccover
