#include "arccover/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arccover {

namespace {

constexpr double kE = 2.718281828459045235;

// log(x + e) given t = log(x), stable for huge t.
double log_x_plus_e(double t) {
  if (t > 40.0) return t + std::log1p(kE * std::exp(-t));
  return std::log(std::exp(t) + kE);
}

}  // namespace

LengthSequence LengthSequence::power_law(double a, double alpha) {
  if (!(a > 0.0)) throw std::invalid_argument("powerlaw: a must be > 0");
  if (!(alpha > 1.0)) throw std::invalid_argument("powerlaw: alpha must be > 1");
  LengthSequence s;
  s.family_ = SequenceFamily::PowerLaw;
  s.a_ = a;
  s.alpha_ = alpha;
  return s;
}

LengthSequence LengthSequence::harmonic(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("harmonic: c must be > 0");
  LengthSequence s;
  s.family_ = SequenceFamily::Harmonic;
  s.c_ = c;
  return s;
}

LengthSequence LengthSequence::power_log(double a, double alpha, double beta) {
  if (!(a > 0.0)) throw std::invalid_argument("powerlog: a must be > 0");
  if (!(alpha >= 1.0)) throw std::invalid_argument("powerlog: alpha must be >= 1");
  if (!std::isfinite(beta)) throw std::invalid_argument("powerlog: beta must be finite");
  LengthSequence s;
  s.family_ = SequenceFamily::PowerLog;
  s.a_ = a;
  s.alpha_ = alpha;
  s.beta_ = beta;
  // For beta < 0 the log factor grows; the sequence is provably nonincreasing
  // once alpha*log(n+e) >= -beta, so only a finite prefix needs checking.
  if (beta < 0.0) {
    const double bound = std::exp(-beta / alpha) - kE;
    if (bound > double(1 << 20)) {
      throw std::invalid_argument(
          "powerlog: beta too negative to verify the nonincreasing prefix");
    }
    const std::uint64_t prefix = bound > 1.0 ? static_cast<std::uint64_t>(bound) + 2 : 2;
    double prev = s.length(1);
    for (std::uint64_t n = 2; n <= prefix; ++n) {
      const double cur = s.length(n);
      if (cur > prev) {
        throw std::invalid_argument("powerlog: sequence increases at small n for these parameters");
      }
      prev = cur;
    }
  }
  return s;
}

LengthSequence LengthSequence::geometric(double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("geometric: q must be in (0,1)");
  LengthSequence s;
  s.family_ = SequenceFamily::Geometric;
  s.q_ = q;
  return s;
}

LengthSequence LengthSequence::explicit_list(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("explicit: list must be nonempty");
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("explicit: all lengths must be positive finite reals");
    }
  }
  LengthSequence s;
  s.family_ = SequenceFamily::Explicit;
  s.values_ = std::move(values);
  return s;
}

double LengthSequence::length(std::uint64_t n) const {
  if (n == 0) throw std::invalid_argument("sequence index starts at 1");
  const double x = static_cast<double>(n);
  switch (family_) {
    case SequenceFamily::PowerLaw:
      return a_ * std::pow(x, -alpha_);
    case SequenceFamily::Harmonic:
      return c_ / x;
    case SequenceFamily::PowerLog:
      return a_ * std::pow(x, -alpha_) * std::pow(std::log(x + kE), -beta_);
    case SequenceFamily::Geometric:
      return std::pow(q_, x);
    case SequenceFamily::Explicit:
      if (n > values_.size()) {
        throw std::out_of_range("explicit sequence index beyond the stored list");
      }
      return values_[n - 1];
  }
  throw std::logic_error("unreachable");
}

double LengthSequence::log_length_at_log(double t) const {
  switch (family_) {
    case SequenceFamily::PowerLaw:
      return std::log(a_) - alpha_ * t;
    case SequenceFamily::Harmonic:
      return std::log(c_) - t;
    case SequenceFamily::PowerLog:
      return std::log(a_) - alpha_ * t - beta_ * std::log(log_x_plus_e(t));
    case SequenceFamily::Geometric:
      return std::exp(t) * std::log(q_);  // -inf once exp(t) overflows
    case SequenceFamily::Explicit:
      throw std::invalid_argument("explicit sequences have no smooth extension");
  }
  throw std::logic_error("unreachable");
}

std::uint64_t LengthSequence::max_index() const {
  return family_ == SequenceFamily::Explicit
             ? values_.size()
             : std::numeric_limits<std::uint64_t>::max();
}

CriticalExponent LengthSequence::critical_exponent() const {
  switch (family_) {
    case SequenceFamily::PowerLaw:
    case SequenceFamily::PowerLog:
      return {std::min(1.0, 1.0 / alpha_), VerdictMethod::Analytic};
    case SequenceFamily::Harmonic:
      return {1.0, VerdictMethod::Analytic};
    case SequenceFamily::Geometric:
      return {0.0, VerdictMethod::Analytic};
    case SequenceFamily::Explicit:
      break;
  }
  if (values_.size() < 64) {
    throw std::invalid_argument(
        "explicit: critical-exponent estimator needs at least 64 entries");
  }
  // limsup log n / (-log l_n) probed over the last half of the list.
  double best = 0.0;
  for (std::uint64_t n = values_.size() / 2; n <= values_.size(); ++n) {
    const double l = values_[n - 1];
    if (l >= 1.0) continue;
    best = std::max(best, std::log(static_cast<double>(n)) / (-std::log(l)));
  }
  return {std::clamp(best, 0.0, 1.0), VerdictMethod::NumericHeuristic};
}

bool LengthSequence::is_nonincreasing(std::uint64_t count) const {
  const std::uint64_t limit =
      count > 0 ? std::min<std::uint64_t>(count, max_index())
                : (family_ == SequenceFamily::Explicit ? values_.size()
                                                       : std::uint64_t(1) << 16);
  double prev = length(1);
  for (std::uint64_t n = 2; n <= limit; ++n) {
    const double cur = length(n);
    if (cur > prev) return false;
    prev = cur;
  }
  return true;
}

}  // namespace arccover
