#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "arccover/gauge.hpp"
#include "arccover/sequence.hpp"

namespace arccover {

enum class SeriesOutcome { Divergent, Convergent, Inconclusive };

struct SeriesVerdict {
  SeriesOutcome outcome = SeriesOutcome::Inconclusive;
  VerdictMethod method = VerdictMethod::NumericHeuristic;
  // Recorded partial sums (horizon N, S_N), ascending in N.
  std::vector<std::pair<std::uint64_t, double>> partial_sums;
};

/// Composite term shape a_scale * n^-p * log(n)^-gamma for closed-form
/// sequence/gauge pairs (Geometric excluded; it decays faster than any power).
struct PowerLogForm {
  double p;
  double gamma;
};

/// The asymptotic p-series form of n -> g(l_n) when both sides are closed form
/// and the sequence is not Geometric; nullopt otherwise.
std::optional<PowerLogForm> composite_form(const LengthSequence& seq,
                                           const GaugeFunction& g);

/// Convergence of sum l_n. Analytic for all closed-form families; numeric
/// heuristic for Explicit lists.
SeriesVerdict classify_length_sum(const LengthSequence& seq,
                                  std::vector<std::uint64_t> horizons = {});

/// Convergence of the covering criterion series sum n^-2 exp(l_1+...+l_n).
/// Analytic: Harmonic(c) diverges iff c >= 1; any closed form with summable
/// lengths converges. Everything else falls back to the partial-sum heuristic.
SeriesVerdict shepp_test(const LengthSequence& seq,
                         std::vector<std::uint64_t> horizons = {});

/// Convergence of sum g(l_n). Analytic for closed-form pairs via the p-series
/// rule (diverges iff p < 1, or p = 1 and gamma <= 1); numeric heuristic when a
/// Table gauge or Explicit sequence is involved. Propagates std::domain_error
/// when the gauge is undefined at some l_n.
SeriesVerdict classify_series_gauge(const LengthSequence& seq,
                                    const GaugeFunction& g,
                                    std::vector<std::uint64_t> horizons = {});

/// Finite tail sum_{n=n0}^{N} g(l_n); 0 when N < n0.
double tail_gauge_sum(const LengthSequence& seq, const GaugeFunction& g,
                      std::uint64_t n0, std::uint64_t N);

/// Infinite tail sum_{n=n0}^inf g(l_n): direct summation to stagnation plus an
/// integral remainder (midpoint Euler-Maclaurin, log-space quadrature).
/// Requires a closed-form sequence and gauge whose series is analytically
/// convergent; throws std::invalid_argument otherwise. Accuracy is ~1e-9
/// except within ~0.07 of the Bertrand convergence boundary (p = 1, gamma
/// near 1), where the quadrature truncates at the double-precision range.
double tail_gauge_sum_to_infinity(const LengthSequence& seq,
                                  const GaugeFunction& g, std::uint64_t n0);

}  // namespace arccover
