#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "arccover/circle.hpp"
#include "arccover/sequence.hpp"

namespace arccover {

/// One level of a nested-arc certificate: the arc I_k = A(X_{n_k}, l_{n_k}/2).
/// Deep levels of fast-decaying sequences have lengths below the smallest
/// positive double; such lengths are stored as 0 (the true length is positive,
/// so the arc still contains its center).
struct CertificateLevel {
  std::uint64_t n = 0;
  CirclePoint center;  // X_n replayed from the RNG
  double length = 0.0;  // l_n / 2
};

/// Truncated certificate that a point is covered infinitely often: indices
/// n_1 < n_2 < ... < n_K and nested arcs I_k = A(X_{n_k}, l_{n_k}/2) with
///   n_{k+1} > max(n_k, 8 / l_{n_k})   and   A(X_{n_{k+1}}, 1/n_{k+1}) in I_k,
/// so I_{k+1} in I_k and the returned point (center of I_K) lies in every I_k,
/// hence in A(X_{n_k}, l_{n_k}) for all k <= K.
struct NestedCertificate {
  std::uint64_t seed = 0;
  std::uint32_t trial_index = 0;
  std::vector<CertificateLevel> levels;
  CirclePoint point;                               // center of the deepest arc
  std::vector<std::uint64_t> candidates_examined;  // per level
  std::uint64_t search_cap = 0;

  unsigned depth() const { return static_cast<unsigned>(levels.size()); }
  std::vector<std::uint64_t> indices() const;
};

/// Raised when a level's forward scan exhausts the candidate cap. Carries the
/// partial certificate: the horizon was too small, not a disproof.
class SearchCapExhausted : public std::runtime_error {
 public:
  SearchCapExhausted(std::string message, NestedCertificate partial_certificate,
                     unsigned level)
      : std::runtime_error(std::move(message)),
        partial(std::move(partial_certificate)),
        failed_level(level) {}

  NestedCertificate partial;
  unsigned failed_level;  // 1-based level whose scan failed
};

/// Deterministic nested-arc search. Level 1 takes the first index with
/// l_n <= 1/n; level k+1 scans forward from max(n_k, ceil(8/l_{n_k})) + 1 for
/// the first index whose arc A(X_n, 1/n) fits inside I_k (and l_n <= 1/n, so
/// the nesting of the I_k themselves follows). Throws SearchCapExhausted when a
/// scan passes search_cap.
NestedCertificate find_point(std::uint64_t seed, std::uint32_t trial_index,
                             const LengthSequence& seq, unsigned depth,
                             std::uint64_t search_cap = 10'000'000);

/// Number of stages n <= horizon whose arc A(X_n, l_n) contains the point;
/// replays the same center stream as the simulator. A zero quotient distance
/// counts as a hit even when l_n underflows: every admissible length is
/// strictly positive, so the arc always contains its center.
std::uint64_t verify_membership(CirclePoint point, std::uint64_t seed,
                                std::uint32_t trial_index,
                                const LengthSequence& seq,
                                std::uint64_t horizon);

struct CertificateCheck {
  bool ok = true;
  std::string detail;  // first failed condition, empty when ok
};

/// Independent re-verification of every certificate invariant: centers replayed
/// from the RNG, lengths recomputed, first-index minimality, gap condition,
/// containment and nesting, point membership in the closure of every level arc.
CertificateCheck verify_certificate(const NestedCertificate& cert,
                                    const LengthSequence& seq);

}  // namespace arccover
