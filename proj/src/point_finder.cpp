#include "arccover/point_finder.hpp"

#include <cmath>
#include <cstdio>

#include "arccover/rng.hpp"

namespace arccover {

namespace {

std::string level_message(unsigned level, std::uint64_t cap) {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "nested-arc search exhausted %llu candidates at level %u; "
                "raise the search cap",
                static_cast<unsigned long long>(cap), level);
  return buf;
}

// A(inner_c, inner_len) inside A(outer_c, outer_len), lengths as plain doubles.
bool arc_inside(CirclePoint outer_c, double outer_len, CirclePoint inner_c,
                double inner_len) {
  return torus_distance(inner_c, outer_c) + inner_len / 2.0 <= outer_len / 2.0;
}

}  // namespace

std::vector<std::uint64_t> NestedCertificate::indices() const {
  std::vector<std::uint64_t> out;
  out.reserve(levels.size());
  for (const auto& level : levels) out.push_back(level.n);
  return out;
}

NestedCertificate find_point(std::uint64_t seed, std::uint32_t trial_index,
                             const LengthSequence& seq, unsigned depth,
                             std::uint64_t search_cap) {
  if (depth == 0) throw std::invalid_argument("certificate depth must be >= 1");
  if (search_cap == 0) throw std::invalid_argument("search cap must be >= 1");

  NestedCertificate cert;
  cert.seed = seed;
  cert.trial_index = trial_index;
  cert.search_cap = search_cap;

  // Level 1: first index with l_n <= 1/n (guaranteed eventually for summable
  // sequences; reported as exhaustion otherwise).
  std::uint64_t examined = 0;
  const std::uint64_t scan_end = std::min(search_cap, seq.max_index());
  std::uint64_t n1 = 0;
  for (std::uint64_t n = 1; n <= scan_end; ++n) {
    ++examined;
    if (seq.length(n) * static_cast<double>(n) <= 1.0) {
      n1 = n;
      break;
    }
  }
  cert.candidates_examined.push_back(examined);
  if (n1 == 0) {
    throw SearchCapExhausted(
        "no index with l_n <= 1/n was found up to the search cap", cert, 1);
  }
  cert.levels.push_back(
      {n1, sample_center(seed, trial_index, n1), seq.length(n1) / 2.0});
  cert.point = cert.levels.back().center;

  while (cert.depth() < depth) {
    const CertificateLevel& outer = cert.levels.back();
    const double l_k = seq.length(outer.n);
    if (!(l_k > 0.0)) {
      cert.candidates_examined.push_back(0);
      throw SearchCapExhausted(
          "arc length underflowed to zero; deeper levels are below double "
          "precision",
          cert, cert.depth() + 1);
    }
    const std::uint64_t gap_floor = std::max<std::uint64_t>(
        outer.n, static_cast<std::uint64_t>(std::ceil(8.0 / l_k)));
    std::uint64_t found = 0;
    examined = 0;
    const std::uint64_t hi = std::min(search_cap, seq.max_index());
    for (std::uint64_t n = gap_floor + 1; n <= hi; ++n) {
      ++examined;
      // l_n <= 1/n keeps I_{k+1} = A(X_n, l_n/2) inside A(X_n, 1/n).
      if (seq.length(n) * static_cast<double>(n) > 1.0) continue;
      const CirclePoint x = sample_center(seed, trial_index, n);
      if (arc_inside(outer.center, outer.length, x, 1.0 / static_cast<double>(n))) {
        found = n;
        break;
      }
    }
    cert.candidates_examined.push_back(examined);
    if (found == 0) {
      throw SearchCapExhausted(level_message(cert.depth() + 1, search_cap), cert,
                               cert.depth() + 1);
    }
    cert.levels.push_back(
        {found, sample_center(seed, trial_index, found), seq.length(found) / 2.0});
    cert.point = cert.levels.back().center;
  }
  return cert;
}

std::uint64_t verify_membership(CirclePoint point, std::uint64_t seed,
                                std::uint32_t trial_index,
                                const LengthSequence& seq,
                                std::uint64_t horizon) {
  std::uint64_t hits = 0;
  const std::uint64_t end = std::min(horizon, seq.max_index());
  for (std::uint64_t n = 1; n <= end; ++n) {
    const double d = torus_distance(point, sample_center(seed, trial_index, n));
    // d == 0 is always a hit: admissible lengths are strictly positive even
    // when the double evaluation underflows.
    if (d < seq.length(n) / 2.0 || d == 0.0) ++hits;
  }
  return hits;
}

CertificateCheck verify_certificate(const NestedCertificate& cert,
                                    const LengthSequence& seq) {
  const auto fail = [](std::string detail) {
    return CertificateCheck{false, std::move(detail)};
  };
  if (cert.levels.empty()) return fail("certificate has no levels");
  for (const auto& level : cert.levels) {
    const CirclePoint x = sample_center(cert.seed, cert.trial_index, level.n);
    const double l = seq.length(level.n);
    if (level.center != x) return fail("arc center does not replay from the RNG");
    if (level.length != l / 2.0) return fail("arc length is not l_n/2");
    if (l * static_cast<double>(level.n) > 1.0) {
      return fail("l_n <= 1/n fails at a certificate index");
    }
  }
  for (std::uint64_t n = 1; n < cert.levels.front().n; ++n) {
    if (seq.length(n) * static_cast<double>(n) <= 1.0) {
      return fail("an index before n_1 already satisfies l_n <= 1/n");
    }
  }
  for (std::size_t k = 0; k + 1 < cert.levels.size(); ++k) {
    const CertificateLevel& outer = cert.levels[k];
    const CertificateLevel& inner = cert.levels[k + 1];
    const double l_k = seq.length(outer.n);
    if (!(inner.n > outer.n)) return fail("indices are not strictly increasing");
    if (!(l_k > 0.0)) return fail("cannot check the gap below an underflowed level");
    if (!(static_cast<double>(inner.n) > 8.0 / l_k)) {
      return fail("gap condition n_{k+1} > 8/l_{n_k} fails");
    }
    const CirclePoint x = sample_center(cert.seed, cert.trial_index, inner.n);
    if (!arc_inside(outer.center, outer.length, x,
                    1.0 / static_cast<double>(inner.n))) {
      return fail("A(X_{n_{k+1}}, 1/n_{k+1}) is not inside I_k");
    }
    if (!arc_inside(outer.center, outer.length, inner.center, inner.length)) {
      return fail("nested arcs I_{k+1} in I_k fail");
    }
  }
  if (cert.point != cert.levels.back().center) {
    return fail("point is not the center of the deepest arc");
  }
  for (const auto& level : cert.levels) {
    if (!(torus_distance(cert.point, level.center) <= level.length / 2.0)) {
      return fail("point leaves the closure of some level arc");
    }
  }
  return {};
}

}  // namespace arccover
