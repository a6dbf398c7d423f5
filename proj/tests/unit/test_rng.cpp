#include <doctest.h>

#include <algorithm>
#include <vector>

#include "arccover/rng.hpp"

using namespace arccover;

TEST_CASE("counter stream determinism") {
  CHECK(sample_center(42, 0, 1) == sample_center(42, 0, 1));
  CHECK(sample_center(42, 0, 1).position() != sample_center(42, 0, 2).position());
  CHECK(sample_center(42, 0, 1).position() != sample_center(42, 1, 1).position());
  CHECK(sample_center(42, 0, 1).position() != sample_center(43, 0, 1).position());
}

TEST_CASE("uniform marginals at the shipped seed") {
  constexpr std::size_t kSamples = 1'000'000;
  std::vector<double> xs;
  xs.reserve(kSamples);
  double sum = 0.0;
  for (std::size_t n = 1; n <= kSamples; ++n) {
    const double x = rng::uniform01(kDefaultSeed, 0, n);
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    xs.push_back(x);
    sum += x;
  }
  const double mean = sum / static_cast<double>(kSamples);
  // 3 sigma / sqrt(N) with sigma^2 = 1/12.
  CHECK(mean >= 0.497);
  CHECK(mean <= 0.503);

  std::sort(xs.begin(), xs.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double hi = static_cast<double>(i + 1) / kSamples - xs[i];
    const double lo = xs[i] - static_cast<double>(i) / kSamples;
    ks = std::max(ks, std::max(hi, lo));
  }
  // Pilot value at seed 4 is 0.000727; the pinned ceiling leaves margin.
  CHECK(ks < 0.002);
}
