#include <doctest.h>

#include "arccover/point_finder.hpp"
#include "arccover/rng.hpp"

using namespace arccover;

TEST_CASE("depth-1 certificate for geometric lengths") {
  const auto seq = LengthSequence::geometric(0.5);
  const auto cert = find_point(42, 0, seq, 1);
  REQUIRE(cert.depth() == 1);
  CHECK(cert.levels[0].n == 1);  // l_1 = 0.5 <= 1
  CHECK(cert.levels[0].length == 0.25);
  CHECK(cert.point == cert.levels[0].center);
  CHECK(cert.point == sample_center(42, 0, 1));
  CHECK(verify_certificate(cert, seq).ok);
}

TEST_CASE("certificates are deterministic and prefix-stable") {
  const auto seq = LengthSequence::geometric(0.5);
  const auto a = find_point(kDefaultSeed, 0, seq, 2);
  const auto b = find_point(kDefaultSeed, 0, seq, 2);
  CHECK(a.indices() == b.indices());
  CHECK(a.point == b.point);

  const auto deeper = find_point(kDefaultSeed, 0, seq, 3);
  REQUIRE(deeper.depth() == 3);
  CHECK(deeper.indices()[0] == a.indices()[0]);
  CHECK(deeper.indices()[1] == a.indices()[1]);
  CHECK(verify_certificate(deeper, seq).ok);
}

TEST_CASE("membership counting") {
  const auto seq = LengthSequence::geometric(0.5);
  // X_1's own arc contains its center.
  CHECK(verify_membership(sample_center(9, 0, 1), 9, 0, seq, 10) >= 1);
  CHECK(verify_membership(CirclePoint(0.123), 9, 0, seq, 0) == 0);

  const auto cert = find_point(kDefaultSeed, 0, seq, 3);
  const auto hits = verify_membership(cert.point, kDefaultSeed, 0, seq,
                                      cert.levels.back().n);
  CHECK(hits >= 3);
}

TEST_CASE("certificate invariants hold and are machine-checked") {
  const auto seq = LengthSequence::geometric(0.5);
  const auto cert = find_point(kDefaultSeed, 0, seq, 3);
  REQUIRE(cert.depth() == 3);
  for (std::size_t k = 0; k + 1 < cert.levels.size(); ++k) {
    const double l_k = seq.length(cert.levels[k].n);
    CHECK(static_cast<double>(cert.levels[k + 1].n) > 8.0 / l_k);
    CHECK(cert.levels[k + 1].n > cert.levels[k].n);
  }
  CHECK(verify_certificate(cert, seq).ok);

  // Tampering is caught.
  auto tampered = cert;
  tampered.point = CirclePoint(tampered.point.position() + 0.25);
  CHECK(!verify_certificate(tampered, seq).ok);

  auto reordered = cert;
  std::swap(reordered.levels[0], reordered.levels[1]);
  CHECK(!verify_certificate(reordered, seq).ok);
}

TEST_CASE("search cap exhaustion reports a partial certificate") {
  const auto seq = LengthSequence::geometric(0.5);
  try {
    find_point(kDefaultSeed, 0, seq, 3, 1000);
    FAIL("expected SearchCapExhausted");
  } catch (const SearchCapExhausted& e) {
    CHECK(e.failed_level >= 2);
    CHECK(e.partial.depth() == e.failed_level - 1);
    CHECK(verify_certificate(e.partial, seq).ok);
  }
}

TEST_CASE("sequences violating l_n <= 1/n everywhere are reported") {
  // l_n = 2 > 1/n for every n, so no level-1 index can qualify.
  const auto stuck = LengthSequence::explicit_list(std::vector<double>(32, 2.0));
  CHECK_THROWS_AS(find_point(1, 0, stuck, 1, 32), SearchCapExhausted);
}

TEST_CASE("argument validation") {
  const auto seq = LengthSequence::geometric(0.5);
  CHECK_THROWS_AS(find_point(1, 0, seq, 0), std::invalid_argument);
  CHECK_THROWS_AS(find_point(1, 0, seq, 1, 0), std::invalid_argument);
}
