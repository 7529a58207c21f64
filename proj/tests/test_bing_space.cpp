#include <doctest.h>

#include <numeric>
#include <optional>
#include <vector>

#include "au/bing_space.hpp"
#include "au/error.hpp"
#include "au/qroot3.hpp"
#include "au/rational.hpp"
#include "au/rng.hpp"

using namespace au::bing;
using au::cmp;
using au::Error;
using au::ErrorCode;
using au::QRoot3;
using au::qr3_floor;
using au::Rational;
using au::screen_sign;
using au::sign;

namespace {

AxisSystem random_system(au::rng::Xoshiro256ss& gen) {
  std::vector<Interval> ivs;
  std::uint32_t n = 1 + std::uint32_t(gen.below(3));
  for (std::uint32_t t = 0; t < n; ++t) {
    Rational lo(std::int64_t(gen.below(160)), 1 + std::int64_t(gen.below(8)));
    Rational width(1 + std::int64_t(gen.below(8)), 1 + std::int64_t(gen.below(4)));
    ivs.push_back({lo, lo + width});
  }
  return AxisSystem(std::move(ivs));
}

// Verification-only oracle: scan every b = p/q and a = r/t with
// denominators <= d and b within the hull span, testing the three
// closures directly. Shares no interval arithmetic with the search.
bool naive_triple_hit(const AxisSystem& s1, const AxisSystem& s2, const AxisSystem& s3,
                      int d) {
  Rational min_lo = s1.intervals().front().lo;
  Rational max_hi = s1.intervals().back().hi;
  for (const auto* s : {&s2, &s3}) {
    min_lo = std::min(min_lo, s->intervals().front().lo);
    max_hi = std::max(max_hi, s->intervals().back().hi);
  }
  Rational span = max_hi - min_lo;
  for (std::int64_t q = 1; q <= d; ++q) {
    std::int64_t pmax = (span * Rational(q)).floor();
    for (std::int64_t p = 0; p <= pmax; ++p) {
      if (std::gcd(p, q) != 1) continue;
      BingPoint probe(Rational(0), Rational(p, q));
      for (std::int64_t t = 1; t <= d; ++t) {
        std::int64_t rlo = ((min_lo - span) * Rational(t)).floor() - 1;
        std::int64_t rhi = ((max_hi + span) * Rational(t)).floor() + 1;
        for (std::int64_t r = rlo; r <= rhi; ++r) {
          BingPoint cand(Rational(r, t), probe.b);
          if (closure_contains(s1, cand) && closure_contains(s2, cand) &&
              closure_contains(s3, cand)) {
            return true;
          }
        }
      }
    }
  }
  return false;
}

}  // namespace

TEST_CASE("exact comparison in Q[sqrt 3]") {
  QRoot3 x{Rational(1), Rational(-1, 3)};  // 1 - (1/3)sqrt(3) ~ 0.4226
  CHECK(cmp(x, QRoot3(Rational(3, 10))) == std::strong_ordering::greater);
  CHECK(cmp(x, QRoot3(Rational(1, 2))) == std::strong_ordering::less);
  CHECK(cmp(x, x) == std::strong_ordering::equal);

  CHECK(sign(QRoot3{}) == 0);
  CHECK(sign(QRoot3{Rational(-1), Rational(1, 3)}) == -1);
  CHECK(sign(QRoot3{Rational(0), Rational(1)}) == 1);
  CHECK(sign(x) == 1);
}

TEST_CASE("exact floor") {
  CHECK(qr3_floor(QRoot3{Rational(0), Rational(1)}) == 1);    // sqrt(3)
  CHECK(qr3_floor(QRoot3{Rational(0), Rational(-1)}) == -2);  // -sqrt(3)
  CHECK(qr3_floor(QRoot3(Rational(5))) == 5);
  CHECK(qr3_floor(QRoot3(Rational(-7, 2))) == -4);
  CHECK(qr3_floor(QRoot3{Rational(1), Rational(-1, 3)}) == 0);
  CHECK(qr3_floor(QRoot3{Rational(10), Rational(577, 1000)}) == 10);  // 10.99938...
}

TEST_CASE("screening never contradicts the exact sign") {
  au::rng::Xoshiro256ss gen(17);
  int decided = 0;
  for (int round = 0; round < 10000; ++round) {
    Rational r(std::int64_t(gen.below(2001)) - 1000, 1 + std::int64_t(gen.below(64)));
    Rational s(std::int64_t(gen.below(2001)) - 1000, 1 + std::int64_t(gen.below(64)));
    QRoot3 x{r, s};
    if (auto quick = screen_sign(x)) {
      ++decided;
      CHECK(*quick == sign(x));
    }
  }
  CHECK(decided > 0);

  // Archimedes' bound 1351/780 exceeds sqrt(3) by less than 1e-6; screening
  // may abstain here but must not get the sign wrong.
  QRoot3 tight{Rational(1351, 780), Rational(-1)};
  CHECK(sign(tight) == 1);
  if (auto quick = screen_sign(tight)) CHECK(*quick == 1);
}

TEST_CASE("feet of a point") {
  auto [left, right] = feet(BingPoint(Rational(1), Rational(1)));
  CHECK(left == QRoot3{Rational(1), Rational(-1, 3)});
  CHECK(right == QRoot3{Rational(1), Rational(1, 3)});

  auto [l0, r0] = feet(BingPoint(Rational(2, 5), Rational(0)));
  CHECK(l0 == r0);
  CHECK(l0 == QRoot3(Rational(2, 5)));

  CHECK_THROWS_AS(BingPoint(Rational(0), Rational(-1)), std::invalid_argument);
  CHECK(BingPoint(Rational(3, 2), Rational(13, 10)).str() == "(3/2,13/10)");
}

TEST_CASE("closure membership via feet") {
  AxisSystem s({{Rational(3, 10), Rational(1, 2)}});
  CHECK(closure_contains(s, BingPoint(Rational(1), Rational(1))));
  CHECK(closure_contains(s, BingPoint(Rational(2, 5), Rational(0))));
  CHECK_FALSE(closure_contains(s, BingPoint(Rational(5), Rational(1))));
  // endpoints of the hull count
  CHECK(closure_contains(s, BingPoint(Rational(3, 10), Rational(0))));
}

TEST_CASE("system normalization and text form") {
  AxisSystem sorted({{Rational(2), Rational(3)}, {Rational(0), Rational(1)}});
  REQUIRE(sorted.intervals().size() == 2);
  CHECK(sorted.intervals()[0] == Interval{Rational(0), Rational(1)});

  AxisSystem merged({{Rational(0), Rational(2)}, {Rational(1), Rational(3)}});
  REQUIRE(merged.intervals().size() == 1);
  CHECK(merged.intervals()[0] == Interval{Rational(0), Rational(3)});

  AxisSystem nested({{Rational(0), Rational(3)}, {Rational(1), Rational(2)}});
  CHECK(nested.intervals().size() == 1);

  AxisSystem touching({{Rational(0), Rational(1)}, {Rational(1), Rational(2)}});
  CHECK(touching.intervals().size() == 2);

  try {
    AxisSystem bad({{Rational(1), Rational(1)}});
    FAIL("expected MalformedInterval");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedInterval);
  }

  AxisSystem s({{Rational(3, 10), Rational(1, 2)}, {Rational(2), Rational(3)}});
  CHECK(s.str() == "[(3/10,1/2),(2,3)]");
  CHECK(AxisSystem::parse(s.str()) == s);
  CHECK(AxisSystem::parse("[]").empty());
  CHECK(s.midpoint() == Rational(2, 5));
  CHECK_THROWS_AS(AxisSystem().midpoint(), Error);
  CHECK_THROWS_AS(AxisSystem::parse("(0,1)"), Error);
  CHECK_THROWS_AS(AxisSystem::parse("[(0;1)]"), Error);
}

TEST_CASE("pairwise closure witness on examples") {
  AxisSystem s1({{Rational(-1, 10), Rational(1, 10)}});
  AxisSystem s2({{Rational(29, 10), Rational(31, 10)}});
  BingPoint w = closure_witness(s1, s2);
  CHECK(w.b.sign() > 0);
  CHECK(closure_contains(s1, w));
  CHECK(closure_contains(s2, w));

  AxisSystem same({{Rational(0), Rational(1)}});
  BingPoint v = closure_witness(same, same);
  CHECK(v.b.sign() > 0);
  CHECK(closure_contains(same, v));

  CHECK_THROWS_AS(closure_witness(AxisSystem(), s1), Error);
  CHECK_THROWS_AS(closure_witness(s1, AxisSystem()), Error);
}

TEST_CASE("pairwise closure witness on seeded systems") {
  au::rng::Xoshiro256ss gen(19);
  for (int round = 0; round < 200; ++round) {
    AxisSystem s1 = random_system(gen);
    AxisSystem s2 = random_system(gen);
    BingPoint w = closure_witness(s1, s2);
    CHECK(w.b.sign() > 0);
    CHECK(closure_contains(s1, w));
    CHECK(closure_contains(s2, w));
  }
}

TEST_CASE("closure membership is monotone in the system") {
  au::rng::Xoshiro256ss gen(23);
  for (int round = 0; round < 100; ++round) {
    AxisSystem small = random_system(gen);
    auto ivs = small.intervals();
    auto extra = random_system(gen).intervals();
    ivs.insert(ivs.end(), extra.begin(), extra.end());
    AxisSystem big(std::move(ivs));
    BingPoint p(Rational(std::int64_t(gen.below(40)), 1 + std::int64_t(gen.below(4))),
                Rational(std::int64_t(gen.below(8)), 1 + std::int64_t(gen.below(4))));
    if (closure_contains(small, p)) CHECK(closure_contains(big, p));
  }
}

TEST_CASE("grid search agrees with a naive scan") {
  au::rng::Xoshiro256ss gen(29);
  int hits = 0;
  for (int round = 0; round < 12; ++round) {
    // overlapping-ish systems in a small window so both searches are cheap
    auto mk = [&] {
      Rational lo(std::int64_t(gen.below(12)), 1 + std::int64_t(gen.below(3)));
      Rational width(1 + std::int64_t(gen.below(6)), 1);
      return AxisSystem({{lo, lo + width}});
    };
    AxisSystem s1 = mk(), s2 = mk(), s3 = mk();
    auto found = triple_grid_search(s1, s2, s3, 3);
    if (found) {
      ++hits;
      CHECK(closure_contains(s1, *found));
      CHECK(closure_contains(s2, *found));
      CHECK(closure_contains(s3, *found));
    }
    CHECK(found.has_value() == naive_triple_hit(s1, s2, s3, 3));
  }
  CHECK(hits > 0);  // the window is tight enough that some triples meet
}

TEST_CASE("the certified triple") {
  TripleReport rep = empty_triple(12);
  CHECK(rep.systems[0] == AxisSystem({{Rational(-1, 2), Rational(1, 2)}}));
  CHECK(rep.systems[1] == AxisSystem({{Rational(19, 2), Rational(21, 2)}}));
  CHECK(rep.systems[2] == AxisSystem({{Rational(39, 2), Rational(41, 2)}}));
  CHECK(rep.pairwise_verified);
  CHECK(rep.hulls_disjoint);
  CHECK(rep.grid_empty);
  CHECK(rep.grid_denominator_bound == 12);

  // re-verify the witnesses independently of the report flag
  CHECK(closure_contains(rep.systems[0], rep.pairwise[0]));
  CHECK(closure_contains(rep.systems[1], rep.pairwise[0]));
  CHECK(closure_contains(rep.systems[0], rep.pairwise[1]));
  CHECK(closure_contains(rep.systems[2], rep.pairwise[1]));
  CHECK(closure_contains(rep.systems[1], rep.pairwise[2]));
  CHECK(closure_contains(rep.systems[2], rep.pairwise[2]));
  for (const auto& w : rep.pairwise) CHECK(w.b.sign() > 0);

  // hull disjointness recomputed from the raw endpoints
  CHECK(rep.systems[0].intervals().back().hi < rep.systems[1].intervals().front().lo);
  CHECK(rep.systems[1].intervals().back().hi < rep.systems[2].intervals().front().lo);
}
