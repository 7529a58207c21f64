#include "au/bing_space.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "au/error.hpp"

namespace au::bing {

BingPoint::BingPoint(Rational x, Rational y) : a(x), b(y) {
  if (b.sign() < 0) throw std::invalid_argument("BingPoint needs b >= 0");
}

std::string BingPoint::str() const { return "(" + a.str() + "," + b.str() + ")"; }

AxisSystem::AxisSystem(std::vector<Interval> intervals) {
  for (const auto& iv : intervals) {
    if (!(iv.lo < iv.hi)) {
      raise(ErrorCode::MalformedInterval,
            "(" + iv.lo.str() + "," + iv.hi.str() + ") is not a nonempty open interval");
    }
  }
  std::sort(intervals.begin(), intervals.end(), [](const Interval& x, const Interval& y) {
    if (x.lo != y.lo) return x.lo < y.lo;
    return x.hi < y.hi;
  });
  for (const auto& iv : intervals) {
    if (!intervals_.empty() && iv.lo < intervals_.back().hi) {
      if (intervals_.back().hi < iv.hi) intervals_.back().hi = iv.hi;
    } else {
      intervals_.push_back(iv);
    }
  }
}

Rational AxisSystem::midpoint() const {
  if (empty()) raise(ErrorCode::EmptySystem, "midpoint of empty system");
  return (intervals_[0].lo + intervals_[0].hi) / Rational(2);
}

std::string AxisSystem::str() const {
  std::string s = "[";
  bool first = true;
  for (const auto& iv : intervals_) {
    if (!first) s += ",";
    first = false;
    s += "(" + iv.lo.str() + "," + iv.hi.str() + ")";
  }
  return s + "]";
}

AxisSystem AxisSystem::parse(std::string_view s) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    raise(ErrorCode::ParseError, "system must be [...]");
  }
  std::string_view body = s.substr(1, s.size() - 2);
  std::vector<Interval> out;
  while (!body.empty()) {
    if (body.front() == ',') body.remove_prefix(1);
    if (body.empty() || body.front() != '(') raise(ErrorCode::ParseError, "expected (");
    auto close = body.find(')');
    if (close == std::string_view::npos) raise(ErrorCode::ParseError, "missing )");
    std::string_view item = body.substr(1, close - 1);
    body.remove_prefix(close + 1);
    auto comma = item.find(',');
    if (comma == std::string_view::npos) raise(ErrorCode::ParseError, "interval needs lo,hi");
    out.push_back(Interval{Rational::parse(item.substr(0, comma)),
                           Rational::parse(item.substr(comma + 1))});
  }
  return AxisSystem(std::move(out));
}

std::pair<QRoot3, QRoot3> feet(const BingPoint& p) {
  Rational third = p.b / Rational(3);  // b/sqrt(3) = (b/3)*sqrt(3)
  return {QRoot3(p.a, -third), QRoot3(p.a, third)};
}

namespace {

bool in_closed_hull(const AxisSystem& s, const QRoot3& x) {
  for (const auto& iv : s.intervals()) {
    if (cmp(x, QRoot3(iv.lo)) != std::strong_ordering::less &&
        cmp(x, QRoot3(iv.hi)) != std::strong_ordering::greater) {
      return true;
    }
  }
  return false;
}

QRoot3 scale(const QRoot3& x, std::int64_t k) {
  return {x.r * Rational(k), x.s * Rational(k)};
}

}  // namespace

bool closure_contains(const AxisSystem& s, const BingPoint& p) {
  auto [f1, f2] = feet(p);
  return in_closed_hull(s, f1) || in_closed_hull(s, f2);
}

BingPoint closure_witness(const AxisSystem& s1, const AxisSystem& s2) {
  if (s1.empty() || s2.empty()) raise(ErrorCode::EmptySystem, "closure_witness");
  Rational t1 = s1.midpoint();
  Rational t2 = s2.midpoint();
  if (t1 == t2) {
    // Same midpoint: move the second target within its interval to keep
    // the foot spread, and thus b, strictly positive.
    t2 = (t2 + s2.intervals()[0].hi) / Rational(2);
  }
  Rational tl = std::min(t1, t2);
  Rational tr = std::max(t1, t2);
  Rational a = (tl + tr) / Rational(2);
  Rational half_spread = (tr - tl) / Rational(2);

  // Continued-fraction convergents of sqrt(3): 1, 2, 5/3, 7/4, 19/11, ...
  std::int64_t pp = 1, qp = 1, pc = 2, qc = 1;
  bool step_two = true;
  for (int i = 0; i < 72; ++i) {
    Rational b = half_spread * Rational(pc, qc);
    BingPoint cand(a, b);
    if (closure_contains(s1, cand) && closure_contains(s2, cand)) return cand;
    std::int64_t mult = step_two ? 2 : 1;
    std::int64_t pn = mult * pc + pp;
    std::int64_t qn = mult * qc + qp;
    pp = pc; qp = qc; pc = pn; qc = qn;
    step_two = !step_two;
    if (qc > (std::int64_t(1) << 58)) break;
  }
  throw std::logic_error("no convergent steered the feet into both hulls");
}

std::optional<BingPoint> triple_grid_search(const AxisSystem& s1,
                                            const AxisSystem& s2,
                                            const AxisSystem& s3,
                                            int den_bound) {
  const AxisSystem* systems[3] = {&s1, &s2, &s3};
  for (const auto* s : systems) {
    if (s->empty()) return std::nullopt;
  }

  Rational min_lo = s1.intervals().front().lo;
  Rational max_hi = s1.intervals().back().hi;
  for (const auto* s : systems) {
    min_lo = std::min(min_lo, s->intervals().front().lo);
    max_hi = std::max(max_hi, s->intervals().back().hi);
  }
  // Feet sit 2b/sqrt(3) apart; beyond the hull span no assignment works,
  // and span itself is a convenient slightly-larger bound.
  Rational span = max_hi - min_lo;
  if (span.sign() < 0) return std::nullopt;

  auto search_a = [&](const QRoot3& lo, const QRoot3& hi,
                      const Rational& b) -> std::optional<BingPoint> {
    for (std::int64_t qa = 1; qa <= den_bound; ++qa) {
      std::int64_t pmin = -qr3_floor(-scale(lo, qa));
      std::int64_t pmax = qr3_floor(scale(hi, qa));
      if (pmin <= pmax) return BingPoint(Rational(pmin, qa), b);
    }
    return std::nullopt;
  };

  for (std::int64_t q = 1; q <= den_bound; ++q) {
    // p/q <= span, reduced fractions only so each b is visited once.
    std::int64_t pmax = (span * Rational(q)).floor();
    for (std::int64_t p = 0; p <= pmax; ++p) {
      if (std::gcd(p, q) != 1) continue;
      Rational b(p, q);
      QRoot3 shift(Rational(0), b / Rational(3));
      // Option list per system: for each hull interval, the a-range putting
      // the left (or right) foot inside it.
      std::array<std::vector<std::pair<QRoot3, QRoot3>>, 3> opts;
      for (int i = 0; i < 3; ++i) {
        for (const auto& iv : systems[i]->intervals()) {
          opts[i].push_back({QRoot3(iv.lo) + shift, QRoot3(iv.hi) + shift});
          opts[i].push_back({QRoot3(iv.lo) - shift, QRoot3(iv.hi) - shift});
        }
      }
      for (const auto& o1 : opts[0]) {
        for (const auto& o2 : opts[1]) {
          for (const auto& o3 : opts[2]) {
            QRoot3 lo = o1.first;
            if (cmp(o2.first, lo) == std::strong_ordering::greater) lo = o2.first;
            if (cmp(o3.first, lo) == std::strong_ordering::greater) lo = o3.first;
            QRoot3 hi = o1.second;
            if (cmp(o2.second, hi) == std::strong_ordering::less) hi = o2.second;
            if (cmp(o3.second, hi) == std::strong_ordering::less) hi = o3.second;
            if (cmp(lo, hi) == std::strong_ordering::greater) continue;
            if (auto hit = search_a(lo, hi, b)) {
              if (closure_contains(s1, *hit) && closure_contains(s2, *hit) &&
                  closure_contains(s3, *hit)) {
                return hit;
              }
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

TripleReport empty_triple(int den_bound) {
  AxisSystem a({{Rational(-1, 2), Rational(1, 2)}});
  AxisSystem b({{Rational(19, 2), Rational(21, 2)}});
  AxisSystem c({{Rational(39, 2), Rational(41, 2)}});

  TripleReport rep{
      {a, b, c},
      {closure_witness(a, b), closure_witness(a, c), closure_witness(b, c)},
      false,
      false,
      false,
      den_bound,
  };

  rep.pairwise_verified =
      closure_contains(a, rep.pairwise[0]) && closure_contains(b, rep.pairwise[0]) &&
      closure_contains(a, rep.pairwise[1]) && closure_contains(c, rep.pairwise[1]) &&
      closure_contains(b, rep.pairwise[2]) && closure_contains(c, rep.pairwise[2]);

  // Pairwise-disjoint closed hulls: a point has at most two feet, so three
  // hulls cannot all be hit.
  rep.hulls_disjoint = a.intervals().back().hi < b.intervals().front().lo &&
                       b.intervals().back().hi < c.intervals().front().lo;

  rep.grid_empty = !triple_grid_search(a, b, c, den_bound).has_value();
  return rep;
}

}  // namespace au::bing
