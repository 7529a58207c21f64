#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "au/qroot3.hpp"
#include "au/rational.hpp"

// Rational upper half-plane with basic neighbourhoods attached to the two
// "feet" a -/+ b/sqrt(3) on the x-axis. A point lies in the closure of an
// axis-open set exactly when one of its feet lies in the closed hull of
// the set, which keeps every decision inside Q[sqrt(3)].
namespace au::bing {

struct BingPoint {
  Rational a;
  Rational b;  // b >= 0

  BingPoint(Rational x, Rational y);
  friend bool operator==(const BingPoint&, const BingPoint&) = default;
  std::string str() const;  // "(3/2,13/10)"
};

struct Interval {
  Rational lo;
  Rational hi;  // lo < hi, open interval
  friend bool operator==(const Interval&, const Interval&) = default;
};

class AxisSystem {
 public:
  AxisSystem() = default;
  // Normalizes: sorts by lo and merges overlapping intervals. Touching
  // intervals stay separate; their closed hulls agree either way.
  // Error(MalformedInterval) unless lo < hi throughout.
  explicit AxisSystem(std::vector<Interval> intervals);

  bool empty() const { return intervals_.empty(); }
  const std::vector<Interval>& intervals() const { return intervals_; }

  // Midpoint of the first interval; a rational axis point of the set.
  // Error(EmptySystem) when empty.
  Rational midpoint() const;

  friend bool operator==(const AxisSystem&, const AxisSystem&) = default;

  std::string str() const;                      // "[(3/10,1/2),(2,3)]"
  static AxisSystem parse(std::string_view s);  // Error(ParseError)

 private:
  std::vector<Interval> intervals_;
};

// Feet of p: a - (b/3)*sqrt(3) and a + (b/3)*sqrt(3); equal when b = 0.
std::pair<QRoot3, QRoot3> feet(const BingPoint& p);

bool closure_contains(const AxisSystem& s, const BingPoint& p);

// A point with b > 0 lying in the closures of both systems: feet steered
// into the two interval hulls by solving for the midpoint targets and
// replacing sqrt(3) with a convergent fine enough to verify exactly.
// Error(EmptySystem) when either system is empty.
BingPoint closure_witness(const AxisSystem& s1, const AxisSystem& s2);

// Exhaustive search for a point with numerator/denominator-bounded
// coordinates lying in all three closures: for every candidate b the
// admissible a-values form an intersection of shifted hulls, decided
// exactly; any rational with denominator <= den_bound inside it is a hit.
std::optional<BingPoint> triple_grid_search(const AxisSystem& s1,
                                            const AxisSystem& s2,
                                            const AxisSystem& s3,
                                            int den_bound);

struct TripleReport {
  std::array<AxisSystem, 3> systems;
  std::array<BingPoint, 3> pairwise;  // witnesses for (0,1), (0,2), (1,2)
  bool pairwise_verified = false;
  bool hulls_disjoint = false;   // the pigeonhole certificate: two feet
                                 // cannot cover three disjoint hulls
  bool grid_empty = false;
  int grid_denominator_bound = 0;
};

// Three width-1 intervals centred at 0, 10 and 20: any two closures meet,
// all three have empty intersection.
TripleReport empty_triple(int den_bound = 50);

}  // namespace au::bing
