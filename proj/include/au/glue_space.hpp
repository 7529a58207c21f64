#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "au/cube_points.hpp"

// The glued space Z = Y + omega: Y is the set of Alt01-tailed cube points,
// and each natural alpha is glued along the closed set
// K_alpha = { x : x(alpha)=1, x(beta)=0 for all beta > alpha }.
// Finitely generated opens admit exact closure decisions because a finite
// union of boxes is clopen on Y and K_alpha hits a box iff the box demands
// nothing above alpha except zeros.
namespace au::glue {

class GluePoint {
 public:
  static GluePoint y(cube::CubePoint p);     // requires classify(p) == InY
  static GluePoint glued(std::uint32_t a);

  bool is_glued() const { return v_.index() == 1; }
  std::uint32_t glued_index() const { return std::get<1>(v_); }
  const cube::CubePoint& y_point() const { return std::get<0>(v_); }

  friend bool operator==(const GluePoint&, const GluePoint&) = default;

  std::string str() const;  // "Y:10+alt" or "G:1"

 private:
  std::variant<cube::CubePoint, std::uint32_t> v_;
};

struct YGen {
  cube::Box box;
  friend bool operator==(const YGen&, const YGen&) = default;
};

// {alpha} glued to the box that pins alpha to 1 and everything in
// (alpha, m] to 0.
struct AGen {
  std::uint32_t alpha = 0;
  std::uint32_t m = 0;  // m > alpha
  friend bool operator==(const AGen&, const AGen&) = default;
};

using Generator = std::variant<YGen, AGen>;

cube::Box agen_box(const AGen& g);

class GlueOpen {
 public:
  GlueOpen() = default;

  // Validates (AGen needs m > alpha), deduplicates, sorts generators into a
  // canonical order. Empty generator list denotes the empty set.
  static GlueOpen make(std::vector<Generator> gens);

  bool empty() const { return gens_.empty(); }
  const std::vector<Generator>& generators() const { return gens_; }

  std::vector<cube::Box> contributing_boxes() const;
  std::vector<std::uint32_t> glued_points() const;  // sorted, unique

  friend bool operator==(const GlueOpen&, const GlueOpen&) = default;

  std::string str() const;                    // "Y{0:1,3:0} | A(2;5)"
  static GlueOpen parse(std::string_view s);  // Error(ParseError)

 private:
  std::vector<Generator> gens_;
};

bool contains(const GlueOpen& v, const GluePoint& p);

// Exact closure membership. For a Y-point this coincides with contains
// (the box union is clopen on Y); Glued(g) lies in the closure iff g is
// glued into v itself or some contributing box has no demand at g other
// than 1 and only zeros strictly above g.
bool closure_contains(const GlueOpen& v, const GluePoint& p);

// Closure membership for Glued(g) decided the slow way: walk every basic
// neighbourhood A(g;m) up to a probe bound safely past all contributing
// box domains and demand each one meets some contributing box. Used to
// cross-check closure_contains; the two share no logic.
bool closure_contains_exhaustive(const GlueOpen& v, std::uint32_t g,
                                 std::uint32_t probe_slack = 4);

// Least n with: every glued g >= n lies in the closure, computed as the
// minimum over contributing boxes of 1 + max(domain), 0 for an
// empty-domain box. Error(EmptyOpen) when v is empty.
std::uint32_t closure_tail_bound(const GlueOpen& v);

// A common point of the closures of every listed open: Glued(g) for g the
// maximum of the tail bounds. Error(EmptyOpen) on an empty list or any
// empty member.
GluePoint rc_intersection_witness(std::span<const GlueOpen> opens);

// Disjoint basic neighbourhoods of two distinct points. Error(SamePoint).
std::pair<GlueOpen, GlueOpen> hausdorff_witness(const GluePoint& p, const GluePoint& q);

// Sufficient symbolic disjointness test: glued sets disjoint and every
// cross pair of contributing boxes incompatible.
bool symbolically_disjoint(const GlueOpen& a, const GlueOpen& b);

}  // namespace au::glue
