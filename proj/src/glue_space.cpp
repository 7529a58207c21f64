#include "au/glue_space.hpp"

#include <algorithm>
#include <charconv>

#include "au/error.hpp"

namespace au::glue {

namespace {

// Canonical sort key: Y-generators first (by box), then A-generators by
// (alpha, m).
bool gen_less(const Generator& a, const Generator& b) {
  if (a.index() != b.index()) return a.index() < b.index();
  if (a.index() == 0) return std::get<YGen>(a).box < std::get<YGen>(b).box;
  const auto& x = std::get<AGen>(a);
  const auto& y = std::get<AGen>(b);
  return std::pair(x.alpha, x.m) < std::pair(y.alpha, y.m);
}

}  // namespace

GluePoint GluePoint::y(cube::CubePoint p) {
  if (cube::classify(p).cls != cube::PointClass::InY) {
    throw std::invalid_argument("GluePoint::y needs an Alt01-tailed point");
  }
  GluePoint g;
  g.v_ = std::move(p);
  return g;
}

GluePoint GluePoint::glued(std::uint32_t a) {
  GluePoint g;
  g.v_ = a;
  return g;
}

std::string GluePoint::str() const {
  if (is_glued()) return "G:" + std::to_string(glued_index());
  return "Y:" + y_point().str();
}

cube::Box agen_box(const AGen& g) {
  std::map<std::uint32_t, int> bits;
  bits[g.alpha] = 1;
  for (std::uint32_t b = g.alpha + 1; b <= g.m; ++b) bits[b] = 0;
  return cube::Box(std::move(bits));
}

GlueOpen GlueOpen::make(std::vector<Generator> gens) {
  for (const auto& g : gens) {
    if (const auto* a = std::get_if<AGen>(&g)) {
      if (a->m <= a->alpha) {
        raise(ErrorCode::MalformedGenerator,
              "A(" + std::to_string(a->alpha) + ";" + std::to_string(a->m) +
                  ") needs m > alpha");
      }
    }
  }
  std::sort(gens.begin(), gens.end(), gen_less);
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  GlueOpen v;
  v.gens_ = std::move(gens);
  return v;
}

std::vector<cube::Box> GlueOpen::contributing_boxes() const {
  std::vector<cube::Box> boxes;
  boxes.reserve(gens_.size());
  for (const auto& g : gens_) {
    if (const auto* y = std::get_if<YGen>(&g)) {
      boxes.push_back(y->box);
    } else {
      boxes.push_back(agen_box(std::get<AGen>(g)));
    }
  }
  return boxes;
}

std::vector<std::uint32_t> GlueOpen::glued_points() const {
  std::vector<std::uint32_t> out;
  for (const auto& g : gens_) {
    if (const auto* a = std::get_if<AGen>(&g)) out.push_back(a->alpha);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string GlueOpen::str() const {
  std::string s;
  bool first = true;
  for (const auto& g : gens_) {
    if (!first) s += " | ";
    first = false;
    if (const auto* y = std::get_if<YGen>(&g)) {
      s += "Y" + y->box.str();
    } else {
      const auto& a = std::get<AGen>(g);
      s += "A(" + std::to_string(a.alpha) + ";" + std::to_string(a.m) + ")";
    }
  }
  return s;
}

GlueOpen GlueOpen::parse(std::string_view s) {
  std::vector<Generator> gens;
  while (!s.empty()) {
    auto bar = s.find(" | ");
    std::string_view item = s.substr(0, bar);
    s = (bar == std::string_view::npos) ? std::string_view{} : s.substr(bar + 3);
    if (item.size() >= 1 && item.front() == 'Y') {
      gens.push_back(YGen{cube::Box::parse(item.substr(1))});
    } else if (item.size() >= 4 && item.substr(0, 2) == "A(" && item.back() == ')') {
      std::string_view body = item.substr(2, item.size() - 3);
      auto semi = body.find(';');
      if (semi == std::string_view::npos) raise(ErrorCode::ParseError, "A(alpha;m)");
      std::uint32_t alpha = 0, m = 0;
      auto r1 = std::from_chars(body.data(), body.data() + semi, alpha);
      auto r2 = std::from_chars(body.data() + semi + 1, body.data() + body.size(), m);
      if (r1.ec != std::errc() || r2.ec != std::errc()) {
        raise(ErrorCode::ParseError, "bad A generator");
      }
      gens.push_back(AGen{alpha, m});
    } else {
      raise(ErrorCode::ParseError, "unknown generator '" + std::string(item) + "'");
    }
  }
  return make(std::move(gens));
}

bool contains(const GlueOpen& v, const GluePoint& p) {
  if (p.is_glued()) {
    for (const auto& g : v.generators()) {
      if (const auto* a = std::get_if<AGen>(&g)) {
        if (a->alpha == p.glued_index()) return true;
      }
    }
    return false;
  }
  const auto& y = p.y_point();
  for (const auto& g : v.generators()) {
    if (const auto* yg = std::get_if<YGen>(&g)) {
      if (yg->box.contains(y)) return true;
    } else if (agen_box(std::get<AGen>(g)).contains(y)) {
      return true;
    }
  }
  return false;
}

bool closure_contains(const GlueOpen& v, const GluePoint& p) {
  if (!p.is_glued()) return contains(v, p);
  const std::uint32_t g = p.glued_index();
  for (auto a : v.glued_points()) {
    if (a == g) return true;
  }
  // K_g meets a box iff the box demands 1 (or nothing) at g and only zeros
  // strictly above g; the bits below g are free.
  for (const auto& box : v.contributing_boxes()) {
    bool ok = true;
    for (auto& [i, bit] : box.bits()) {
      if (i == g && bit != 1) { ok = false; break; }
      if (i > g && bit != 0) { ok = false; break; }
    }
    if (ok) return true;
  }
  return false;
}

bool closure_contains_exhaustive(const GlueOpen& v, std::uint32_t g,
                                 std::uint32_t probe_slack) {
  auto glued = v.glued_points();
  if (std::binary_search(glued.begin(), glued.end(), g)) return true;
  auto boxes = v.contributing_boxes();
  std::uint32_t top = g + 1;
  for (const auto& b : boxes) {
    if (auto mx = b.max_index()) top = std::max(top, *mx + 1);
  }
  top += probe_slack;
  // Probes only get more demanding as m grows, and past `top` nothing new
  // is constrained, so this window decides the full quantifier.
  for (std::uint32_t m = g + 1; m <= top; ++m) {
    cube::Box probe = agen_box(AGen{g, m});
    bool meets = false;
    for (const auto& b : boxes) {
      if (cube::compatible(probe, b)) {
        meets = true;
        break;
      }
    }
    if (!meets) return false;
  }
  return true;
}

std::uint32_t closure_tail_bound(const GlueOpen& v) {
  if (v.empty()) raise(ErrorCode::EmptyOpen, "closure_tail_bound of empty open");
  std::uint32_t best = UINT32_MAX;
  for (const auto& box : v.contributing_boxes()) {
    auto mx = box.max_index();
    std::uint32_t bound = mx ? *mx + 1 : 0;
    best = std::min(best, bound);
  }
  return best;
}

GluePoint rc_intersection_witness(std::span<const GlueOpen> opens) {
  if (opens.empty()) raise(ErrorCode::EmptyOpen, "no opens given");
  std::uint32_t g = 0;
  for (const auto& v : opens) g = std::max(g, closure_tail_bound(v));
  GluePoint w = GluePoint::glued(g);
  for (const auto& v : opens) {
    if (!closure_contains(v, w)) {
      throw std::logic_error("tail bound witness fell outside a closure");
    }
  }
  return w;
}

std::pair<GlueOpen, GlueOpen> hausdorff_witness(const GluePoint& p, const GluePoint& q) {
  if (p == q) raise(ErrorCode::SamePoint, "identical points");

  auto single = [](std::uint32_t i, int bit) {
    return GlueOpen::make({YGen{cube::Box({{i, bit}})}});
  };

  if (!p.is_glued() && !q.is_glued()) {
    const auto& a = p.y_point();
    const auto& b = q.y_point();
    std::uint64_t bound = a.prefix().size() + b.prefix().size() + 2;
    for (std::uint64_t i = 0; i <= bound; ++i) {
      if (a.bit(i) != b.bit(i)) {
        return {single(std::uint32_t(i), a.bit(i)), single(std::uint32_t(i), b.bit(i))};
      }
    }
    throw std::logic_error("distinct canonical points agree on the deciding window");
  }

  if (p.is_glued() && q.is_glued()) {
    std::uint32_t a = p.glued_index();
    std::uint32_t b = q.glued_index();
    std::uint32_t m = std::max(a, b) + 1;
    // The two boxes disagree at max(a,b): one pins it to 1, the other to 0.
    return {GlueOpen::make({AGen{a, m}}), GlueOpen::make({AGen{b, m}})};
  }

  // Mixed: pin the Y-point on [0, beta] where beta is its first 1 above the
  // glued index; A(alpha; beta) forces 0 there.
  const GluePoint& ypt = p.is_glued() ? q : p;
  const GluePoint& gpt = p.is_glued() ? p : q;
  const auto& y = ypt.y_point();
  const std::uint32_t alpha = gpt.glued_index();
  std::uint32_t beta = alpha + 1;
  while (y.bit(beta) != 1) ++beta;  // Alt01 tail guarantees termination
  std::map<std::uint32_t, int> bits;
  for (std::uint32_t i = 0; i <= beta; ++i) bits[i] = y.bit(i);
  GlueOpen yopen = GlueOpen::make({YGen{cube::Box(std::move(bits))}});
  GlueOpen gopen = GlueOpen::make({AGen{alpha, beta}});
  if (p.is_glued()) return {gopen, yopen};
  return {yopen, gopen};
}

bool symbolically_disjoint(const GlueOpen& a, const GlueOpen& b) {
  auto ga = a.glued_points();
  auto gb = b.glued_points();
  std::vector<std::uint32_t> common;
  std::set_intersection(ga.begin(), ga.end(), gb.begin(), gb.end(),
                        std::back_inserter(common));
  if (!common.empty()) return false;
  for (const auto& ba : a.contributing_boxes()) {
    for (const auto& bb : b.contributing_boxes()) {
      if (cube::compatible(ba, bb)) return false;
    }
  }
  return true;
}

}  // namespace au::glue
