#include "au/reaping.hpp"

#include <bit>
#include <stdexcept>

#include "au/error.hpp"
#include "au/rng.hpp"

namespace au::reap {

namespace {

Elem nat_at(std::uint64_t n) { return Rational(std::int64_t(n)); }

bool nat_odd_index(const Elem& e) {
  return e.den() == 1 && (e.num() & 1) != 0;
}

// Stern-Brocot level order on (0,1): heap position n+1, bits below the
// leading one choose left/right from the root 1/2.
Elem rat01_at(std::uint64_t n) {
  std::uint64_t i = n + 1;
  std::int64_t ln = 0, ld = 1, hn = 1, hd = 1;
  for (int k = int(std::bit_width(i)) - 2; k >= 0; --k) {
    std::int64_t mn = ln + hn, md = ld + hd;
    if ((i >> k) & 1) {
      ln = mn;
      ld = md;
    } else {
      hn = mn;
      hd = md;
    }
  }
  return Rational(ln + hn, ld + hd);
}

// Position parity in level order without the position: the 0-based index
// is 2^depth + path - 1, which is odd exactly when the final descent step
// went left (and even at the root).
bool rat01_odd_index(const Elem& e) {
  if (!(Rational(0) < e && e < Rational(1))) {
    throw std::logic_error("element outside (0,1)");
  }
  std::int64_t ln = 0, ld = 1, hn = 1, hd = 1;
  bool last_left = false;
  std::uint64_t depth = 0;
  for (;;) {
    std::int64_t mn = ln + hn, md = ld + hd;
    Rational med(mn, md);
    if (e == med) break;
    if (e < med) {
      hn = mn;
      hd = md;
      last_left = true;
    } else {
      ln = mn;
      ld = md;
      last_left = false;
    }
    if (++depth > 128) throw std::logic_error("descent failed to terminate");
  }
  return depth > 0 && last_left;
}

bool tail_bit(std::uint64_t seed, std::uint32_t stage, const Elem& e) {
  std::uint64_t h = rng::mix64(seed ^ 0x52454150ull);
  h = rng::mix64(h + stage);
  h = rng::mix64(h ^ (std::uint64_t(e.num()) * 0x9E3779B97F4A7C15ull));
  h = rng::mix64(h + std::uint64_t(e.den()));
  return (h & 1) != 0;
}

class FormulaCursor : public Cursor {
 public:
  explicit FormulaCursor(std::function<Elem(std::uint64_t)> f) : f_(std::move(f)) {}
  std::optional<Elem> next(StepBudget& budget) override {
    if (!budget.step()) return std::nullopt;
    return f_(n_++);
  }

 private:
  std::function<Elem(std::uint64_t)> f_;
  std::uint64_t n_ = 0;
};

class GroundScanCursor : public Cursor {
 public:
  GroundScanCursor(const Ground* g, std::function<bool(const Elem&)> pred)
      : g_(g), pred_(std::move(pred)) {}
  std::optional<Elem> next(StepBudget& budget) override {
    for (;;) {
      if (!budget.step()) return std::nullopt;
      Elem e = g_->at(n_++);
      if (pred_(e)) return e;
    }
  }

 private:
  const Ground* g_;
  std::function<bool(const Elem&)> pred_;
  std::uint64_t n_ = 0;
};

class FilterCursor : public Cursor {
 public:
  FilterCursor(std::unique_ptr<Cursor> parent, std::function<bool(const Elem&)> pred)
      : parent_(std::move(parent)), pred_(std::move(pred)) {}
  std::optional<Elem> next(StepBudget& budget) override {
    for (;;) {
      auto x = parent_->next(budget);
      if (!x) return std::nullopt;
      if (pred_(*x)) return x;
    }
  }

 private:
  std::unique_ptr<Cursor> parent_;
  std::function<bool(const Elem&)> pred_;
};

bool is_prime(std::int64_t x) {
  if (x < 2) return false;
  for (std::int64_t d = 2; d * d <= x; ++d) {
    if (x % d == 0) return false;
  }
  return true;
}

std::int64_t nth_prime(std::uint64_t n) {
  static std::vector<std::int64_t> cache = {2, 3, 5, 7, 11, 13};
  while (cache.size() <= n) {
    std::int64_t c = cache.back() + 2;
    while (!is_prime(c)) c += 2;
    cache.push_back(c);
  }
  return cache[n];
}

}  // namespace

const Ground& nat_ground() {
  static const Ground g{"nat", &nat_at, &nat_odd_index};
  return g;
}

const Ground& rat01_ground() {
  static const Ground g{"rat01", &rat01_at, &rat01_odd_index};
  return g;
}

struct EnumSet::Impl {
  std::string name;
  std::function<bool(const Elem&)> member;
  std::function<std::unique_ptr<Cursor>()> make_cursor;
};

EnumSet::EnumSet(std::string name, std::function<bool(const Elem&)> member,
                 std::function<std::unique_ptr<Cursor>()> make_cursor) {
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->member = std::move(member);
  impl->make_cursor = std::move(make_cursor);
  impl_ = std::move(impl);
}

const std::string& EnumSet::name() const { return impl_->name; }
bool EnumSet::member(const Elem& e) const { return impl_->member(e); }
std::unique_ptr<Cursor> EnumSet::cursor() const { return impl_->make_cursor(); }

std::vector<Elem> EnumSet::prefix(std::size_t k, std::uint64_t step_cap) const {
  std::vector<Elem> out;
  out.reserve(k);
  auto cur = cursor();
  StepBudget budget{step_cap};
  while (out.size() < k) {
    auto e = cur->next(budget);
    if (!e) break;
    out.push_back(*e);
  }
  return out;
}

std::vector<Elem> EnumSet::take(std::size_t k, std::uint64_t step_cap) const {
  auto out = prefix(k, step_cap);
  if (out.size() < k) {
    raise(ErrorCode::ProductivityViolation,
          name() + " produced " + std::to_string(out.size()) + " of " +
              std::to_string(k) + " requested elements");
  }
  return out;
}

namespace {

EnumSet formula_set(std::string name, std::function<Elem(std::uint64_t)> f,
                    std::function<bool(const Elem&)> member) {
  return EnumSet(std::move(name), std::move(member), [f = std::move(f)]() {
    return std::unique_ptr<Cursor>(new FormulaCursor(f));
  });
}

EnumSet ground_pred_set(const Ground& g, std::string name,
                        std::function<bool(const Elem&)> pred) {
  const Ground* gp = &g;
  return EnumSet(std::move(name), pred, [gp, pred]() {
    return std::unique_ptr<Cursor>(new GroundScanCursor(gp, pred));
  });
}

}  // namespace

EnumSet evens() {
  return formula_set(
      "evens", [](std::uint64_t n) { return Rational(std::int64_t(2 * n)); },
      [](const Elem& e) { return e.den() == 1 && e.num() >= 0 && e.num() % 2 == 0; });
}

EnumSet primes() {
  return formula_set(
      "primes", [](std::uint64_t n) { return Rational(nth_prime(n)); },
      [](const Elem& e) { return e.den() == 1 && is_prime(e.num()); });
}

EnumSet progression(std::int64_t a, std::int64_t d) {
  if (d < 1) throw std::invalid_argument("progression needs d >= 1");
  std::string name = "prog(" + std::to_string(a) + "+" + std::to_string(d) + "k)";
  return formula_set(
      name,
      [a, d](std::uint64_t n) { return Rational(a + d * std::int64_t(n)); },
      [a, d](const Elem& e) {
        return e.den() == 1 && e.num() >= a && (e.num() - a) % d == 0;
      });
}

EnumSet reciprocals() {
  return formula_set(
      "I", [](std::uint64_t n) { return Rational(1, std::int64_t(n) + 2); },
      [](const Elem& e) { return e.num() == 1 && e.den() >= 2; });
}

EnumSet co_reciprocals() {
  return formula_set(
      "J",
      [](std::uint64_t n) { return Rational(std::int64_t(n) + 1, std::int64_t(n) + 2); },
      [](const Elem& e) { return e.den() - e.num() == 1 && e.den() >= 2; });
}

EnumSet dyadic_interval(std::uint32_t level, std::uint32_t k) {
  if (level > 30 || k >= (std::uint32_t(1) << level)) {
    throw std::invalid_argument("bad dyadic interval");
  }
  Rational lo(k, std::int64_t(1) << level);
  Rational hi(k + 1, std::int64_t(1) << level);
  std::string name = "B(" + lo.str() + "," + hi.str() + ")";
  return ground_pred_set(rat01_ground(), name,
                         [lo, hi](const Elem& e) { return lo < e && e < hi; });
}

std::vector<EnumSet> dyadic_base(std::uint32_t max_level) {
  std::vector<EnumSet> out;
  for (std::uint32_t level = 0; level <= max_level; ++level) {
    for (std::uint32_t k = 0; k < (std::uint32_t(1) << level); ++k) {
      out.push_back(dyadic_interval(level, k));
    }
  }
  return out;
}

EnumSet intersect(const EnumSet& c, const EnumSet& d) {
  std::string name = "(" + c.name() + "&" + d.name() + ")";
  return EnumSet(
      name, [c, d](const Elem& e) { return c.member(e) && d.member(e); },
      [c, d]() {
        return std::unique_ptr<Cursor>(
            new FilterCursor(c.cursor(), [d](const Elem& e) { return d.member(e); }));
      });
}

EnumSet setminus(const EnumSet& c, const EnumSet& d) {
  std::string name = "(" + c.name() + "\\" + d.name() + ")";
  return EnumSet(
      name, [c, d](const Elem& e) { return c.member(e) && !d.member(e); },
      [c, d]() {
        return std::unique_ptr<Cursor>(
            new FilterCursor(c.cursor(), [d](const Elem& e) { return !d.member(e); }));
      });
}

EnumSet split_all(const std::vector<EnumSet>& family, std::uint64_t budget,
                  std::optional<Elem> forbidden, const SplitOptions& opts,
                  SplitStats* stats) {
  if (!opts.ground) throw std::invalid_argument("split_all needs a ground");
  if (budget < 1) throw std::invalid_argument("split_all needs budget >= 1");
  const Ground* g = opts.ground;
  const std::string name = "D" + std::to_string(opts.stage);

  if (family.empty()) {
    // Nothing to split: every second element of the ground enumeration.
    auto f = forbidden;
    auto member = [g, f](const Elem& e) {
      if (f && e == *f) return false;
      return g->odd_index(e);
    };
    if (stats) *stats = SplitStats{};
    return EnumSet(name, member, [g, member]() {
      return std::unique_ptr<Cursor>(new GroundScanCursor(g, member));
    });
  }

  auto decided = std::make_shared<std::map<Elem, bool>>();
  const std::uint64_t seed = opts.seed;
  const std::uint32_t stage = opts.stage;
  auto f = forbidden;
  auto member = [decided, seed, stage, f](const Elem& e) {
    if (f && e == *f) return false;
    if (auto it = decided->find(e); it != decided->end()) return it->second;
    return tail_bit(seed, stage, e);
  };

  struct State {
    std::unique_ptr<Cursor> cur;
    std::uint64_t in = 0;
    std::uint64_t out = 0;
  };
  std::vector<State> st;
  st.reserve(family.size());
  for (const auto& c : family) st.push_back(State{c.cursor(), 0, 0});

  std::uint64_t guard = 2 * budget * family.size() + 64;
  bool any = true;
  while (any) {
    any = false;
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (st[i].in >= budget && st[i].out >= budget) continue;
      any = true;
      StepBudget b{opts.step_cap};
      std::optional<Elem> e;
      for (;;) {
        auto x = st[i].cur->next(b);
        if (!x) break;
        if (f && *x == *f) continue;
        if (decided->count(*x)) continue;
        e = std::move(x);
        break;
      }
      if (!e) {
        raise(ErrorCode::ProductivityViolation,
              family[i].name() + " stalled while being split");
      }
      // Alternate per set, admitting first, until both sides are funded.
      bool admit = st[i].in < budget && (st[i].in <= st[i].out || st[i].out >= budget);
      decided->emplace(*e, admit);
      for (std::size_t j = 0; j < family.size(); ++j) {
        if (family[j].member(*e)) (admit ? st[j].in : st[j].out) += 1;
      }
      if (--guard == 0) throw std::logic_error("split_all failed to converge");
    }
  }

  if (stats) {
    stats->counts.clear();
    for (std::size_t i = 0; i < family.size(); ++i) {
      stats->counts.push_back(SplitCounts{family[i].name(), st[i].in, st[i].out});
    }
    stats->decided = decided->size();
  }
  return EnumSet(name, member, [g, member]() {
    return std::unique_ptr<Cursor>(new GroundScanCursor(g, member));
  });
}

ExtensionResult one_step_extension(
    const Ground& ground, const EnumSet& i_set, const EnumSet& j_set,
    const std::vector<std::pair<Elem, EnumSet>>& pairs, std::uint32_t stages,
    const std::vector<EnumSet>& base, const ExtendOptions& opts) {
  if (stages < 1) throw std::invalid_argument("need at least one stage");
  if (opts.budget < 1) throw std::invalid_argument("need budget >= 1");

  ExtensionResult r;
  r.ground = &ground;

  auto productive = [&](const EnumSet& s) {
    return s.prefix(opts.budget, opts.step_cap).size() == opts.budget;
  };
  auto admit = [&](const EnumSet& s) {
    if (productive(s)) r.c0.push_back(s);
  };

  admit(i_set);
  admit(j_set);
  for (const auto& b : base) admit(b);
  for (const auto& [x, a] : pairs) {
    (void)x;  // carried for attribution only; the traces drive the family
    for (const auto& b : base) admit(intersect(a, b));
  }

  std::vector<EnumSet> fam = r.c0;
  for (std::uint32_t m = 0; m < stages; ++m) {
    Elem um = ground.at(m);
    SplitOptions so;
    so.step_cap = opts.step_cap;
    so.seed = opts.seed;
    so.stage = m;
    so.ground = &ground;
    SplitStats stats;
    EnumSet d = split_all(fam, opts.budget, um, so, &stats);

    StageInfo info;
    info.family_size = fam.size();
    info.stats = std::move(stats);
    info.forbidden_excluded = !d.member(um);

    r.family_sizes.push_back(fam.size());
    r.forbidden.push_back(um);
    r.ladders.push_back(d);

    if (m + 1 < stages) {
      std::vector<EnumSet> next = fam;
      for (const auto& c : fam) {
        EnumSet ci = intersect(c, d);
        if (productive(ci)) {
          next.push_back(ci);
          ++info.admitted_halves;
        }
        EnumSet cm = setminus(c, d);
        if (productive(cm)) {
          next.push_back(cm);
          ++info.admitted_halves;
        }
      }
      fam = std::move(next);
    }
    r.stages.push_back(std::move(info));
  }

  r.subbase.push_back("tau");
  for (std::uint32_t m = 0; m < stages; ++m) {
    r.subbase.push_back("X\\D" + std::to_string(m));
    r.subbase.push_back("{p}+D" + std::to_string(m));
  }
  return r;
}

std::uint64_t closure_progress_count(const ExtensionResult& r, const EnumSet& a,
                                     std::uint64_t scan) {
  auto cur = a.cursor();
  StepBudget budget{scan * 64 + (std::uint64_t(1) << 16)};
  std::uint64_t count = 0;
  for (std::uint64_t k = 0; k < scan; ++k) {
    auto e = cur->next(budget);
    if (!e) break;
    bool in_all = true;
    for (const auto& d : r.ladders) {
      if (!d.member(*e)) {
        in_all = false;
        break;
      }
    }
    if (in_all) ++count;
  }
  return count;
}

bool closure_progress(const ExtensionResult& r, const EnumSet& a, std::uint64_t t,
                      std::uint64_t scan) {
  return closure_progress_count(r, a, scan) >= t;
}

std::uint64_t dense_trace_count(const ExtensionResult& r, const EnumSet& c,
                                const std::map<std::uint32_t, int>& eps,
                                std::uint64_t scan) {
  for (const auto& [k, v] : eps) {
    if (k >= r.ladders.size()) throw std::invalid_argument("selector index out of range");
    if (v != 0 && v != 1) throw std::invalid_argument("selector bits must be 0 or 1");
  }
  auto cur = c.cursor();
  StepBudget budget{scan * 64 + (std::uint64_t(1) << 16)};
  std::uint64_t count = 0;
  for (std::uint64_t k = 0; k < scan; ++k) {
    auto e = cur->next(budget);
    if (!e) break;
    bool inside = true;
    for (const auto& [idx, v] : eps) {
      if (r.ladders[idx].member(*e) != (v == 1)) {
        inside = false;
        break;
      }
    }
    if (inside) ++count;
  }
  return count;
}

bool check_dense_trace(const ExtensionResult& r, const EnumSet& c,
                       const std::map<std::uint32_t, int>& eps, std::uint64_t t,
                       std::uint64_t scan) {
  return dense_trace_count(r, c, eps, scan) >= t;
}

ReferenceInstance reference_instance() {
  return ReferenceInstance{&rat01_ground(), reciprocals(), co_reciprocals(),
                           dyadic_base(3)};
}

ReferenceInstance nat_instance() {
  return ReferenceInstance{&nat_ground(),
                           evens(),
                           primes(),
                           {progression(0, 3), progression(1, 3), progression(2, 3)}};
}

}  // namespace au::reap
