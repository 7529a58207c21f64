#include <au/bing_space.hpp>
#include <au/glue_space.hpp>
#include <au/rational.hpp>
#include <au/reaping.hpp>
#include <au/rng.hpp>
#include <au/star_sequences.hpp>

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

// Acceptance gate: nine independent checks, one line per check, exit 0
// only when every line reads PASS.  All bounds, seeds and thresholds are
// pinned here; nothing is read from flags or the environment except the
// AU_CLI path used by the determinism check.

using namespace au;

namespace {

// ---------------------------------------------------------- glue helpers

cube::Box random_box(rng::Xoshiro256ss& gen, std::uint32_t index_bound) {
  std::map<std::uint32_t, int> bits;
  std::uint32_t n = std::uint32_t(gen.below(4));
  for (std::uint32_t t = 0; t < n; ++t) {
    bits[std::uint32_t(gen.below(index_bound))] = int(gen.below(2));
  }
  return cube::Box(std::move(bits));
}

// Nonempty open whose contributing box domains stay inside [0, index_bound).
glue::GlueOpen random_open(rng::Xoshiro256ss& gen, std::uint32_t index_bound) {
  std::uint32_t n = 1 + std::uint32_t(gen.below(3));
  std::vector<glue::Generator> gens;
  for (std::uint32_t t = 0; t < n; ++t) {
    if (gen.below(2) == 0) {
      gens.push_back(glue::YGen{random_box(gen, index_bound)});
    } else {
      std::uint32_t a = std::uint32_t(gen.below(index_bound - 1));
      std::uint32_t mmax = std::min(index_bound - 1, a + 4);
      gens.push_back(glue::AGen{a, a + 1 + std::uint32_t(gen.below(mmax - a))});
    }
  }
  return glue::GlueOpen::make(std::move(gens));
}

glue::GluePoint random_point(rng::Xoshiro256ss& gen, std::uint32_t glued_bound) {
  if (gen.below(2) == 0) {
    return glue::GluePoint::glued(std::uint32_t(gen.below(glued_bound)));
  }
  std::vector<std::uint8_t> prefix(gen.below(8));
  for (auto& b : prefix) b = std::uint8_t(gen.below(2));
  return glue::GluePoint::y(cube::CubePoint(std::move(prefix), cube::Tail::Alt01));
}

// ---------------------------------------------------------- bing helpers

bing::AxisSystem random_system(rng::Xoshiro256ss& gen) {
  std::uint32_t n = 1 + std::uint32_t(gen.below(3));
  std::vector<bing::Interval> ivs;
  for (std::uint32_t t = 0; t < n; ++t) {
    std::int64_t den = 1 + std::int64_t(gen.below(8));
    Rational lo(std::int64_t(gen.below(std::uint64_t(den) * 20)), den);
    Rational width(1 + std::int64_t(gen.below(8)), 1 + std::int64_t(gen.below(4)));
    ivs.push_back(bing::Interval{lo, lo + width});
  }
  return bing::AxisSystem(std::move(ivs));
}

// ------------------------------------------------------------ CLI helper

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& binary, const std::string& args) {
  std::string cmd = "\"" + binary + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  RunResult r;
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// ----------------------------------------------------------------- gate

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void check(int number, const char* what, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  std::printf("[%s] criterion %d: %s (%s)\n", o.ok ? "PASS" : "FAIL", number, what,
              o.detail.c_str());
  if (!o.ok) ++failures;
}

}  // namespace

int main() {
  // 1. Every glued index from the tail bound up to 128 lies in the closure
  //    of each seeded open with box domains inside [0,16).  Exact, no slack.
  check(1, "glued tail segment lies in every closure", [] {
    rng::Xoshiro256ss gen(1001);
    std::uint64_t bad = 0, checked = 0;
    for (int round = 0; round < 500; ++round) {
      glue::GlueOpen v = random_open(gen, 16);
      std::uint32_t bound = glue::closure_tail_bound(v);
      for (std::uint32_t g = bound; g < 128; ++g) {
        ++checked;
        if (!glue::closure_contains(v, glue::GluePoint::glued(g))) ++bad;
      }
    }
    return Outcome{bad == 0, std::to_string(checked) + " memberships, " +
                                 std::to_string(bad) + " failures"};
  });

  // 2. The symbolic closure decision agrees with the exhaustive
  //    finite-probe oracle on every glued index below 20.
  check(2, "closure decision matches the exhaustive oracle", [] {
    rng::Xoshiro256ss gen(1002);
    std::uint64_t mismatches = 0, checked = 0;
    for (int round = 0; round < 500; ++round) {
      glue::GlueOpen v = random_open(gen, 16);
      for (std::uint32_t g = 0; g < 20; ++g) {
        ++checked;
        bool fast = glue::closure_contains(v, glue::GluePoint::glued(g));
        bool slow = glue::closure_contains_exhaustive(v, g);
        if (fast != slow) ++mismatches;
      }
    }
    return Outcome{mismatches == 0, std::to_string(checked) + " comparisons, " +
                                        std::to_string(mismatches) + " mismatches"};
  });

  // 3. A common closure point is found and re-verified for every seeded
  //    tuple of up to five nonempty opens.
  check(3, "common closure point found for every finite tuple", [] {
    rng::Xoshiro256ss gen(1003);
    std::uint64_t bad = 0;
    for (int round = 0; round < 500; ++round) {
      std::uint32_t k = 1 + std::uint32_t(gen.below(5));
      std::vector<glue::GlueOpen> opens;
      opens.reserve(k);
      for (std::uint32_t t = 0; t < k; ++t) opens.push_back(random_open(gen, 16));
      glue::GluePoint w = glue::rc_intersection_witness(opens);
      for (const auto& v : opens) {
        if (!glue::closure_contains(v, w)) ++bad;
      }
    }
    return Outcome{bad == 0, "500 tuples, " + std::to_string(bad) + " failures"};
  });

  // 4. For all pairs from 8 glued + 8 alternating-tail points, the
  //    separating opens are symbolically disjoint and 1000 sampled points
  //    never land in both.
  check(4, "separating opens are disjoint symbolically and under sampling", [] {
    rng::Xoshiro256ss gen(1004);
    std::vector<glue::GluePoint> points;
    std::set<std::string> seen;
    while (points.size() < 8) {
      glue::GluePoint p = glue::GluePoint::glued(std::uint32_t(gen.below(64)));
      if (seen.insert(p.str()).second) points.push_back(p);
    }
    while (points.size() < 16) {
      std::vector<std::uint8_t> prefix(gen.below(8));
      for (auto& b : prefix) b = std::uint8_t(gen.below(2));
      glue::GluePoint p =
          glue::GluePoint::y(cube::CubePoint(std::move(prefix), cube::Tail::Alt01));
      if (seen.insert(p.str()).second) points.push_back(p);
    }
    std::uint64_t pairs = 0, bad = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        ++pairs;
        auto [u, v] = glue::hausdorff_witness(points[i], points[j]);
        bool good = glue::contains(u, points[i]) && glue::contains(v, points[j]) &&
                    glue::symbolically_disjoint(u, v);
        for (int t = 0; t < 1000 && good; ++t) {
          glue::GluePoint s = random_point(gen, 64);
          if (glue::contains(u, s) && glue::contains(v, s)) good = false;
        }
        if (!good) ++bad;
      }
    }
    return Outcome{bad == 0 && pairs == 120,
                   std::to_string(pairs) + " pairs, " + std::to_string(bad) + " failures"};
  });

  // 5. Exact half-plane closure witnesses for 200 seeded pairs, plus the
  //    certified triple: verified pairwise witnesses, empty denominator-50
  //    grid, and pairwise-disjoint hull shadows on the axis.
  check(5, "half-plane witnesses verify and the certified triple stays empty", [] {
    rng::Xoshiro256ss gen(1005);
    std::uint64_t bad = 0;
    for (int round = 0; round < 200; ++round) {
      bing::AxisSystem s1 = random_system(gen);
      bing::AxisSystem s2 = random_system(gen);
      bing::BingPoint w = bing::closure_witness(s1, s2);
      if (!(w.b > Rational(0)) || !bing::closure_contains(s1, w) ||
          !bing::closure_contains(s2, w)) {
        ++bad;
      }
    }

    bing::TripleReport triple = bing::empty_triple(50);
    bool triple_ok = triple.pairwise_verified && triple.hulls_disjoint &&
                     triple.grid_empty && triple.grid_denominator_bound == 50 &&
                     triple.systems.size() == 3 && triple.pairwise.size() == 3;
    // re-verify the pairwise witnesses independently of the report flags
    if (triple_ok) {
      std::size_t idx = 0;
      for (std::size_t i = 0; i < 3 && triple_ok; ++i) {
        for (std::size_t j = i + 1; j < 3 && triple_ok; ++j, ++idx) {
          const bing::BingPoint& w = triple.pairwise[idx];
          triple_ok = w.b > Rational(0) &&
                      bing::closure_contains(triple.systems[i], w) &&
                      bing::closure_contains(triple.systems[j], w);
        }
      }
    }
    // the pigeonhole certificate: the three closed hulls are pairwise
    // disjoint on the axis, so no single point can have feet in two of them
    if (triple_ok) {
      for (std::size_t i = 0; i < 3 && triple_ok; ++i) {
        for (std::size_t j = i + 1; j < 3 && triple_ok; ++j) {
          const auto& a = triple.systems[i].intervals();
          const auto& b = triple.systems[j].intervals();
          triple_ok = a.back().hi < b.front().lo || b.back().hi < a.front().lo;
        }
      }
    }
    return Outcome{bad == 0 && triple_ok,
                   "200 pairs, " + std::to_string(bad) +
                       " failures; triple " + (triple_ok ? "certified" : "NOT certified")};
  });

  // 6. Reference extension ladder at stages=4, budget=16, scan=512, seed=0:
  //    both target sets reach the closure threshold t=8, and every base set
  //    meets every selector of depth <= 3 at t=1.
  check(6, "extension ladder keeps closing in on both target sets", [] {
    reap::ReferenceInstance ref = reap::reference_instance();
    reap::ExtendOptions opts;
    opts.budget = 16;
    opts.seed = 0;
    reap::ExtensionResult r =
        reap::one_step_extension(*ref.ground, ref.i_set, ref.j_set, {}, 4, ref.base, opts);

    const std::uint64_t scan = 512, t_progress = 8;
    std::uint64_t pi = reap::closure_progress_count(r, ref.i_set, scan);
    std::uint64_t pj = reap::closure_progress_count(r, ref.j_set, scan);
    bool progress_ok = pi >= t_progress && pj >= t_progress;

    std::uint64_t checked = 0, dense_bad = 0;
    std::vector<std::uint32_t> dom;
    auto sweep = [&](auto&& self, std::uint32_t next_stage) -> void {
      std::uint32_t combos = std::uint32_t(1) << dom.size();
      for (std::uint32_t bits = 0; bits < combos; ++bits) {
        std::map<std::uint32_t, int> eps;
        for (std::size_t i = 0; i < dom.size(); ++i) eps[dom[i]] = int((bits >> i) & 1);
        for (const auto& c : r.c0) {
          ++checked;
          if (reap::dense_trace_count(r, c, eps, scan) < 1) ++dense_bad;
        }
      }
      if (dom.size() == 3) return;
      for (std::uint32_t s = next_stage; s < 4; ++s) {
        dom.push_back(s);
        self(self, s + 1);
        dom.pop_back();
      }
    };
    sweep(sweep, 0);

    return Outcome{progress_ok && dense_bad == 0,
                   "progress I=" + std::to_string(pi) + " J=" + std::to_string(pj) +
                       " (threshold 8); " + std::to_string(checked) +
                       " dense-trace checks, " + std::to_string(dense_bad) + " failures"};
  });

  // 7. Partition fragments: the seed-42 table passes the dyadicity count at
  //    t=1 for 100 seeded sample/selector pairs; a 20-pair rewrite schedule
  //    separates every scheduled pair; the seed-7 table has zero failing
  //    closure tail cells at beta=32, depth=2.
  check(7, "partition fragments: dyadicity, rewrites, tail closure", [] {
    star::StarFragment f = star::cohen_fragment(64, 8, 42);
    rng::Xoshiro256ss gen(1007);
    std::uint64_t dyadic_bad = 0;
    for (int round = 0; round < 100; ++round) {
      std::vector<star::Cell> S =
          star::sample_cells(32, 8, 128, rng::mix64(42 ^ std::uint64_t(round)));
      std::uint32_t ds = std::uint32_t(gen.below(4));
      std::map<std::uint32_t, int> eps;
      while (eps.size() < ds) {
        eps.emplace(32 + std::uint32_t(gen.below(32)), 0);
      }
      for (auto& [idx, bit] : eps) bit = int(gen.below(2));
      if (!star::dyadicity_check(f, S, eps, 1).ok) ++dyadic_bad;
    }

    star::StarFragment f1 = star::cohen_fragment(64, 1, 42);
    std::vector<star::ScheduleEntry> schedule;
    for (std::uint32_t i = 0; i < 20; ++i) {
      schedule.push_back(star::ScheduleEntry{i, (i + 1) % 20, i, 40 + i});
    }
    star::StarFragment g1 = star::strongify_case1(f1, schedule);
    std::uint64_t rewrite_bad = 0;
    for (const auto& e : schedule) {
      auto sep = star::find_separator(g1, star::Cell{e.zeta, 0}, star::Cell{e.xi, 0}, 32);
      if (!sep || *sep > e.alpha) ++rewrite_bad;
    }

    star::StarFragment f7 = star::cohen_fragment(64, 4, 7);
    std::vector<star::Cell> S7 = star::sample_cells(32, 4, 64, 7);
    star::TailReport tail = star::closure_tail_report(f7, S7, 32, 2);

    bool ok = dyadic_bad == 0 && rewrite_bad == 0 && tail.all_pass();
    return Outcome{ok, "dyadicity failures " + std::to_string(dyadic_bad) +
                           "/100; unseparated pairs " + std::to_string(rewrite_bad) +
                           "/20; failing tail cells " + std::to_string(tail.failing.size()) +
                           "/" + std::to_string(tail.cells_checked)};
  });

  // 8. For 100 random families over grounds of up to 256 points, the trace
  //    fibers number at most 2^|family| and no member cuts through a fiber.
  check(8, "trace fibers respect the two-power bound", [] {
    rng::Xoshiro256ss gen(1008);
    std::uint64_t bad = 0;
    for (int round = 0; round < 100; ++round) {
      std::uint32_t ground = 1 + std::uint32_t(gen.below(256));
      std::uint32_t members = std::uint32_t(gen.below(7));
      std::vector<std::vector<std::uint32_t>> family(members);
      for (auto& m : family) {
        for (std::uint32_t x = 0; x < ground; ++x) {
          if (gen.below(2) == 0) m.push_back(x);
        }
      }
      star::FiberMap fm = star::splitting_fiber_map(ground, family);
      std::uint64_t total = 0;
      for (const auto& [mask, size] : fm.fibers) total += size;
      if (fm.fiber_count() > (std::uint64_t(1) << members) || !fm.no_member_splits ||
          total != ground) {
        ++bad;
      }
    }
    return Outcome{bad == 0, "100 families, " + std::to_string(bad) + " violations"};
  });

  // 9. Each subcommand emits byte-identical reports across two runs of the
  //    same config and exits 0 on these reference configs.
  check(9, "reports are byte-identical across repeated runs", [] {
    const char* cli = std::getenv("AU_CLI");
    if (!cli || !*cli) {
      return Outcome{false, "AU_CLI is not set"};
    }
    const std::string configs[] = {
        "cantor --pairs 100 --arity 5 --index-bound 32 --seed 3",
        "bing --pairs 200 --grid-denominator 50 --seed 9",
        "extend --stages 4 --budget 16 --scan 512 --seed 0",
        "star --K 64 --M 8 --seed 42 --t 1 --depth 2",
    };
    std::uint64_t bad = 0;
    for (const auto& cfg : configs) {
      RunResult a = run_cli(cli, cfg);
      RunResult b = run_cli(cli, cfg);
      if (a.exit_code != 0 || b.exit_code != 0 || a.out != b.out || a.out.empty()) ++bad;
    }
    return Outcome{bad == 0, "4 subcommands, " + std::to_string(bad) + " unstable"};
  });

  std::printf("%d/9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
