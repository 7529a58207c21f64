#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "au/bing_space.hpp"
#include "au/error.hpp"
#include "au/glue_space.hpp"
#include "au/reaping.hpp"
#include "au/rng.hpp"
#include "au/star_sequences.hpp"

// Batch verifier: every subcommand runs a deterministic seeded sweep and
// emits one report. Exit 0 = everything verified, 1 = a check failed,
// 2 = bad usage. Reports contain no timestamps, floats or paths, so a
// fixed config yields byte-identical output.

namespace {

using json = nlohmann::ordered_json;
using namespace au;

void flatten(const json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    }
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& v : j) flatten(v, prefix + "[" + std::to_string(i++) + "]", out);
  } else {
    out += prefix + " = " + j.dump() + "\n";
  }
}

int emit(const json& report, const std::string& format, const std::string& out_flag) {
  std::string text;
  if (format == "json") {
    text = report.dump(2) + "\n";
  } else {
    flatten(report, "", text);
  }

  std::string path = out_flag;
  if (const char* dir = std::getenv("AU_REPORT_DIR"); dir && *dir) {
    std::filesystem::path d(dir);
    std::string cmd = report.at("command").get<std::string>();
    if (path.empty()) {
      path = (d / (cmd + (format == "json" ? ".json" : ".txt"))).string();
    } else if (!std::filesystem::path(path).is_absolute()) {
      path = (d / path).string();
    }
  }
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "cannot open " << path << " for writing\n";
    return 2;
  }
  f << text;
  return 0;
}

// ---------------------------------------------------------------- cantor

struct CantorCfg {
  std::uint64_t pairs = 100;
  std::uint32_t arity = 5;
  std::uint32_t index_bound = 32;
  std::uint64_t seed = 0;
};

json run_cantor(const CantorCfg& cfg, bool& ok) {
  rng::Xoshiro256ss gen(cfg.seed);

  auto random_box = [&](std::uint32_t max_dom) {
    std::map<std::uint32_t, int> bits;
    std::uint32_t n = std::uint32_t(gen.below(max_dom + 1));
    for (std::uint32_t t = 0; t < n; ++t) {
      bits[std::uint32_t(gen.below(cfg.index_bound))] = int(gen.below(2));
    }
    return cube::Box(std::move(bits));
  };
  auto random_open = [&]() {
    std::uint32_t n = 1 + std::uint32_t(gen.below(3));
    std::vector<glue::Generator> gens;
    for (std::uint32_t t = 0; t < n; ++t) {
      if (gen.below(2) == 0) {
        gens.push_back(glue::YGen{random_box(3)});
      } else {
        std::uint32_t a = std::uint32_t(gen.below(cfg.index_bound));
        gens.push_back(glue::AGen{a, a + 1 + std::uint32_t(gen.below(4))});
      }
    }
    return glue::GlueOpen::make(std::move(gens));
  };
  auto random_point = [&]() {
    if (gen.below(2) == 0) {
      return glue::GluePoint::glued(std::uint32_t(gen.below(cfg.index_bound)));
    }
    std::vector<std::uint8_t> prefix(gen.below(8));
    for (auto& b : prefix) b = std::uint8_t(gen.below(2));
    return glue::GluePoint::y(cube::CubePoint(std::move(prefix), cube::Tail::Alt01));
  };

  std::uint64_t witness_failures = 0, oracle_checks = 0, oracle_mismatches = 0,
                hausdorff_failures = 0;
  std::vector<std::string> samples;

  for (std::uint64_t round = 0; round < cfg.pairs; ++round) {
    std::uint32_t k = 2 + std::uint32_t(gen.below(cfg.arity - 1));
    std::vector<glue::GlueOpen> opens;
    opens.reserve(k);
    for (std::uint32_t t = 0; t < k; ++t) opens.push_back(random_open());

    try {
      glue::GluePoint w = glue::rc_intersection_witness(opens);
      if (samples.size() < 3) samples.push_back(w.str());
    } catch (const std::exception&) {
      ++witness_failures;
    }

    for (std::uint32_t g = 0; g < 20; ++g) {
      ++oracle_checks;
      if (glue::closure_contains(opens[0], glue::GluePoint::glued(g)) !=
          glue::closure_contains_exhaustive(opens[0], g)) {
        ++oracle_mismatches;
      }
    }

    glue::GluePoint p = random_point();
    glue::GluePoint q = random_point();
    for (int tries = 0; q == p && tries < 64; ++tries) q = random_point();
    if (q == p) {
      q = glue::GluePoint::glued(p.is_glued() ? p.glued_index() + 1 : 0);
    }
    auto [u, v] = glue::hausdorff_witness(p, q);
    bool good = glue::contains(u, p) && glue::contains(v, q) &&
                glue::symbolically_disjoint(u, v);
    for (std::uint32_t t = 0; t < 64 && good; ++t) {
      glue::GluePoint s = random_point();
      if (glue::contains(u, s) && glue::contains(v, s)) good = false;
    }
    if (!good) ++hausdorff_failures;
  }

  ok = witness_failures == 0 && oracle_mismatches == 0 && hausdorff_failures == 0;

  json j;
  j["schema"] = 1;
  j["command"] = "cantor";
  j["config"] = {{"pairs", cfg.pairs},
                 {"arity", cfg.arity},
                 {"index_bound", cfg.index_bound},
                 {"seed", cfg.seed},
                 {"generator", "xoshiro256** / splitmix64"}};
  j["rounds"] = cfg.pairs;
  j["witness_failures"] = witness_failures;
  j["oracle_checks"] = oracle_checks;
  j["oracle_mismatches"] = oracle_mismatches;
  j["hausdorff_failures"] = hausdorff_failures;
  j["sample_witnesses"] = samples;
  j["verified"] = ok;
  return j;
}

// ------------------------------------------------------------------ bing

struct BingCfg {
  std::uint64_t pairs = 200;
  int grid_denominator = 50;
  std::uint64_t seed = 0;
};

json run_bing(const BingCfg& cfg, bool& ok) {
  rng::Xoshiro256ss gen(cfg.seed);
  auto random_system = [&]() {
    std::uint32_t n = 1 + std::uint32_t(gen.below(3));
    std::vector<bing::Interval> ivs;
    for (std::uint32_t t = 0; t < n; ++t) {
      std::int64_t den = 1 + std::int64_t(gen.below(8));
      Rational lo(std::int64_t(gen.below(std::uint64_t(den) * 20)), den);
      Rational width(1 + std::int64_t(gen.below(8)), 1 + std::int64_t(gen.below(4)));
      ivs.push_back(bing::Interval{lo, lo + width});
    }
    return bing::AxisSystem(std::move(ivs));
  };

  std::uint64_t witness_failures = 0;
  std::vector<std::string> samples;
  for (std::uint64_t round = 0; round < cfg.pairs; ++round) {
    bing::AxisSystem s1 = random_system();
    bing::AxisSystem s2 = random_system();
    try {
      bing::BingPoint w = bing::closure_witness(s1, s2);
      bool good = w.b > Rational(0) && bing::closure_contains(s1, w) &&
                  bing::closure_contains(s2, w);
      if (!good) ++witness_failures;
      if (samples.size() < 3) samples.push_back(w.str());
    } catch (const std::exception&) {
      ++witness_failures;
    }
  }

  bing::TripleReport triple = bing::empty_triple(cfg.grid_denominator);
  bool triple_ok =
      triple.pairwise_verified && triple.hulls_disjoint && triple.grid_empty;

  ok = witness_failures == 0 && triple_ok;

  json j;
  j["schema"] = 1;
  j["command"] = "bing";
  j["config"] = {{"pairs", cfg.pairs},
                 {"grid_denominator", cfg.grid_denominator},
                 {"seed", cfg.seed},
                 {"generator", "xoshiro256** / splitmix64"}};
  j["rounds"] = cfg.pairs;
  j["witness_failures"] = witness_failures;
  j["sample_witnesses"] = samples;
  json systems = json::array();
  for (const auto& s : triple.systems) systems.push_back(s.str());
  json pairwise = json::array();
  for (const auto& w : triple.pairwise) pairwise.push_back(w.str());
  j["triple"] = {{"systems", systems},
                 {"pairwise_witnesses", pairwise},
                 {"pairwise_verified", triple.pairwise_verified},
                 {"hulls_disjoint", triple.hulls_disjoint},
                 {"grid_empty", triple.grid_empty},
                 {"grid_denominator_bound", triple.grid_denominator_bound},
                 {"feet_per_point", 2},
                 {"hull_count", 3}};
  j["verified"] = ok;
  return j;
}

// ---------------------------------------------------------------- extend

struct ExtendCfg {
  std::uint32_t stages = 4;
  std::uint64_t budget = 16;
  std::uint64_t scan = 512;
  std::uint64_t seed = 0;
};

json run_extend(const ExtendCfg& cfg, bool& ok) {
  reap::ReferenceInstance ref = reap::reference_instance();
  reap::ExtendOptions opts;
  opts.budget = cfg.budget;
  opts.seed = cfg.seed;
  reap::ExtensionResult r = reap::one_step_extension(
      *ref.ground, ref.i_set, ref.j_set, {}, cfg.stages, ref.base, opts);

  bool ladder_ok = true;
  json stages = json::array();
  for (std::uint32_t m = 0; m < cfg.stages; ++m) {
    const reap::StageInfo& info = r.stages[m];
    bool split_ok = true;
    json splits = json::array();
    for (const auto& c : info.stats.counts) {
      if (c.in < cfg.budget || c.out < cfg.budget) split_ok = false;
      splits.push_back({{"set", c.set_name}, {"in", c.in}, {"out", c.out}});
    }
    bool recursion_ok = m + 1 >= cfg.stages ||
                        r.family_sizes[m + 1] ==
                            r.family_sizes[m] + info.admitted_halves;
    if (!info.forbidden_excluded || !split_ok || !recursion_ok) ladder_ok = false;
    stages.push_back({{"forbidden", r.forbidden[m].str()},
                      {"forbidden_excluded", info.forbidden_excluded},
                      {"family_size", info.family_size},
                      {"splits", splits},
                      {"split_ok", split_ok},
                      {"admitted_halves", info.admitted_halves},
                      {"recursion_ok", recursion_ok}});
  }

  std::uint64_t threshold = std::min<std::uint64_t>(cfg.budget / 2, 8);
  std::uint64_t pi = reap::closure_progress_count(r, ref.i_set, cfg.scan);
  std::uint64_t pj = reap::closure_progress_count(r, ref.j_set, cfg.scan);
  bool progress_ok = pi >= threshold && pj >= threshold;

  std::uint64_t dense_checked = 0, dense_failures = 0;
  std::uint32_t max_depth = std::min<std::uint32_t>(3, cfg.stages);
  std::vector<std::uint32_t> dom;
  auto sweep = [&](auto&& self, std::uint32_t next_stage) -> void {
    std::map<std::uint32_t, int> eps;
    std::uint32_t combos = std::uint32_t(1) << dom.size();
    for (std::uint32_t bits = 0; bits < combos; ++bits) {
      eps.clear();
      for (std::size_t i = 0; i < dom.size(); ++i) eps[dom[i]] = int((bits >> i) & 1);
      for (const auto& c : r.c0) {
        ++dense_checked;
        if (reap::dense_trace_count(r, c, eps, cfg.scan) < 1) ++dense_failures;
      }
    }
    if (dom.size() == max_depth) return;
    for (std::uint32_t s = next_stage; s < cfg.stages; ++s) {
      dom.push_back(s);
      self(self, s + 1);
      dom.pop_back();
    }
  };
  sweep(sweep, 0);
  bool dense_ok = dense_failures == 0;

  ok = ladder_ok && progress_ok && dense_ok;

  json j;
  j["schema"] = 1;
  j["command"] = "extend";
  j["config"] = {{"stages", cfg.stages},
                 {"budget", cfg.budget},
                 {"scan", cfg.scan},
                 {"seed", cfg.seed},
                 {"ground", ref.ground->name}};
  json c0 = json::array();
  for (const auto& c : r.c0) c0.push_back(c.name());
  j["c0"] = c0;
  j["family_sizes"] = r.family_sizes;
  j["stages"] = stages;
  std::size_t prefix_len = std::size_t(std::min<std::uint64_t>(cfg.scan, 64));
  json ladders = json::array();
  for (const auto& d : r.ladders) {
    json elems = json::array();
    for (const auto& e : d.prefix(prefix_len, std::uint64_t(1) << 20)) {
      elems.push_back(e.str());
    }
    ladders.push_back({{"name", d.name()}, {"prefix", elems}});
  }
  j["ladders"] = ladders;
  j["progress"] = {{"threshold", threshold},
                   {"scan", cfg.scan},
                   {"i_count", pi},
                   {"j_count", pj},
                   {"ok", progress_ok}};
  j["dense_traces"] = {{"max_depth", max_depth},
                       {"checked", dense_checked},
                       {"failures", dense_failures},
                       {"ok", dense_ok}};
  j["subbase"] = r.subbase;
  j["new_point"] = r.new_point;
  j["verified"] = ok;
  return j;
}

// ------------------------------------------------------------------ star

struct StarCfg {
  std::uint32_t K = 64;
  std::uint32_t M = 8;
  std::uint64_t seed = 0;
  std::uint64_t t = 1;
  std::uint32_t depth = 2;
};

json run_star(const StarCfg& cfg, bool& ok) {
  star::StarFragment f = star::cohen_fragment(cfg.K, cfg.M, cfg.seed);
  bool partition_ok = f.check_partition();
  bool deterministic = star::cohen_fragment(cfg.K, cfg.M, cfg.seed) == f;

  std::uint32_t half = cfg.K / 2;
  std::uint64_t s_size =
      std::min<std::uint64_t>(2 * cfg.K, std::uint64_t(half) * cfg.M);
  std::vector<star::Cell> S =
      star::sample_cells(half, cfg.M, std::size_t(s_size), rng::mix64(cfg.seed ^ 0xD1AD));

  rng::Xoshiro256ss gen(rng::mix64(cfg.seed ^ 0x5045));
  const std::uint64_t sweeps = 100;
  std::uint64_t dyadic_failures = 0;
  std::uint64_t min_count = UINT64_MAX;
  for (std::uint64_t round = 0; round < sweeps; ++round) {
    std::uint32_t width = std::min(cfg.depth, cfg.K - half);
    std::uint32_t ds = std::uint32_t(gen.below(width + 1));
    std::map<std::uint32_t, int> eps;
    while (eps.size() < ds) {
      eps.emplace(half + std::uint32_t(gen.below(cfg.K - half)), 0);
    }
    for (auto& [idx, bit] : eps) bit = int(gen.below(2));
    star::DyadicityResult res = star::dyadicity_check(f, S, eps, cfg.t);
    if (!res.ok) ++dyadic_failures;
    min_count = std::min(min_count, res.count);
  }

  // Single-fiber rewrite sweep: push pairs apart at scheduled rows.
  star::StarFragment f1 = star::cohen_fragment(cfg.K, 1, cfg.seed);
  std::vector<star::ScheduleEntry> schedule;
  std::uint32_t n_sched = half >= 2 ? std::min<std::uint32_t>(8, cfg.K - half) : 0;
  for (std::uint32_t i = 0; i < n_sched; ++i) {
    std::uint32_t zeta = std::uint32_t(gen.below(half));
    std::uint32_t xi = std::uint32_t(gen.below(half));
    if (xi == zeta) xi = (xi + 1) % half;
    schedule.push_back(star::ScheduleEntry{zeta, xi, i, half + i});
  }
  star::StarFragment g1 = star::strongify_case1(f1, schedule);
  bool case1_ok = g1.check_partition();
  for (const auto& e : schedule) {
    auto sep = star::find_separator(g1, star::Cell{e.zeta, 0}, star::Cell{e.xi, 0}, half);
    if (!sep || *sep > e.alpha) case1_ok = false;
  }

  json case2 = json::object();
  bool case2_ok = true;
  if (cfg.M >= 2) {
    std::uint32_t gamma = std::max<std::uint32_t>(1, cfg.K / 4);
    auto [g2, rep] = star::strongify_case2(f, gamma);
    case2_ok = g2.check_partition();
    // Transversal cells must disagree somewhere on the tail rows.
    for (std::size_t i = 0; i < rep.transversal.size() && case2_ok; ++i) {
      for (std::size_t jx = i + 1; jx < rep.transversal.size(); ++jx) {
        bool differ = false;
        for (std::uint32_t z = gamma; z < cfg.K && !differ; ++z) {
          if (f.in_a0(z, rep.transversal[i]) != f.in_a0(z, rep.transversal[jx])) {
            differ = true;
          }
        }
        if (!differ) {
          case2_ok = false;
          break;
        }
      }
    }
    std::size_t max_class = 0;
    for (std::size_t s : rep.class_sizes) max_class = std::max(max_class, s);
    case2 = {{"gamma", gamma},
             {"classes", rep.classes()},
             {"max_class_size", max_class},
             {"deficit_columns", rep.deficit_columns},
             {"partition_ok", case2_ok}};
  }

  star::TailReport tail = star::closure_tail_report(f, S, half, cfg.depth);
  bool tail_ok = tail.all_pass();

  std::vector<std::vector<std::uint32_t>> family(4);
  for (std::uint32_t x = 0; x < 256; ++x) {
    for (std::uint32_t i = 0; i < 4; ++i) {
      if (rng::mix64(cfg.seed ^ (std::uint64_t(i) << 32) ^ x) & 1) {
        family[i].push_back(x);
      }
    }
  }
  star::FiberMap fibers = star::splitting_fiber_map(256, family);
  bool fiber_ok = fibers.fiber_count() <= 16 && fibers.no_member_splits;

  ok = partition_ok && deterministic && dyadic_failures == 0 && case1_ok &&
       case2_ok && tail_ok && fiber_ok;

  json j;
  j["schema"] = 1;
  j["command"] = "star";
  j["config"] = {{"K", cfg.K},
                 {"M", cfg.M},
                 {"seed", cfg.seed},
                 {"t", cfg.t},
                 {"depth", cfg.depth},
                 {"generator", "xoshiro256** / splitmix64"}};
  j["partition_ok"] = partition_ok;
  j["deterministic"] = deterministic;
  j["dyadicity"] = {{"sample_size", s_size},
                    {"sweeps", sweeps},
                    {"threshold", cfg.t},
                    {"min_count", min_count},
                    {"failures", dyadic_failures}};
  j["rewrites"] = {{"scheduled", n_sched}, {"separated_ok", case1_ok}};
  j["transport"] = case2;
  j["closure_tail"] = {{"beta", half},
                       {"depth", cfg.depth},
                       {"cells_checked", tail.cells_checked},
                       {"failing", tail.failing.size()}};
  j["fibers"] = {{"ground_size", 256},
                 {"family_size", 4},
                 {"fiber_count", fibers.fiber_count()},
                 {"bound_ok", fibers.fiber_count() <= 16},
                 {"no_member_splits", fibers.no_member_splits}};
  j["verified"] = ok;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic workbench for countable spaces with intersecting closures"};
  app.require_subcommand(1);

  std::string format = "json";
  std::string out_path;
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", out_path,
                 "Report file (default stdout; AU_REPORT_DIR overrides the directory)");

  CantorCfg cantor;
  CLI::App* cmd_cantor = app.add_subcommand(
      "cantor", "Glued-space sweep: closure witnesses, oracle cross-check, "
                "separation sampling");
  cmd_cantor->add_option("--pairs", cantor.pairs, "Sweep rounds");
  cmd_cantor->add_option("--arity", cantor.arity, "Max opens per intersection")
      ->check(CLI::Range(std::uint32_t(2), std::uint32_t(16)));
  cmd_cantor->add_option("--index-bound", cantor.index_bound, "Box index bound")
      ->check(CLI::Range(std::uint32_t(1), std::uint32_t(4096)));
  cmd_cantor->add_option("--seed", cantor.seed, "PRNG seed");

  BingCfg bing_cfg;
  CLI::App* cmd_bing = app.add_subcommand(
      "bing", "Half-plane sweep: pairwise closure witnesses and the certified "
              "empty triple");
  cmd_bing->add_option("--pairs", bing_cfg.pairs, "Sweep rounds");
  cmd_bing->add_option("--grid-denominator", bing_cfg.grid_denominator,
                       "Denominator bound for the triple grid search")
      ->check(CLI::Range(1, 200));
  cmd_bing->add_option("--seed", bing_cfg.seed, "PRNG seed");

  ExtendCfg extend;
  CLI::App* cmd_extend = app.add_subcommand(
      "extend", "One-step extension on the rational reference instance");
  cmd_extend->add_option("--stages", extend.stages, "Ladder stages")
      ->check(CLI::Range(std::uint32_t(1), std::uint32_t(8)));
  cmd_extend->add_option("--budget", extend.budget, "Productivity budget")
      ->check(CLI::Range(std::uint64_t(1), std::uint64_t(256)));
  cmd_extend->add_option("--scan", extend.scan, "Scan window for closure counts")
      ->check(CLI::Range(std::uint64_t(1), std::uint64_t(1) << 20));
  cmd_extend->add_option("--seed", extend.seed, "PRNG seed");

  StarCfg starc;
  CLI::App* cmd_star = app.add_subcommand(
      "star", "Partition-sequence sweep: dyadicity, rewrites, transport, "
              "closure tails, fibers");
  cmd_star->add_option("--K", starc.K, "Index bound")
      ->check(CLI::Range(std::uint32_t(2), std::uint32_t(256)));
  cmd_star->add_option("--M", starc.M, "Fiber bound")
      ->check(CLI::Range(std::uint32_t(1), std::uint32_t(64)));
  cmd_star->add_option("--seed", starc.seed, "PRNG seed");
  cmd_star->add_option("--t", starc.t, "Dyadicity threshold");
  cmd_star->add_option("--depth", starc.depth, "Selector depth")
      ->check(CLI::Range(std::uint32_t(0), std::uint32_t(3)));

  // --format/--out may trail the subcommand
  for (CLI::App* sub : {cmd_cantor, cmd_bing, cmd_extend, cmd_star}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    bool ok = false;
    json report;
    if (cmd_cantor->parsed()) {
      report = run_cantor(cantor, ok);
    } else if (cmd_bing->parsed()) {
      report = run_bing(bing_cfg, ok);
    } else if (cmd_extend->parsed()) {
      report = run_extend(extend, ok);
    } else {
      report = run_star(starc, ok);
    }
    int emit_rc = emit(report, format, out_path);
    if (emit_rc != 0) return emit_rc;
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "verification aborted: " << e.what() << "\n";
    return 1;
  }
}
