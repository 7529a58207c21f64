#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "au/rational.hpp"

// Finite engine for one-step point extensions: a countable ground set with
// a fixed enumeration, decidable enumerated subsets, and a reaper that
// builds sets D_m splitting every member of a growing family. "Infinite"
// is replaced throughout by a productivity budget: a set must produce the
// requested number of distinct elements within a step cap or the run
// rejects it.
namespace au::reap {

using Elem = Rational;

// Countable ground set with injective enumeration u_0, u_1, ...
// odd_index decides the parity of an element's enumeration position
// without computing the position itself.
struct Ground {
  std::string name;
  Elem (*at)(std::uint64_t);
  bool (*odd_index)(const Elem&);
};

const Ground& nat_ground();    // 0, 1, 2, ...
const Ground& rat01_ground();  // Q * (0,1) in Stern-Brocot level order

// Walks one enumeration; every step against the underlying generator
// consumes budget. Exhausted budget reads as a stall, not an end: all
// ground sets here are infinite.
struct StepBudget {
  std::uint64_t left = 0;
  bool step() {
    if (left == 0) return false;
    --left;
    return true;
  }
};

class Cursor {
 public:
  virtual ~Cursor() = default;
  virtual std::optional<Elem> next(StepBudget& budget) = 0;
};

class EnumSet {
 public:
  EnumSet() = default;
  EnumSet(std::string name, std::function<bool(const Elem&)> member,
          std::function<std::unique_ptr<Cursor>()> make_cursor);

  const std::string& name() const;
  bool member(const Elem& e) const;
  std::unique_ptr<Cursor> cursor() const;

  // First k distinct elements; Error(ProductivityViolation) on a stall.
  std::vector<Elem> take(std::size_t k, std::uint64_t step_cap) const;
  // Same walk without the failure: returns what was produced.
  std::vector<Elem> prefix(std::size_t k, std::uint64_t step_cap) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

// Built-in sets. Formula-backed sets enumerate directly (no ground scan),
// predicate sets walk the ground enumeration.
EnumSet evens();                                   // over nat
EnumSet primes();                                  // over nat
EnumSet progression(std::int64_t a, std::int64_t d);  // a, a+d, ... (d > 0)
EnumSet reciprocals();      // 1/2, 1/3, 1/4, ...
EnumSet co_reciprocals();   // 1/2, 2/3, 3/4, ...
EnumSet dyadic_interval(std::uint32_t level, std::uint32_t k);  // (k/2^l,(k+1)/2^l)
std::vector<EnumSet> dyadic_base(std::uint32_t max_level);      // levels 0..max_level

EnumSet intersect(const EnumSet& c, const EnumSet& d);
EnumSet setminus(const EnumSet& c, const EnumSet& d);

struct SplitOptions {
  std::uint64_t step_cap = std::uint64_t(1) << 16;
  std::uint64_t seed = 0;
  std::uint32_t stage = 0;
  const Ground* ground = nullptr;  // required
};

struct SplitCounts {
  std::string set_name;
  std::uint64_t in = 0;
  std::uint64_t out = 0;
};

struct SplitStats {
  std::vector<SplitCounts> counts;
  std::uint64_t decided = 0;
};

// Builds one decidable, enumerable D with at least `budget` elements of
// every family member inside D and outside D among the examined elements,
// with `forbidden` excluded outright. Round-robin over the family,
// alternately admitting and excluding fresh elements; undecided elements
// fall through to a seeded hash bit so D stays infinite and co-infinite on
// every productive set. An empty family yields every second element of
// the ground enumeration. Error(ProductivityViolation) when a member
// cannot supply fresh elements within the step cap.
EnumSet split_all(const std::vector<EnumSet>& family, std::uint64_t budget,
                  std::optional<Elem> forbidden, const SplitOptions& opts,
                  SplitStats* stats = nullptr);

struct StageInfo {
  std::size_t family_size = 0;
  SplitStats stats;
  bool forbidden_excluded = false;
  std::size_t admitted_halves = 0;  // survivors added to the next family
};

struct ExtensionResult {
  const Ground* ground = nullptr;
  std::vector<EnumSet> c0;
  std::vector<EnumSet> ladders;            // D_0 .. D_{stages-1}
  std::vector<Elem> forbidden;             // u_0 .. u_{stages-1}
  std::vector<std::size_t> family_sizes;   // |C_0| .. |C_{stages-1}|
  std::vector<StageInfo> stages;
  std::vector<std::string> subbase;
  std::string new_point = "p";
};

struct ExtendOptions {
  std::uint64_t budget = 16;
  std::uint64_t step_cap = std::uint64_t(1) << 16;
  std::uint64_t seed = 0;
};

// Assembles C_0 from I, J, the base sets and the pairwise traces
// A_i * B, keeping only members productive to the budget, then runs
// `stages` rounds: D_m = split_all(C_m, budget, u_m) and
// C_{m+1} = C_m + {C*D_m, C\D_m : C in C_m} (productive members only).
ExtensionResult one_step_extension(
    const Ground& ground, const EnumSet& i_set, const EnumSet& j_set,
    const std::vector<std::pair<Elem, EnumSet>>& pairs, std::uint32_t stages,
    const std::vector<EnumSet>& base, const ExtendOptions& opts);

// Count of A * D_0 * ... * D_{last} among the first `scan` elements of A;
// true iff it reaches t.
bool closure_progress(const ExtensionResult& r, const EnumSet& a, std::uint64_t t,
                      std::uint64_t scan);
std::uint64_t closure_progress_count(const ExtensionResult& r, const EnumSet& a,
                                     std::uint64_t scan);

// Count of C * D_eps among the first `scan` elements of C, where D_eps
// intersects D_m for eps(m)=1 and the complement for eps(m)=0.
bool check_dense_trace(const ExtensionResult& r, const EnumSet& c,
                       const std::map<std::uint32_t, int>& eps, std::uint64_t t,
                       std::uint64_t scan);
std::uint64_t dense_trace_count(const ExtensionResult& r, const EnumSet& c,
                                const std::map<std::uint32_t, int>& eps,
                                std::uint64_t scan);

// The rational reference instance: I = reciprocals, J = co_reciprocals,
// base = dyadic intervals of width >= 1/8.
struct ReferenceInstance {
  const Ground* ground;
  EnumSet i_set;
  EnumSet j_set;
  std::vector<EnumSet> base;
};
ReferenceInstance reference_instance();

// Naturals variant: I = evens, J = primes, base = residues mod 3.
ReferenceInstance nat_instance();

}  // namespace au::reap
