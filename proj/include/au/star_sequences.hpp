#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace au::star {

// A cell (xi, zeta) of the K x M grid: column xi, fiber row zeta.
struct Cell {
  std::uint32_t xi = 0;
  std::uint32_t zeta = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

std::string to_string(const Cell& c);

// A length-K fragment of a two-sided partition family: for each alpha < K,
// a set A0[alpha] of cells inside alpha x M, with A1[alpha] its complement
// in alpha x M.  Membership for a cell (xi, zeta) is only defined against
// indices alpha > xi.
class StarFragment {
 public:
  StarFragment(std::uint32_t K, std::uint32_t M);

  std::uint32_t K() const { return k_; }
  std::uint32_t M() const { return m_; }

  // c in A0[alpha]; requires xi < alpha < K and zeta < M.
  bool in_a0(std::uint32_t alpha, const Cell& c) const;
  void set_a0(std::uint32_t alpha, const Cell& c, bool value);

  // Structural soundness: row sizes and clear padding bits.
  bool check_partition() const;

  // "K M" header (plus the seed when given) and one hex row per alpha
  // (bit 0 of the row = cell (0,0), bit xi*M+zeta = cell (xi,zeta); hex
  // digit t carries bits 4t..4t+3 with bit 4t+3 as the digit's most
  // significant bit).
  std::string dump(std::optional<std::uint64_t> seed = std::nullopt) const;

  friend bool operator==(const StarFragment&, const StarFragment&) = default;

 private:
  std::uint32_t k_;
  std::uint32_t m_;
  std::vector<std::vector<std::uint64_t>> a0_;  // per alpha: alpha*M bits

  std::uint64_t bit_index(std::uint32_t alpha, const Cell& c) const;
};

// Seeded random fragment: cell (xi,zeta) lands in A0[alpha] when the
// table bit g(alpha,xi,zeta) is zero.  Deterministic per seed.
StarFragment cohen_fragment(std::uint32_t K, std::uint32_t M, std::uint64_t seed);

// |S cap A[eps]| where A[eps] intersects A^{eps(z)}[z] over dom(eps), and
// whether that count reaches t.  Duplicate cells in S are collapsed.
// Every cell of S must sit strictly below min(dom eps) so each membership
// is defined; otherwise IllFormedSelector.
struct DyadicityResult {
  std::uint64_t count = 0;
  bool ok = false;
};
DyadicityResult dyadicity_check(const StarFragment& f, const std::vector<Cell>& S,
                                const std::map<std::uint32_t, int>& eps,
                                std::uint64_t t);

// One rewrite instruction: at row alpha, A0 gains column zeta and drops
// column xi (single-fiber fragments only).
struct ScheduleEntry {
  std::uint32_t zeta = 0;
  std::uint32_t xi = 0;
  std::uint32_t eta = 0;  // disambiguates repeated (zeta, xi) requests
  std::uint32_t alpha = 0;
};

// Applies the schedule to an M=1 fragment: scheduled rows become
// (A0 u {zeta}) \ {xi}, all other rows are untouched, so each row moves by
// at most two cells.  BadSchedule on M != 1, alpha out of range,
// max(zeta,xi) >= alpha, or duplicate triples/targets.
StarFragment strongify_case1(const StarFragment& f,
                             const std::vector<ScheduleEntry>& schedule);

// Least alpha in [beta, K) whose A0 contains exactly one of x, y.
// Both cells must lie below beta; x == y is rejected (SamePoint).
std::optional<std::uint32_t> find_separator(const StarFragment& f, const Cell& x,
                                            const Cell& y, std::uint32_t beta);

struct Case2Report {
  std::vector<std::size_t> class_sizes;      // first-appearance order
  std::vector<Cell> transversal;             // lex-least member per class
  std::vector<std::uint32_t> deficit_columns;  // columns below gamma with thin traces
  std::size_t classes() const { return class_sizes.size(); }
  bool deficit() const { return !deficit_columns.empty(); }
};

// Groups the cells below gamma by their membership signature across rows
// [gamma, K), picks the lex-least cell of each class as a transversal, and
// transports every full column (M transversal cells) through the
// fiber-order bijection onto its transversal trace; thin columns pass
// through unchanged and are reported.  Requires M >= 2 and gamma < K.
std::pair<StarFragment, Case2Report> strongify_case2(const StarFragment& f,
                                                     std::uint32_t gamma);

struct TailReport {
  std::uint64_t cells_checked = 0;
  std::vector<Cell> failing;  // lex order
  std::optional<Cell> least_failing;
  bool all_pass() const { return failing.empty(); }
};

// For every tail cell c = (gamma, zeta) with gamma in [beta, K): does each
// basic neighborhood of c cut from at most `depth` rows above gamma meet S?
// A neighborhood is determined by its row set dom (subset of (gamma, K)):
// the bits are forced to c's own memberships.  S must sit inside beta x M.
TailReport closure_tail_report(const StarFragment& f, const std::vector<Cell>& S,
                               std::uint32_t beta, std::uint32_t depth);

struct FiberMap {
  // (trace mask over the family, fiber size), ordered by mask.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> fibers;
  bool no_member_splits = false;
  std::size_t fiber_count() const { return fibers.size(); }
};

// Groups 0..ground_size-1 by which family members contain them.  At most
// 2^|family| fibers can appear, and no member cuts through a fiber.
FiberMap splitting_fiber_map(std::uint32_t ground_size,
                             const std::vector<std::vector<std::uint32_t>>& family);

// n distinct seeded cells inside xi_bound x M, sorted lexicographically.
std::vector<Cell> sample_cells(std::uint32_t xi_bound, std::uint32_t M,
                               std::size_t n, std::uint64_t seed);

}  // namespace au::star
