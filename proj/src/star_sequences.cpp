#include "au/star_sequences.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "au/error.hpp"
#include "au/rng.hpp"

namespace au::star {

std::string to_string(const Cell& c) {
  return "(" + std::to_string(c.xi) + "," + std::to_string(c.zeta) + ")";
}

StarFragment::StarFragment(std::uint32_t K, std::uint32_t M) : k_(K), m_(M) {
  if (K < 1 || M < 1) throw std::invalid_argument("fragment needs K >= 1, M >= 1");
  a0_.resize(K);
  for (std::uint32_t alpha = 0; alpha < K; ++alpha) {
    a0_[alpha].assign((std::uint64_t(alpha) * M + 63) / 64, 0);
  }
}

std::uint64_t StarFragment::bit_index(std::uint32_t alpha, const Cell& c) const {
  if (alpha >= k_ || c.xi >= alpha || c.zeta >= m_) {
    throw std::invalid_argument("cell " + to_string(c) + " has no membership at row " +
                                std::to_string(alpha));
  }
  return std::uint64_t(c.xi) * m_ + c.zeta;
}

bool StarFragment::in_a0(std::uint32_t alpha, const Cell& c) const {
  std::uint64_t b = bit_index(alpha, c);
  return (a0_[alpha][b / 64] >> (b % 64)) & 1;
}

void StarFragment::set_a0(std::uint32_t alpha, const Cell& c, bool value) {
  std::uint64_t b = bit_index(alpha, c);
  std::uint64_t mask = std::uint64_t(1) << (b % 64);
  if (value) {
    a0_[alpha][b / 64] |= mask;
  } else {
    a0_[alpha][b / 64] &= ~mask;
  }
}

bool StarFragment::check_partition() const {
  if (a0_.size() != k_) return false;
  for (std::uint32_t alpha = 0; alpha < k_; ++alpha) {
    std::uint64_t bits = std::uint64_t(alpha) * m_;
    if (a0_[alpha].size() != (bits + 63) / 64) return false;
    if (bits % 64 != 0 && !a0_[alpha].empty()) {
      std::uint64_t pad = a0_[alpha].back() >> (bits % 64);
      if (pad != 0) return false;
    }
  }
  return true;
}

std::string StarFragment::dump(std::optional<std::uint64_t> seed) const {
  std::string out = std::to_string(k_) + " " + std::to_string(m_);
  if (seed) out += " " + std::to_string(*seed);
  out += "\n";
  for (std::uint32_t alpha = 0; alpha < k_; ++alpha) {
    std::uint64_t bits = std::uint64_t(alpha) * m_;
    for (std::uint64_t t = 0; t * 4 < bits; ++t) {
      std::uint32_t nibble = (a0_[alpha][t / 16] >> ((t % 16) * 4)) & 0xF;
      out += "0123456789abcdef"[nibble];
    }
    out += "\n";
  }
  return out;
}

StarFragment cohen_fragment(std::uint32_t K, std::uint32_t M, std::uint64_t seed) {
  StarFragment f(K, M);
  for (std::uint32_t alpha = 0; alpha < K; ++alpha) {
    for (std::uint32_t xi = 0; xi < alpha; ++xi) {
      for (std::uint32_t zeta = 0; zeta < M; ++zeta) {
        std::uint64_t h = rng::mix64(seed ^ 0x53544152ull);
        h = rng::mix64(h + alpha);
        h = rng::mix64(h ^ (std::uint64_t(xi) * 0x9E3779B97F4A7C15ull));
        h = rng::mix64(h + zeta);
        f.set_a0(alpha, Cell{xi, zeta}, (h & 1) == 0);
      }
    }
  }
  return f;
}

namespace {

void validate_cell(const StarFragment& f, const Cell& c) {
  if (c.xi >= f.K() || c.zeta >= f.M()) {
    throw std::invalid_argument("cell " + to_string(c) + " outside the grid");
  }
}

std::vector<Cell> sorted_unique(std::vector<Cell> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace

DyadicityResult dyadicity_check(const StarFragment& f, const std::vector<Cell>& S,
                                const std::map<std::uint32_t, int>& eps,
                                std::uint64_t t) {
  for (const auto& [zeta, bit] : eps) {
    if (zeta >= f.K()) throw std::invalid_argument("selector index out of range");
    if (bit != 0 && bit != 1) throw std::invalid_argument("selector bits must be 0 or 1");
  }
  std::vector<Cell> cells = sorted_unique(S);
  for (const Cell& c : cells) validate_cell(f, c);
  if (!eps.empty()) {
    std::uint32_t min_dom = eps.begin()->first;
    for (const Cell& c : cells) {
      if (c.xi >= min_dom) {
        raise(ErrorCode::IllFormedSelector,
              "cell " + to_string(c) + " is not below selector index " +
                  std::to_string(min_dom));
      }
    }
  }
  DyadicityResult r;
  for (const Cell& c : cells) {
    bool inside = true;
    for (const auto& [zeta, bit] : eps) {
      if (f.in_a0(zeta, c) != (bit == 0)) {
        inside = false;
        break;
      }
    }
    if (inside) ++r.count;
  }
  r.ok = r.count >= t;
  return r;
}

StarFragment strongify_case1(const StarFragment& f,
                             const std::vector<ScheduleEntry>& schedule) {
  if (f.M() != 1) {
    raise(ErrorCode::BadSchedule, "rewrites need a single-fiber fragment");
  }
  std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> keys;
  std::set<std::uint32_t> targets;
  for (const auto& e : schedule) {
    if (e.alpha >= f.K()) {
      raise(ErrorCode::BadSchedule, "target row " + std::to_string(e.alpha) +
                                        " out of range");
    }
    if (std::max(e.zeta, e.xi) >= e.alpha) {
      raise(ErrorCode::BadSchedule, "columns must sit below the target row");
    }
    if (!keys.insert({e.zeta, e.xi, e.eta}).second) {
      raise(ErrorCode::BadSchedule, "duplicate schedule key");
    }
    if (!targets.insert(e.alpha).second) {
      raise(ErrorCode::BadSchedule, "duplicate target row " + std::to_string(e.alpha));
    }
  }
  StarFragment out = f;
  for (const auto& e : schedule) {
    out.set_a0(e.alpha, Cell{e.zeta, 0}, true);
    out.set_a0(e.alpha, Cell{e.xi, 0}, false);
  }
  return out;
}

std::optional<std::uint32_t> find_separator(const StarFragment& f, const Cell& x,
                                            const Cell& y, std::uint32_t beta) {
  validate_cell(f, x);
  validate_cell(f, y);
  if (x == y) raise(ErrorCode::SamePoint, "separation needs two distinct cells");
  if (x.xi >= beta || y.xi >= beta) {
    throw std::invalid_argument("both cells must sit below the cutoff");
  }
  for (std::uint32_t alpha = beta; alpha < f.K(); ++alpha) {
    if (f.in_a0(alpha, x) != f.in_a0(alpha, y)) return alpha;
  }
  return std::nullopt;
}

std::pair<StarFragment, Case2Report> strongify_case2(const StarFragment& f,
                                                     std::uint32_t gamma) {
  if (f.M() < 2) throw std::invalid_argument("transversal transport needs M >= 2");
  if (gamma >= f.K()) throw std::invalid_argument("cutoff must sit below the index bound");

  // Signature of a cell below gamma: its memberships across rows [gamma, K).
  auto signature = [&](const Cell& c) {
    std::vector<std::uint64_t> sig((f.K() - gamma + 63) / 64, 0);
    for (std::uint32_t zeta = gamma; zeta < f.K(); ++zeta) {
      if (f.in_a0(zeta, c)) sig[(zeta - gamma) / 64] |= std::uint64_t(1) << ((zeta - gamma) % 64);
    }
    return sig;
  };

  std::map<std::vector<std::uint64_t>, std::size_t> index_of;
  std::vector<std::vector<Cell>> classes;
  for (std::uint32_t xi = 0; xi < gamma; ++xi) {
    for (std::uint32_t zeta = 0; zeta < f.M(); ++zeta) {
      Cell c{xi, zeta};
      auto sig = signature(c);
      auto [it, fresh] = index_of.emplace(std::move(sig), classes.size());
      if (fresh) classes.emplace_back();
      classes[it->second].push_back(c);
    }
  }

  Case2Report report;
  std::vector<std::vector<Cell>> trace(gamma);  // transversal cells per column
  for (const auto& cls : classes) {
    report.class_sizes.push_back(cls.size());
    report.transversal.push_back(cls.front());  // lex iteration order
    trace[cls.front().xi].push_back(cls.front());
  }
  std::sort(report.transversal.begin(), report.transversal.end());
  for (std::uint32_t xi = 0; xi < gamma; ++xi) {
    std::sort(trace[xi].begin(), trace[xi].end());
    if (trace[xi].size() < f.M()) report.deficit_columns.push_back(xi);
  }

  // Transport every full column through the fiber-order bijection onto its
  // transversal trace; thin columns and columns at or above the cutoff keep
  // their original memberships.
  StarFragment out = f;
  for (std::uint32_t alpha = 0; alpha < f.K(); ++alpha) {
    for (std::uint32_t xi = 0; xi < std::min(alpha, gamma); ++xi) {
      if (trace[xi].size() != f.M()) continue;
      for (std::uint32_t zeta = 0; zeta < f.M(); ++zeta) {
        out.set_a0(alpha, Cell{xi, zeta}, f.in_a0(alpha, trace[xi][zeta]));
      }
    }
  }
  return {std::move(out), std::move(report)};
}

TailReport closure_tail_report(const StarFragment& f, const std::vector<Cell>& S,
                               std::uint32_t beta, std::uint32_t depth) {
  std::vector<Cell> cells = sorted_unique(S);
  for (const Cell& c : cells) {
    validate_cell(f, c);
    if (c.xi >= beta) {
      throw std::invalid_argument("sample cell " + to_string(c) +
                                  " is not below the cutoff");
    }
  }

  TailReport report;
  std::vector<std::uint32_t> dom;
  for (std::uint32_t gamma = beta; gamma < f.K(); ++gamma) {
    for (std::uint32_t zeta = 0; zeta < f.M(); ++zeta) {
      Cell c{gamma, zeta};
      ++report.cells_checked;

      // Every row set dom in (gamma, K) with |dom| <= depth pins a basic
      // neighborhood of c; some sample cell must share c's memberships on it.
      bool failed = false;
      auto meets_sample = [&]() {
        for (const Cell& s : cells) {
          bool agree = true;
          for (std::uint32_t row : dom) {
            if (f.in_a0(row, s) != f.in_a0(row, c)) {
              agree = false;
              break;
            }
          }
          if (agree) return true;
        }
        return false;
      };
      auto search = [&](auto&& self, std::uint32_t next_row) -> void {
        if (failed) return;
        if (!meets_sample()) {
          failed = true;
          return;
        }
        if (dom.size() == depth) return;
        for (std::uint32_t row = next_row; row < f.K(); ++row) {
          dom.push_back(row);
          self(self, row + 1);
          dom.pop_back();
          if (failed) return;
        }
      };
      dom.clear();
      search(search, gamma + 1);
      if (failed) report.failing.push_back(c);
    }
  }
  if (!report.failing.empty()) report.least_failing = report.failing.front();
  return report;
}

FiberMap splitting_fiber_map(std::uint32_t ground_size,
                             const std::vector<std::vector<std::uint32_t>>& family) {
  if (family.size() > 64) throw std::invalid_argument("at most 64 family members");
  std::vector<std::uint64_t> trace(ground_size, 0);
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::uint32_t x : family[i]) {
      if (x >= ground_size) throw std::invalid_argument("member element outside ground set");
      trace[x] |= std::uint64_t(1) << i;
    }
  }
  std::map<std::uint64_t, std::uint64_t> sizes;
  for (std::uint32_t x = 0; x < ground_size; ++x) ++sizes[trace[x]];

  FiberMap out;
  out.fibers.assign(sizes.begin(), sizes.end());
  out.no_member_splits = true;
  for (std::size_t i = 0; i < family.size() && out.no_member_splits; ++i) {
    std::set<std::uint32_t> members(family[i].begin(), family[i].end());
    std::map<std::uint64_t, std::pair<bool, bool>> seen;  // fiber -> (hit, miss)
    for (std::uint32_t x = 0; x < ground_size; ++x) {
      auto& [hit, miss] = seen[trace[x]];
      (members.count(x) ? hit : miss) = true;
    }
    for (const auto& [mask, hm] : seen) {
      if (hm.first && hm.second) {
        out.no_member_splits = false;
        break;
      }
    }
  }
  return out;
}

std::vector<Cell> sample_cells(std::uint32_t xi_bound, std::uint32_t M, std::size_t n,
                               std::uint64_t seed) {
  if (n > std::uint64_t(xi_bound) * M) {
    throw std::invalid_argument("grid too small for the requested sample");
  }
  rng::Xoshiro256ss gen(seed);
  std::set<Cell> picked;
  while (picked.size() < n) {
    Cell c{std::uint32_t(gen.below(xi_bound)), std::uint32_t(gen.below(M))};
    picked.insert(c);
  }
  return std::vector<Cell>(picked.begin(), picked.end());
}

}  // namespace au::star
