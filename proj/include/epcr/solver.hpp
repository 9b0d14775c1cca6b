#pragma once

#include <algorithm>
#include <barrier>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "epcr/errors.hpp"
#include "epcr/game.hpp"
#include "epcr/graph.hpp"

namespace epcr {

struct SolverStats {
  std::uint64_t iterations = 0;        // fixpoint: attractor layers; streaming: levels swept
  std::uint64_t cells = 0;             // configurations (fixpoint) or cells per level (streaming)
  std::uint64_t peak_resident_levels = 0;
};

struct Outcome {
  bool cop_winning = false;
  std::vector<VertexId> winning_starts;
  std::uint64_t rounds_bound = 0;  // n^2 * lcm
  SolverStats stats;
  std::optional<Trace> witness;
};

// Cop-winning configurations over one period, with the attractor layer in
// which each entered. Layer 0 holds the capture configurations.
class WinSet {
public:
  static constexpr std::uint32_t kOutside = std::numeric_limits<std::uint32_t>::max();

  WinSet(std::size_t n, std::uint64_t lcm) : n_(n), lcm_(lcm), rank_(2 * n * n * lcm, kOutside) {}

  std::size_t vertex_count() const noexcept { return n_; }
  std::uint64_t lcm() const noexcept { return lcm_; }
  std::size_t size() const noexcept { return rank_.size(); }

  std::size_t index(const Configuration& c) const noexcept {
    return ((static_cast<std::size_t>(c.time % lcm_) * 2 + static_cast<std::size_t>(c.turn)) * n_ +
            c.cop) * n_ + c.robber;
  }

  Configuration configuration(std::size_t index) const noexcept {
    const auto robber = static_cast<VertexId>(index % n_);
    index /= n_;
    const auto cop = static_cast<VertexId>(index % n_);
    index /= n_;
    const auto turn = static_cast<Turn>(index % 2);
    return {cop, robber, turn, index / 2};
  }

  bool contains(const Configuration& c) const noexcept { return rank_[index(c)] != kOutside; }

  std::optional<std::uint32_t> rank(const Configuration& c) const noexcept {
    const auto r = rank_[index(c)];
    if (r == kOutside) return std::nullopt;
    return r;
  }

  std::uint32_t raw_rank(std::size_t index) const noexcept { return rank_[index]; }
  void set_rank(std::size_t index, std::uint32_t r) noexcept { rank_[index] = r; }

  // Cop starts from which every robber start lies in the set at time 0.
  std::vector<VertexId> winning_starts() const {
    std::vector<VertexId> out;
    for (VertexId c = 0; c < n_; ++c) {
      bool all = true;
      for (VertexId r = 0; r < n_ && all; ++r) all = contains({c, r, Turn::CopToMove, 0});
      if (all) out.push_back(c);
    }
    return out;
  }

private:
  std::size_t n_;
  std::uint64_t lcm_;
  std::vector<std::uint32_t> rank_;
};

struct FixpointOptions {
  std::uint64_t budget = std::uint64_t{1} << 26;  // configurations
};

struct FixpointResult {
  Outcome outcome;
  WinSet winset;
};

namespace detail {

inline void require_vertices(const EdgePeriodicGraph& g) {
  if (g.vertex_count() == 0) throw std::invalid_argument("graph has no vertices");
}

// presence[t * |E| + e] for t in [0, lcm).
inline std::vector<char> presence_table(const EdgePeriodicGraph& g, std::uint64_t lcm) {
  const auto m = g.edges().size();
  std::vector<char> table(static_cast<std::size_t>(lcm) * m);
  for (std::uint64_t t = 0; t < lcm; ++t)
    for (std::size_t e = 0; e < m; ++e) table[t * m + e] = g.edge(e).present(t);
  return table;
}

}  // namespace detail

// Backward attractor on the cyclic configuration graph. Configurations are
// processed in FIFO order, so the rank of a member is the layer it entered:
// cop turns take 1 + the least successor rank, robber turns 1 + the greatest.
inline FixpointResult solve_fixpoint(const EdgePeriodicGraph& g, const FixpointOptions& opts = {}) {
  detail::require_vertices(g);
  const auto profile = period_profile(g);
  const BigInt n = g.vertex_count();
  const BigInt demand = 2 * n * n * profile.lcm;
  const std::uint64_t cap = std::min<std::uint64_t>(opts.budget, WinSet::kOutside - 1);
  if (demand > BigInt(cap)) throw BudgetExceeded(demand.str(), std::to_string(cap), "configuration graph");

  const std::uint64_t lcm = profile.lcm.convert_to<std::uint64_t>();
  const std::size_t nv = g.vertex_count();
  const std::size_t m = g.edges().size();
  const auto present = detail::presence_table(g, lcm);
  auto is_present = [&](std::uint64_t t, std::uint32_t e) { return present[t * m + e] != 0; };

  WinSet win(nv, lcm);
  // Robber-turn configurations: number of successors not yet known to be winning.
  std::vector<std::uint32_t> pending(win.size(), 0);
  for (std::uint64_t t = 0; t < lcm; ++t)
    for (VertexId r = 0; r < nv; ++r) {
      std::uint32_t moves = 1;
      for (const Arc& a : g.moves_from(r)) moves += is_present(t, a.edge);
      for (VertexId c = 0; c < nv; ++c) pending[win.index({c, r, Turn::RobberToMove, t})] = moves;
    }

  std::deque<std::size_t> queue;
  for (std::uint64_t t = 0; t < lcm; ++t)
    for (VertexId v = 0; v < nv; ++v)
      for (Turn turn : {Turn::CopToMove, Turn::RobberToMove}) {
        const auto i = win.index({v, v, turn, t});
        win.set_rank(i, 0);
        queue.push_back(i);
      }

  std::uint32_t max_rank = 0;
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    const std::uint32_t k = win.raw_rank(i);
    max_rank = std::max(max_rank, k);
    const Configuration x = win.configuration(i);

    if (x.turn == Turn::CopToMove) {
      // Robber moves at time t-1 that end in x.
      const std::uint64_t prev = (x.time + lcm - 1) % lcm;
      auto relax = [&](VertexId from) {
        const auto p = win.index({x.cop, from, Turn::RobberToMove, prev});
        if (win.raw_rank(p) != WinSet::kOutside) return;
        if (--pending[p] == 0) {
          win.set_rank(p, k + 1);
          queue.push_back(p);
        }
      };
      relax(x.robber);
      for (const Arc& a : g.moves_into(x.robber))
        if (is_present(prev, a.edge)) relax(a.to);
    } else {
      auto relax = [&](VertexId from) {
        const auto p = win.index({from, x.robber, Turn::CopToMove, x.time});
        if (win.raw_rank(p) != WinSet::kOutside) return;
        win.set_rank(p, k + 1);
        queue.push_back(p);
      };
      relax(x.cop);
      for (const Arc& a : g.moves_into(x.cop))
        if (is_present(x.time, a.edge)) relax(a.to);
    }
  }

  Outcome out;
  out.winning_starts = win.winning_starts();
  out.cop_winning = !out.winning_starts.empty();
  out.rounds_bound = static_cast<std::uint64_t>(nv) * nv * lcm;
  out.stats.iterations = static_cast<std::uint64_t>(max_rank) + 1;
  out.stats.cells = win.size();
  out.stats.peak_resident_levels = lcm;
  return {std::move(out), std::move(win)};
}

// One time level of the unrolled configuration DAG: which cop-turn and
// robber-turn configurations are attractors, indexed cop * n + robber.
struct AttractorLevel {
  std::uint64_t index = 0;
  std::size_t n = 0;
  std::vector<char> cop_turn;
  std::vector<char> robber_turn;

  AttractorLevel() = default;
  explicit AttractorLevel(std::size_t vertices)
      : n(vertices), cop_turn(vertices * vertices, 0), robber_turn(vertices * vertices, 0) {}

  bool cop_wins(VertexId cop, VertexId robber) const { return cop_turn[cop * n + robber] != 0; }
};

struct StreamingOptions {
  std::uint64_t level_budget = std::uint64_t{1} << 30;  // n^2 * lcm
  unsigned threads = 1;
};

struct SweepResult {
  AttractorLevel level0;
  SolverStats stats;
  std::uint64_t lcm = 1;
};

// Sweeps the levels n^2*lcm - 1 .. 0 of the unrolled configuration graph,
// holding only the level being computed and the one after it.
inline SweepResult streaming_sweep(const EdgePeriodicGraph& g, const StreamingOptions& opts = {}) {
  detail::require_vertices(g);
  const auto profile = period_profile(g);
  const BigInt nb = g.vertex_count();
  const BigInt levels_big = nb * nb * profile.lcm;
  if (levels_big > BigInt(opts.level_budget))
    throw BudgetExceeded(levels_big.str(), std::to_string(opts.level_budget), "level sweep");

  const std::uint64_t lcm = profile.lcm.convert_to<std::uint64_t>();
  const std::uint64_t levels = levels_big.convert_to<std::uint64_t>();
  const std::size_t n = g.vertex_count();
  const std::size_t m = g.edges().size();

  // Two resident levels, selected by parity of the level index.
  AttractorLevel buf[2] = {AttractorLevel(n), AttractorLevel(n)};
  std::vector<char> present(m, 0);

  const unsigned threads =
      static_cast<unsigned>(std::clamp<std::size_t>(opts.threads == 0 ? 1 : opts.threads, 1, n));

  auto load_presence = [&](std::uint64_t t) {
    for (std::size_t e = 0; e < m; ++e) present[e] = g.edge(e).present(t % lcm);
  };

  // Robber-turn table of level t for cop rows [lo, hi).
  auto robber_rows = [&](std::uint64_t t, std::size_t lo, std::size_t hi) {
    AttractorLevel& cur = buf[t & 1];
    const AttractorLevel& next = buf[(t + 1) & 1];
    const bool terminal = (t + 1 == levels);
    for (std::size_t c = lo; c < hi; ++c)
      for (std::size_t r = 0; r < n; ++r) {
        char win = (c == r);
        if (!win && !terminal) {
          win = next.cop_turn[c * n + r];
          for (const Arc& a : g.moves_from(static_cast<VertexId>(r))) {
            if (!win) break;
            if (present[a.edge]) win = next.cop_turn[c * n + a.to];
          }
        }
        cur.robber_turn[c * n + r] = win;
      }
  };

  // Cop-turn table of level t; reads robber-turn rows of neighbouring cops.
  auto cop_rows = [&](std::uint64_t t, std::size_t lo, std::size_t hi) {
    AttractorLevel& cur = buf[t & 1];
    for (std::size_t c = lo; c < hi; ++c)
      for (std::size_t r = 0; r < n; ++r) {
        char win = (c == r) || cur.robber_turn[c * n + r];
        for (const Arc& a : g.moves_from(static_cast<VertexId>(c))) {
          if (win) break;
          if (present[a.edge]) win = cur.robber_turn[a.to * n + r];
        }
        cur.cop_turn[c * n + r] = win;
      }
    if (lo == 0) cur.index = t;
  };

  if (threads == 1) {
    for (std::uint64_t t = levels; t-- > 0;) {
      load_presence(t);
      robber_rows(t, 0, n);
      cop_rows(t, 0, n);
    }
  } else {
    // Rows of a level are independent within each half; barriers separate
    // the halves and the levels so the result matches the sequential sweep.
    std::uint64_t shared_t = levels - 1;
    load_presence(shared_t);
    std::barrier after_robber(threads);
    std::barrier after_cop(threads, [&]() noexcept {
      if (shared_t > 0) load_presence(--shared_t);
    });
    auto worker = [&](unsigned id) {
      const std::size_t lo = n * id / threads;
      const std::size_t hi = n * (id + 1) / threads;
      for (std::uint64_t t = levels; t-- > 0;) {
        robber_rows(t, lo, hi);
        after_robber.arrive_and_wait();
        cop_rows(t, lo, hi);
        after_cop.arrive_and_wait();
      }
    };
    std::vector<std::jthread> pool;
    for (unsigned id = 1; id < threads; ++id) pool.emplace_back(worker, id);
    worker(0);
  }

  SweepResult result;
  result.level0 = std::move(buf[0]);
  result.lcm = lcm;
  result.stats.iterations = levels;
  result.stats.cells = n * n;
  result.stats.peak_resident_levels = 2;
  return result;
}

inline Outcome solve_streaming(const EdgePeriodicGraph& g, const StreamingOptions& opts = {}) {
  SweepResult sweep = streaming_sweep(g, opts);
  const std::size_t n = g.vertex_count();
  Outcome out;
  for (VertexId c = 0; c < n; ++c) {
    bool all = true;
    for (VertexId r = 0; r < n && all; ++r) all = sweep.level0.cop_wins(c, r);
    if (all) out.winning_starts.push_back(c);
  }
  out.cop_winning = !out.winning_starts.empty();
  out.rounds_bound = static_cast<std::uint64_t>(n) * n * sweep.lcm;
  out.stats = sweep.stats;
  return out;
}

// Positional attractor strategy: from a winning cop turn, step to the
// successor of least rank (smallest vertex id on ties).
class CopAttractorStrategy {
public:
  CopAttractorStrategy(const EdgePeriodicGraph& g, const WinSet& win, VertexId start)
      : g_(&g), win_(&win), start_(start) {}

  VertexId start() const { return start_; }

  VertexId move(const Configuration& c) const {
    if (c.turn != Turn::CopToMove || !win_->contains(c))
      throw std::logic_error("cop strategy queried outside the winning set");
    if (c.captured()) return c.cop;
    VertexId best = c.cop;
    std::uint32_t best_rank = win_->raw_rank(win_->index({c.cop, c.robber, Turn::RobberToMove, c.time}));
    for (const Arc& a : g_->moves_from(c.cop)) {
      if (!g_->edge(a.edge).present(c.time)) continue;
      const auto r = win_->raw_rank(win_->index({a.to, c.robber, Turn::RobberToMove, c.time}));
      if (r < best_rank || (r == best_rank && a.to < best)) {
        best = a.to;
        best_rank = r;
      }
    }
    return best;
  }

private:
  const EdgePeriodicGraph* g_;
  const WinSet* win_;
  VertexId start_;
};

// Requires a cop-winning WinSet; starts from `start` or the smallest winning start.
inline CopAttractorStrategy extract_cop_strategy(const EdgePeriodicGraph& g, const WinSet& win,
                                                 std::optional<VertexId> start = std::nullopt) {
  const auto starts = win.winning_starts();
  if (starts.empty()) throw std::logic_error("no cop-winning start: graph is robber-winning");
  if (start && std::find(starts.begin(), starts.end(), *start) == starts.end())
    throw std::logic_error("vertex " + std::to_string(*start) + " is not a cop-winning start");
  return CopAttractorStrategy(g, win, start.value_or(starts.front()));
}

// Dual of the attractor strategy: stay outside the winning set when possible,
// otherwise delay capture by moving to the successor of greatest rank.
class RobberBestResponse {
public:
  RobberBestResponse(const EdgePeriodicGraph& g, const WinSet& win, std::optional<VertexId> start)
      : g_(&g), win_(&win), start_(start) {}

  VertexId start(VertexId cop_start) const {
    if (start_) return *start_;
    VertexId best = cop_start;
    std::uint64_t best_score = 0;
    for (VertexId r = 0; r < win_->vertex_count(); ++r) {
      const std::uint64_t s = score({cop_start, r, Turn::CopToMove, 0});
      if (s > best_score) {
        best = r;
        best_score = s;
      }
    }
    return best;
  }

  VertexId move(const Configuration& c) const {
    const std::uint64_t next = (c.time + 1) % win_->lcm();
    VertexId best = c.robber;
    std::uint64_t best_score = score({c.cop, c.robber, Turn::CopToMove, next});
    for (const Arc& a : g_->moves_from(c.robber)) {
      if (!g_->edge(a.edge).present(c.time)) continue;
      const std::uint64_t s = score({c.cop, a.to, Turn::CopToMove, next});
      if (s > best_score || (s == best_score && a.to < best)) {
        best = a.to;
        best_score = s;
      }
    }
    return best;
  }

private:
  // Outside the set beats every rank.
  std::uint64_t score(const Configuration& c) const {
    const auto r = win_->raw_rank(win_->index(c));
    return r == WinSet::kOutside ? std::numeric_limits<std::uint64_t>::max() : r;
  }

  const EdgePeriodicGraph* g_;
  const WinSet* win_;
  std::optional<VertexId> start_;
};

inline RobberBestResponse robber_best_response(const EdgePeriodicGraph& g, const WinSet& win,
                                               std::optional<VertexId> start = std::nullopt) {
  return RobberBestResponse(g, win, start);
}

// Strategies keep references; refuse temporaries.
CopAttractorStrategy extract_cop_strategy(const EdgePeriodicGraph&&, const WinSet&,
                                          std::optional<VertexId> = std::nullopt) = delete;
CopAttractorStrategy extract_cop_strategy(const EdgePeriodicGraph&, const WinSet&&,
                                          std::optional<VertexId> = std::nullopt) = delete;
RobberBestResponse robber_best_response(const EdgePeriodicGraph&&, const WinSet&,
                                        std::optional<VertexId> = std::nullopt) = delete;
RobberBestResponse robber_best_response(const EdgePeriodicGraph&, const WinSet&&,
                                        std::optional<VertexId> = std::nullopt) = delete;

// For every cop start, a robber start outside the winning set. Together with
// the closure of the complement of `win` this certifies robber-winning.
struct EvasionCertificate {
  std::vector<VertexId> robber_start;  // indexed by cop start
};

inline std::optional<EvasionCertificate> evasion_certificate(const WinSet& win) {
  EvasionCertificate cert;
  for (VertexId c = 0; c < win.vertex_count(); ++c) {
    std::optional<VertexId> escape;
    for (VertexId r = 0; r < win.vertex_count() && !escape; ++r)
      if (!win.contains({c, r, Turn::CopToMove, 0})) escape = r;
    if (!escape) return std::nullopt;
    cert.robber_start.push_back(*escape);
  }
  return cert;
}

// Checks the certificate against the game rules directly: the complement of
// `win` holds no capture, is closed under every cop move, and offers the
// robber at least one move that stays inside it.
inline bool verify_evasion_certificate(const EdgePeriodicGraph& g, const WinSet& win,
                                       const EvasionCertificate& cert) {
  const std::size_t n = g.vertex_count();
  if (cert.robber_start.size() != n) return false;
  for (VertexId c = 0; c < n; ++c)
    if (cert.robber_start[c] >= n || win.contains({c, cert.robber_start[c], Turn::CopToMove, 0}))
      return false;
  for (std::size_t i = 0; i < win.size(); ++i) {
    if (win.raw_rank(i) != WinSet::kOutside) continue;
    const Configuration x = win.configuration(i);
    if (x.captured()) return false;
    const auto next = successors(g, x, win.lcm());
    if (x.turn == Turn::CopToMove) {
      for (const auto& y : next)
        if (win.contains(y)) return false;
    } else {
      if (std::all_of(next.begin(), next.end(), [&](const auto& y) { return win.contains(y); }))
        return false;
    }
  }
  return true;
}

// Cop-winning: attractor cop vs. best-response robber, ending in capture.
// Robber-winning: best-response robber evading a cop parked on vertex 0 for
// 2 * n^2 * lcm rounds.
inline Trace witness_trace(const EdgePeriodicGraph& g, const WinSet& win) {
  const std::uint64_t bound = static_cast<std::uint64_t>(g.vertex_count()) * g.vertex_count() * win.lcm();
  auto robber = robber_best_response(g, win);
  const auto starts = win.winning_starts();
  if (!starts.empty()) {
    auto cop = extract_cop_strategy(g, win);
    return simulate(g, cop, robber, bound);
  }
  struct PassingCop {
    VertexId v;
    VertexId start() const { return v; }
    VertexId move(const Configuration& c) const { return c.cop; }
  } cop{0};
  return simulate(g, cop, robber, 2 * bound);
}

}  // namespace epcr
