#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "epcr/graph.hpp"

namespace epcr {

enum class ChaseVerdict { Caught, Evaded };

struct StartReport {
  VertexId cop_start;
  VertexId robber_start;
  ChaseVerdict verdict;
  std::uint64_t rounds;                      // rounds simulated
  std::optional<std::uint64_t> capture_round;
};

struct ChaseReport {
  std::vector<StartReport> starts;  // ordered by cop start
  bool cop_winning = false;
  std::uint64_t horizon = 0;
};

// Successor along the single directed cycle of `g` and the edge leading there.
struct DirectedCycle {
  std::vector<VertexId> next;
  std::vector<VertexId> prev;
  std::vector<std::uint32_t> out_edge;
};

inline DirectedCycle directed_cycle(const EdgePeriodicGraph& g) {
  const std::size_t n = g.vertex_count();
  if (!g.directed()) throw std::invalid_argument("greedy chase needs a directed graph");
  if (n < 2 || g.edges().size() != n) throw std::invalid_argument("graph is not a directed cycle");
  DirectedCycle cyc{std::vector<VertexId>(n), std::vector<VertexId>(n), std::vector<std::uint32_t>(n)};
  for (VertexId v = 0; v < n; ++v) {
    if (g.moves_from(v).size() != 1 || g.moves_into(v).size() != 1)
      throw std::invalid_argument("graph is not a directed cycle");
    cyc.next[v] = g.moves_from(v)[0].to;
    cyc.out_edge[v] = g.moves_from(v)[0].edge;
    cyc.prev[v] = g.moves_into(v)[0].to;
  }
  VertexId v = 0;
  for (std::size_t steps = 1; steps < n; ++steps) {
    v = cyc.next[v];
    if (v == 0) throw std::invalid_argument("graph is not a single directed cycle");
  }
  return cyc;
}

// Both players run forward whenever their edge is present; the robber starts
// directly behind the cop and never steps onto the cop's vertex.
inline StartReport chase_from(const EdgePeriodicGraph& g, const DirectedCycle& cyc, VertexId start,
                              std::uint64_t horizon) {
  StartReport rep{start, cyc.prev[start], ChaseVerdict::Evaded, 0, std::nullopt};
  VertexId cop = start;
  VertexId robber = rep.robber_start;
  for (std::uint64_t t = 0; t < horizon; ++t) {
    rep.rounds = t + 1;
    if (g.edge(cyc.out_edge[cop]).present(t)) cop = cyc.next[cop];
    if (cop == robber) {
      rep.verdict = ChaseVerdict::Caught;
      rep.capture_round = t;
      return rep;
    }
    if (g.edge(cyc.out_edge[robber]).present(t) && cyc.next[robber] != cop) robber = cyc.next[robber];
  }
  return rep;
}

inline std::uint64_t default_chase_horizon(const EdgePeriodicGraph& g) {
  const BigInt n = g.vertex_count();
  const BigInt h = n * n * period_profile(g).lcm;
  if (h > BigInt(std::numeric_limits<std::uint64_t>::max()))
    throw BudgetExceeded(h.str(), std::to_string(std::numeric_limits<std::uint64_t>::max()), "chase horizon");
  return h.convert_to<std::uint64_t>();
}

inline ChaseReport greedy_directed_chase(const EdgePeriodicGraph& g,
                                         std::optional<std::uint64_t> horizon = std::nullopt,
                                         unsigned threads = 1) {
  const DirectedCycle cyc = directed_cycle(g);
  ChaseReport report;
  report.horizon = horizon.value_or(default_chase_horizon(g));
  const std::size_t n = g.vertex_count();
  report.starts.resize(n);

  const unsigned workers = static_cast<unsigned>(std::clamp<std::size_t>(threads == 0 ? 1 : threads, 1, n));
  auto run = [&](unsigned id) {
    for (std::size_t v = id; v < n; v += workers)
      report.starts[v] = chase_from(g, cyc, static_cast<VertexId>(v), report.horizon);
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned id = 1; id < workers; ++id) pool.emplace_back(run, id);
    run(0);
  }
  report.cop_winning = std::any_of(report.starts.begin(), report.starts.end(),
                                   [](const StartReport& s) { return s.verdict == ChaseVerdict::Caught; });
  return report;
}

}  // namespace epcr
