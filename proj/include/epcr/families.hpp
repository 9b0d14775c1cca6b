#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "epcr/game.hpp"
#include "epcr/graph.hpp"

namespace epcr {

namespace detail {

inline void require_family_k(int k) {
  if (k < 2) throw std::invalid_argument("family parameter k must be at least 2, got " + std::to_string(k));
}

inline EdgePeriodicGraph cycle_from_labels(std::size_t n, const std::map<std::size_t, std::string>& special) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    auto it = special.find(i);
    edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % n),
                     PeriodString(it == special.end() ? "1" : it->second)});
  }
  return EdgePeriodicGraph(n, false, std::move(edges));
}

// Presence strings of the 4k-1 cycle keyed by the clockwise edge (i, i+1).
// At k = 2 the vertices 2k and 3k-2 coincide and the two special edges touch.
inline std::map<std::size_t, std::string> sharp_cycle_labels(int k) {
  const auto uk = static_cast<std::size_t>(k);
  std::map<std::size_t, std::string> labels;
  labels[0] = "1" + std::string(uk - 1, '0');
  labels[2 * uk - 1] = std::string(uk - 1, '0') + "1";
  labels[3 * uk - 2] = "1" + std::string(uk - 1, '0');
  return labels;
}

}  // namespace detail

// Cop-winning undirected cycle on 4k-1 vertices with lcm = max period = k.
// Vertex ids are clockwise distances from the cop's start 0.
inline EdgePeriodicGraph gen_cycle_l2(int k) {
  detail::require_family_k(k);
  return detail::cycle_from_labels(4 * static_cast<std::size_t>(k) - 1, detail::sharp_cycle_labels(k));
}

// gen_cycle_l2(k) with edge (1,2) relabelled (01)^(2^i), where k = 2^i * j
// and j is odd, so that lcm = 2k. The cop crosses that edge only at odd times.
inline EdgePeriodicGraph gen_cycle_l1(int k) {
  detail::require_family_k(k);
  auto labels = detail::sharp_cycle_labels(k);
  int pow2 = 1;
  while ((k / pow2) % 2 == 0) pow2 *= 2;
  std::string alternating;
  for (int i = 0; i < pow2; ++i) alternating += "01";
  labels[1] = alternating;
  return detail::cycle_from_labels(4 * static_cast<std::size_t>(k) - 1, labels);
}

inline EdgePeriodicGraph gen_family(int ell, int k) {
  if (ell == 1) return gen_cycle_l1(k);
  if (ell == 2) return gen_cycle_l2(k);
  throw std::invalid_argument("ell must be 1 or 2");
}

enum class Direction { Clockwise, Counterclockwise };

// One column of the chase table. `time` empty marks the start column;
// `robber` empty marks the capture.
struct Table1Column {
  std::optional<std::uint64_t> time;
  VertexId cop;
  std::optional<VertexId> robber;
};

// Chase-table positions for gen_cycle_l2(k), vertex ids taken mod 4k-1.
inline std::vector<Table1Column> table1_columns(int k, Direction dir) {
  detail::require_family_k(k);
  const long long K = k;
  const long long n = 4 * K - 1;
  const auto id = [n](long long signed_pos) { return static_cast<VertexId>(((signed_pos % n) + n) % n); };
  const auto at = [](long long t) { return std::optional<std::uint64_t>(static_cast<std::uint64_t>(t)); };
  const std::optional<VertexId> dead;

  if (dir == Direction::Clockwise) {
    return {
        {std::nullopt, id(0), id(2 * K - 1)},
        {at(0), id(1), id(2 * K - 1)},
        {at(K - 1), id(K), id(2 * K)},
        {at(2 * K - 3), id(2 * K - 2), id(3 * K - 2)},
        {at(2 * K - 2), id(2 * K - 1), id(3 * K - 2)},
        {at(2 * K - 1), id(2 * K), id(3 * K - 2)},
        {at(2 * K), id(2 * K + 1), id(3 * K - 1)},
        {at(3 * K - 3), id(3 * K - 2), id(4 * K - 4)},
        {at(3 * K), id(3 * K - 1), id(0)},
        {at(3 * K + 1), id(3 * K), id(0)},
        {at(4 * K - 1), id(4 * K - 2), id(0)},
        {at(4 * K), id(0), dead},
    };
  }
  return {
      {std::nullopt, id(0), id(-(2 * K - 1))},
      {at(K - 1), id(-K), id(-2 * K)},
      {at(K), id(-(K + 1)), id(-(2 * K + 1))},
      {at(2 * K - 2), id(-(2 * K - 1)), id(-(3 * K - 1))},
      {at(2 * K - 1), id(-2 * K), id(-3 * K)},
      {at(3 * K - 3), id(-(3 * K - 2)), id(-(4 * K - 2))},
      {at(3 * K), id(-(3 * K + 1)), id(0)},
      {at(4 * K - 3), id(-(4 * K - 2)), id(-(K - 3))},
      {at(4 * K), id(0), id(-K)},
      {at(5 * K - 1), id(-(K - 1)), id(-K)},
      {at(5 * K), id(-K), dead},
  };
}

// Cop for the chase table: starts on 0 and steps in `dir` whenever the next
// edge is present, otherwise waits.
class RunningCop {
public:
  RunningCop(const EdgePeriodicGraph& g, Direction dir) : g_(&g), dir_(dir) {}

  VertexId start() const { return 0; }

  VertexId move(const Configuration& c) const {
    const auto n = static_cast<VertexId>(g_->vertex_count());
    const VertexId next = dir_ == Direction::Clockwise ? (c.cop + 1) % n : (c.cop + n - 1) % n;
    return g_->can_step(c.cop, next, c.time) ? next : c.cop;
  }

private:
  const EdgePeriodicGraph* g_;
  Direction dir_;
};

// Robber replaying a table row: between listed columns it waits, then covers
// the remaining distance in the last rounds before the next column.
class ScriptedRobber {
public:
  ScriptedRobber(VertexId start, std::vector<VertexId> per_round)
      : start_(start), per_round_(std::move(per_round)) {}

  VertexId start(VertexId) const { return start_; }

  VertexId move(const Configuration& c) {
    const VertexId target = round_ < per_round_.size() ? per_round_[round_] : c.robber;
    ++round_;
    return target;
  }

  const std::vector<VertexId>& script() const noexcept { return per_round_; }

private:
  VertexId start_;
  std::vector<VertexId> per_round_;
  std::size_t round_ = 0;
};

// Scripted strategies reproducing one block of the chase table on gen_cycle_l2(k).
inline std::pair<RunningCop, ScriptedRobber> table1_strategies(const EdgePeriodicGraph& g, int k,
                                                               Direction dir) {
  const auto columns = table1_columns(k, dir);
  const auto n = static_cast<long long>(4 * k - 1);
  const long long step = dir == Direction::Clockwise ? 1 : -1;

  std::vector<std::pair<std::uint64_t, VertexId>> fixes;
  for (const auto& col : columns)
    if (col.time && col.robber) fixes.emplace_back(*col.time, *col.robber);
  std::stable_sort(fixes.begin(), fixes.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<VertexId> script;
  VertexId pos = *columns.front().robber;
  for (const auto& [time, target] : fixes) {
    if (time < script.size()) {
      if (script[time] != target) throw std::logic_error("chase table lists two robber positions at one time");
      continue;
    }
    const auto distance = static_cast<std::uint64_t>(
        (((static_cast<long long>(target) - static_cast<long long>(pos)) * step) % n + n) % n);
    const std::uint64_t rounds = time + 1 - script.size();  // rounds script.size() .. time
    if (distance > rounds) throw std::logic_error("chase table row moves the robber too fast");
    for (std::uint64_t i = 0; i < rounds; ++i) {
      if (rounds - i <= distance) pos = static_cast<VertexId>(((pos + step) % n + n) % n);
      script.push_back(pos);
    }
  }
  return {RunningCop(g, dir), ScriptedRobber(*columns.front().robber, std::move(script))};
}

namespace detail {

inline std::string random_bits(std::mt19937_64& rng, std::size_t max_period) {
  const std::size_t len = 1 + static_cast<std::size_t>(rng() % max_period);
  for (;;) {
    std::string bits(len, '0');
    for (auto& b : bits) b = (rng() & 1) ? '1' : '0';
    if (bits.find('1') != std::string::npos) return bits;
  }
}

}  // namespace detail

// Cycle 0 - 1 - ... - (n-1) - 0 with uniformly random presence strings of
// length at most max_period. Deterministic in the seed.
inline EdgePeriodicGraph random_cycle(std::size_t n, std::size_t max_period, std::uint64_t seed,
                                      bool directed = false) {
  if (n < 3) throw std::invalid_argument("random cycle needs at least 3 vertices");
  if (max_period < 1) throw std::invalid_argument("max_period must be at least 1");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % n),
                     PeriodString(detail::random_bits(rng, max_period))});
  return EdgePeriodicGraph(n, directed, std::move(edges));
}

// Random graph where each vertex pair (ordered when directed) carries an edge
// with probability `density`.
inline EdgePeriodicGraph random_graph(std::size_t n, double density, std::size_t max_period,
                                      bool directed, std::uint64_t seed) {
  if (max_period < 1) throw std::invalid_argument("max_period must be at least 1");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = directed ? 0 : u + 1; v < n; ++v) {
      if (u == v) continue;
      const double draw = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (draw < density)
        edges.push_back({u, v, PeriodString(detail::random_bits(rng, max_period))});
    }
  return EdgePeriodicGraph(n, directed, std::move(edges));
}

}  // namespace epcr
