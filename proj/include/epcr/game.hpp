#pragma once

#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "epcr/errors.hpp"
#include "epcr/graph.hpp"

namespace epcr {

enum class Turn : std::uint8_t { CopToMove = 0, RobberToMove = 1 };

// One node of the configuration graph. `time` is reduced mod the global period.
// Capture is the derived predicate cop == robber.
struct Configuration {
  VertexId cop;
  VertexId robber;
  Turn turn;
  std::uint64_t time;

  bool captured() const noexcept { return cop == robber; }

  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

// Cop moves stay in time step t; the robber's move closes the round and
// advances to t + 1. Passing is always legal, so the result is never empty.
inline std::vector<Configuration> successors(const EdgePeriodicGraph& g, const Configuration& c,
                                             std::uint64_t lcm) {
  std::vector<Configuration> out;
  if (c.turn == Turn::CopToMove) {
    out.push_back({c.cop, c.robber, Turn::RobberToMove, c.time});
    for (const Arc& a : g.moves_from(c.cop))
      if (g.edge(a.edge).present(c.time)) out.push_back({a.to, c.robber, Turn::RobberToMove, c.time});
  } else {
    const std::uint64_t next = (c.time + 1) % lcm;
    out.push_back({c.cop, c.robber, Turn::CopToMove, next});
    for (const Arc& a : g.moves_from(c.robber))
      if (g.edge(a.edge).present(c.time)) out.push_back({c.cop, a.to, Turn::CopToMove, next});
  }
  return out;
}

inline std::vector<Configuration> successors(const EdgePeriodicGraph& g, const Configuration& c) {
  return successors(g, c, lcm_u64(period_profile(g)));
}

// A cop policy commits to a start vertex, then answers each cop-turn configuration
// with the vertex it moves to. Policies may keep state between calls.
template <typename S>
concept CopPolicy = requires(S s, const Configuration& c) {
  { s.start() } -> std::convertible_to<VertexId>;
  { s.move(c) } -> std::convertible_to<VertexId>;
};

// The robber sees the cop's start before committing to its own.
template <typename S>
concept RobberPolicy = requires(S s, VertexId cop_start, const Configuration& c) {
  { s.start(cop_start) } -> std::convertible_to<VertexId>;
  { s.move(c) } -> std::convertible_to<VertexId>;
};

struct CopStrategy {
  std::function<VertexId()> on_start;
  std::function<VertexId(const Configuration&)> on_move;

  VertexId start() { return on_start(); }
  VertexId move(const Configuration& c) { return on_move(c); }
};

struct RobberStrategy {
  std::function<VertexId(VertexId)> on_start;
  std::function<VertexId(const Configuration&)> on_move;

  VertexId start(VertexId cop_start) { return on_start(cop_start); }
  VertexId move(const Configuration& c) { return on_move(c); }
};

struct TraceRound {
  std::uint64_t round;
  VertexId cop;                   // after the cop's move
  std::optional<VertexId> robber;  // after the robber's move; empty = captured

  friend bool operator==(const TraceRound&, const TraceRound&) = default;
};

struct Trace {
  VertexId cop_start = 0;
  VertexId robber_start = 0;
  std::vector<TraceRound> rounds;
  bool captured = false;

  // Round in which capture happened; empty if no capture or if the robber
  // started on the cop.
  std::optional<std::uint64_t> capture_round() const {
    if (!captured || rounds.empty()) return std::nullopt;
    return rounds.back().round;
  }

  friend bool operator==(const Trace&, const Trace&) = default;
};

// Plays up to `horizon` rounds starting at time 0. Every move is checked
// against the snapshot of its round.
template <CopPolicy Cop, RobberPolicy Robber>
Trace simulate(const EdgePeriodicGraph& g, Cop& cop, Robber& robber, std::uint64_t horizon) {
  const std::uint64_t lcm = lcm_u64(period_profile(g));
  const auto n = g.vertex_count();
  auto check = [&](VertexId from, VertexId to, std::uint64_t t, const char* who) {
    if (to >= n) throw IllegalMove(t, who, "vertex " + std::to_string(to) + " does not exist");
    if (to != from && !g.can_step(from, to, t))
      throw IllegalMove(t, who,
                        "no edge " + std::to_string(from) + "->" + std::to_string(to) + " present");
  };

  Trace trace;
  trace.cop_start = static_cast<VertexId>(cop.start());
  if (trace.cop_start >= n) throw IllegalMove(0, "cop", "start vertex does not exist");
  trace.robber_start = static_cast<VertexId>(robber.start(trace.cop_start));
  if (trace.robber_start >= n) throw IllegalMove(0, "robber", "start vertex does not exist");
  if (trace.cop_start == trace.robber_start) {
    trace.captured = true;
    return trace;
  }

  VertexId c = trace.cop_start;
  VertexId r = trace.robber_start;
  for (std::uint64_t t = 0; t < horizon; ++t) {
    const std::uint64_t phase = t % lcm;
    const auto next_c = static_cast<VertexId>(cop.move(Configuration{c, r, Turn::CopToMove, phase}));
    check(c, next_c, t, "cop");
    c = next_c;
    if (c == r) {
      trace.rounds.push_back({t, c, std::nullopt});
      trace.captured = true;
      return trace;
    }
    const auto next_r =
        static_cast<VertexId>(robber.move(Configuration{c, r, Turn::RobberToMove, phase}));
    check(r, next_r, t, "robber");
    r = next_r;
    if (c == r) {
      trace.rounds.push_back({t, c, std::nullopt});
      trace.captured = true;
      return trace;
    }
    trace.rounds.push_back({t, c, r});
  }
  return trace;
}

inline std::string format_trace(const Trace& trace) {
  std::ostringstream os;
  os << "# start cop=" << trace.cop_start << " robber=" << trace.robber_start << '\n';
  for (const auto& r : trace.rounds) {
    os << "t=" << r.round << " cop=" << r.cop << " robber=";
    if (r.robber)
      os << *r.robber;
    else
      os << "CAPTURED";
    os << '\n';
  }
  return os.str();
}

}  // namespace epcr
