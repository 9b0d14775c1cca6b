#pragma once

// Test-only reference implementations. Nothing here shares code with the
// solvers beyond the graph model and successors().

#include <cstdint>
#include <vector>

#include "epcr/game.hpp"
#include "epcr/graph.hpp"

namespace epcr::oracle {

// Least fixed point by repeated full sweeps: a cop turn joins once some
// successor is in, a robber turn once all are. Indexed [t][turn][cop][robber].
struct BruteForce {
  std::size_t n;
  std::uint64_t lcm;
  std::vector<char> member;

  bool contains(const Configuration& c) const { return member[slot(c)] != 0; }

  std::size_t slot(const Configuration& c) const {
    return ((c.time * 2 + (c.turn == Turn::RobberToMove ? 1 : 0)) * n + c.cop) * n + c.robber;
  }

  std::vector<VertexId> winning_starts() const {
    std::vector<VertexId> out;
    for (VertexId c = 0; c < n; ++c) {
      bool all = true;
      for (VertexId r = 0; r < n; ++r) all = all && contains({c, r, Turn::CopToMove, 0});
      if (all) out.push_back(c);
    }
    return out;
  }
};

inline BruteForce brute_force(const EdgePeriodicGraph& g) {
  BruteForce bf{g.vertex_count(), lcm_u64(period_profile(g)), {}};
  std::vector<Configuration> all;
  for (std::uint64_t t = 0; t < bf.lcm; ++t)
    for (Turn turn : {Turn::CopToMove, Turn::RobberToMove})
      for (VertexId c = 0; c < bf.n; ++c)
        for (VertexId r = 0; r < bf.n; ++r) all.push_back({c, r, turn, t});
  bf.member.assign(all.size(), 0);
  std::vector<std::vector<Configuration>> next(all.size());
  for (const auto& x : all) next[bf.slot(x)] = successors(g, x, bf.lcm);

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& x : all) {
      const auto s = bf.slot(x);
      if (bf.member[s]) continue;
      bool in = x.cop == x.robber;
      if (!in) {
        if (x.turn == Turn::CopToMove) {
          for (const auto& y : next[s]) in = in || bf.contains(y);
        } else {
          in = true;
          for (const auto& y : next[s]) in = in && bf.contains(y);
        }
      }
      if (in) {
        bf.member[s] = 1;
        changed = true;
      }
    }
  }
  return bf;
}

}  // namespace epcr::oracle
