#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "epcr/graph.hpp"
#include "epcr/pca.hpp"

namespace epcr {

enum class ReductionTarget { UndirectedCycle, DirectedCycle };

namespace detail {

inline std::string repeat(char c, std::size_t times) { return std::string(times, c); }

// Concatenates block(x[0]) block(x[1]) ... for one PCA string.
template <typename Block>
std::string expand(const PeriodString& x, Block&& block) {
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) out += block(x[i] ? '1' : '0');
  return out;
}

}  // namespace detail

// Undirected cycle l_0 - ... - l_m - r_0 - ... - r_m - l_0 with l_j = j and
// r_j = m + 1 + j. Every presence string has length divisible by 2m + 3.
inline EdgePeriodicGraph reduce_pca_to_undirected_cycle(const PcaInstance& x) {
  using detail::repeat;
  const std::size_t m = x.strings.size();
  const auto left = [](std::size_t j) { return static_cast<VertexId>(j); };
  const auto right = [m](std::size_t j) { return static_cast<VertexId>(m + 1 + j); };
  const auto block = [m](char c) { return repeat('1', m) + "00" + repeat(c, m) + "1"; };

  std::vector<Edge> edges;
  for (std::size_t j = 1; j <= m; ++j) {
    const PeriodString tau(detail::expand(x.strings[j - 1], block));
    edges.push_back({left(j - 1), left(j), tau});
    edges.push_back({right(j - 1), right(j), tau});
  }
  edges.push_back({left(0), right(m), PeriodString(repeat('0', m) + "01" + repeat('0', m) + "1")});
  edges.push_back({left(m), right(0), PeriodString(repeat('0', m) + "10" + repeat('0', m) + "1")});
  return EdgePeriodicGraph(2 * m + 2, false, std::move(edges));
}

// Directed cycle v_0 -> ... -> v_m -> s -> v_0 with v_j = j and s = m + 1.
// Every presence string has length divisible by 2m + 2.
inline EdgePeriodicGraph reduce_pca_to_directed_cycle(const PcaInstance& x) {
  using detail::repeat;
  const std::size_t m = x.strings.size();
  const auto s = static_cast<VertexId>(m + 1);
  const auto block = [m](char c) { return repeat(c, m) + "0" + repeat('1', m + 1); };

  std::vector<Edge> edges;
  for (std::size_t j = 1; j <= m; ++j)
    edges.push_back({static_cast<VertexId>(j - 1), static_cast<VertexId>(j),
                     PeriodString(detail::expand(x.strings[j - 1], block))});
  edges.push_back({static_cast<VertexId>(m), s, PeriodString(repeat('0', m) + "1" + repeat('0', m + 1))});
  edges.push_back({s, 0, PeriodString(repeat('0', 2 * m + 1) + "1")});
  return EdgePeriodicGraph(m + 2, true, std::move(edges));
}

inline std::size_t reduction_block_length(ReductionTarget target, std::size_t m) {
  return target == ReductionTarget::UndirectedCycle ? 2 * m + 3 : 2 * m + 2;
}

inline EdgePeriodicGraph reduce(const PcaInstance& x, ReductionTarget target) {
  return target == ReductionTarget::UndirectedCycle ? reduce_pca_to_undirected_cycle(x)
                                                    : reduce_pca_to_directed_cycle(x);
}

// Comment lines recording the source strings and block length.
inline std::vector<std::string> reduction_header(const PcaInstance& x, ReductionTarget target) {
  std::string xs;
  for (const auto& s : x.strings) xs += (xs.empty() ? "" : " ") + s.str();
  return {std::string("reduced from PCA, target ") +
              (target == ReductionTarget::UndirectedCycle ? "undirected-cycle" : "directed-cycle"),
          "X = " + xs,
          "q = " + std::to_string(reduction_block_length(target, x.strings.size()))};
}

}  // namespace epcr
