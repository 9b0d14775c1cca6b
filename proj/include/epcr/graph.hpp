#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "epcr/errors.hpp"
#include "epcr/period_string.hpp"

namespace epcr {

using VertexId = std::uint32_t;
using BigInt = boost::multiprecision::cpp_int;

struct Edge {
  VertexId u;
  VertexId v;
  PeriodString tau;

  bool present(std::uint64_t t) const noexcept { return tau[t]; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

// One usable move out of (or into) a vertex along edge `edge`.
struct Arc {
  VertexId to;
  std::uint32_t edge;
};

// Edge-periodic graph with dense vertex ids 0..n-1. Immutable once built.
// Edges are canonicalized: undirected edges store u < v, and the edge list
// is sorted by (u, v).
class EdgePeriodicGraph {
public:
  EdgePeriodicGraph(std::size_t vertex_count, bool directed, std::vector<Edge> edges)
      : n_(vertex_count), directed_(directed), edges_(std::move(edges)) {
    if (n_ > std::numeric_limits<VertexId>::max())
      throw std::invalid_argument("too many vertices");
    for (auto& e : edges_) {
      if (e.u >= n_ || e.v >= n_)
        throw std::invalid_argument("edge " + std::to_string(e.u) + " " + std::to_string(e.v) +
                                    ": vertex id out of range");
      if (e.u == e.v) throw std::invalid_argument("self-loop on vertex " + std::to_string(e.u));
      if (!directed_ && e.u > e.v) std::swap(e.u, e.v);
    }
    std::stable_sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
      return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
      if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
        throw std::invalid_argument("duplicate edge " + std::to_string(edges_[i].u) + " " +
                                    std::to_string(edges_[i].v));
    }
    build_adjacency();
  }

  std::size_t vertex_count() const noexcept { return n_; }
  bool directed() const noexcept { return directed_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_.at(i); }

  // Arcs a token on `v` may move along (both directions when undirected).
  std::span<const Arc> moves_from(VertexId v) const {
    return {out_arcs_.data() + out_begin_[v], out_arcs_.data() + out_begin_[v + 1]};
  }
  // Arcs whose move ends on `v`; `to` is the origin of the move.
  std::span<const Arc> moves_into(VertexId v) const {
    return {in_arcs_.data() + in_begin_[v], in_arcs_.data() + in_begin_[v + 1]};
  }

  std::optional<std::size_t> find_edge(VertexId u, VertexId v) const {
    if (!directed_ && u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair(u, v),
                               [](const Edge& e, std::pair<VertexId, VertexId> key) {
                                 return std::pair(e.u, e.v) < key;
                               });
    if (it == edges_.end() || it->u != u || it->v != v) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
  }

  // True if a token on `from` may step to `to` at time t (passing is not a step).
  bool can_step(VertexId from, VertexId to, std::uint64_t t) const {
    for (const Arc& a : moves_from(from))
      if (a.to == to) return edges_[a.edge].present(t);
    return false;
  }

  friend bool operator==(const EdgePeriodicGraph& a, const EdgePeriodicGraph& b) {
    return a.n_ == b.n_ && a.directed_ == b.directed_ && a.edges_ == b.edges_;
  }

private:
  void build_adjacency() {
    std::vector<std::vector<Arc>> out(n_), in(n_);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto id = static_cast<std::uint32_t>(i);
      const Edge& e = edges_[i];
      out[e.u].push_back({e.v, id});
      in[e.v].push_back({e.u, id});
      if (!directed_) {
        out[e.v].push_back({e.u, id});
        in[e.u].push_back({e.v, id});
      }
    }
    auto flatten = [this](std::vector<std::vector<Arc>>& lists, std::vector<Arc>& arcs,
                          std::vector<std::size_t>& begin) {
      begin.assign(n_ + 1, 0);
      for (std::size_t v = 0; v < n_; ++v) {
        std::sort(lists[v].begin(), lists[v].end(),
                  [](const Arc& a, const Arc& b) { return a.to < b.to; });
        begin[v + 1] = begin[v] + lists[v].size();
        arcs.insert(arcs.end(), lists[v].begin(), lists[v].end());
      }
    };
    flatten(out, out_arcs_, out_begin_);
    flatten(in, in_arcs_, in_begin_);
  }

  std::size_t n_;
  bool directed_;
  std::vector<Edge> edges_;
  std::vector<Arc> out_arcs_, in_arcs_;
  std::vector<std::size_t> out_begin_, in_begin_;
};

inline bool edge_present(const EdgePeriodicGraph& g, std::size_t edge, std::uint64_t t) {
  return g.edge(edge).present(t);
}

// Static subgraph present at one time step.
struct Snapshot {
  std::size_t vertex_count = 0;
  bool directed = false;
  std::vector<std::pair<VertexId, VertexId>> edges;

  bool has_edge(VertexId u, VertexId v) const {
    if (!directed && u > v) std::swap(u, v);
    return std::find(edges.begin(), edges.end(), std::pair(u, v)) != edges.end();
  }
};

inline Snapshot snapshot(const EdgePeriodicGraph& g, std::uint64_t t) {
  Snapshot s{g.vertex_count(), g.directed(), {}};
  for (const Edge& e : g.edges())
    if (e.present(t)) s.edges.emplace_back(e.u, e.v);
  return s;
}

struct PeriodProfile {
  std::vector<std::size_t> periods;  // one entry per edge, in edge order
  BigInt lcm = 1;
  std::size_t max_period = 0;
  int ell = 1;
};

// lcm of the empty period set is 1.
inline PeriodProfile period_profile(const EdgePeriodicGraph& g) {
  PeriodProfile p;
  for (const Edge& e : g.edges()) {
    const std::size_t len = e.tau.size();
    p.periods.push_back(len);
    p.max_period = std::max(p.max_period, len);
    p.lcm = boost::multiprecision::lcm(p.lcm, BigInt(len));
  }
  p.ell = p.lcm >= BigInt(2 * p.max_period) ? 1 : 2;
  return p;
}

// lcm as a machine integer; throws BudgetExceeded when it does not fit.
inline std::uint64_t lcm_u64(const PeriodProfile& p) {
  if (p.lcm > BigInt(std::numeric_limits<std::uint64_t>::max()))
    throw BudgetExceeded(p.lcm.str(), std::to_string(std::numeric_limits<std::uint64_t>::max()),
                         "global period");
  return p.lcm.convert_to<std::uint64_t>();
}

namespace detail {

inline std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::uint64_t parse_uint(std::string_view tok, std::size_t line, const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("expected ") + what + ", got '" + std::string(tok) + "'");
  return value;
}

// Calls `fn(line_number, tokens)` for every non-blank line with comments stripped.
template <typename Fn>
void for_each_directive(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = split_tokens(line);
    if (!tokens.empty()) fn(line_no, tokens);
    if (end == text.size()) break;
    pos = end + 1;
  }
}

}  // namespace detail

// Parses the line-oriented instance format:
//   graph directed|undirected
//   vertices <n>
//   edge <u> <v> <bits>
inline EdgePeriodicGraph parse_graph(std::string_view text) {
  std::optional<bool> directed;
  std::optional<std::uint64_t> n;
  std::vector<Edge> edges;
  std::set<std::pair<VertexId, VertexId>> seen;

  detail::for_each_directive(text, [&](std::size_t line, const std::vector<std::string_view>& tok) {
    if (!directed) {
      if (tok.size() != 2 || tok[0] != "graph" || (tok[1] != "directed" && tok[1] != "undirected"))
        throw ParseError(line, "expected 'graph directed' or 'graph undirected'");
      directed = (tok[1] == "directed");
      return;
    }
    if (!n) {
      if (tok.size() != 2 || tok[0] != "vertices")
        throw ParseError(line, "expected 'vertices <n>'");
      n = detail::parse_uint(tok[1], line, "vertex count");
      if (*n > std::numeric_limits<VertexId>::max()) throw ParseError(line, "vertex count too large");
      return;
    }
    if (tok.size() != 4 || tok[0] != "edge") throw ParseError(line, "expected 'edge <u> <v> <bits>'");
    const auto u = detail::parse_uint(tok[1], line, "vertex id");
    const auto v = detail::parse_uint(tok[2], line, "vertex id");
    if (u >= *n || v >= *n)
      throw ParseError(line, "vertex id out of range (vertices " + std::to_string(*n) + ")");
    if (u == v) throw ParseError(line, "self-loop on vertex " + std::to_string(u));
    std::optional<PeriodString> tau;
    try {
      tau.emplace(tok[3]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line, e.what());
    }
    auto key = std::pair(static_cast<VertexId>(u), static_cast<VertexId>(v));
    if (!*directed && key.first > key.second) std::swap(key.first, key.second);
    if (!seen.insert(key).second) throw ParseError(line, "duplicate edge");
    edges.push_back({key.first, key.second, std::move(*tau)});
  });

  if (!directed) throw ParseError(1, "missing 'graph' header");
  if (!n) throw ParseError(1, "missing 'vertices' line");
  return EdgePeriodicGraph(*n, *directed, std::move(edges));
}

// Canonical text form; `header` lines are written as leading '#' comments.
inline std::string serialize(const EdgePeriodicGraph& g, std::span<const std::string> header = {}) {
  std::ostringstream os;
  for (const auto& line : header) os << "# " << line << '\n';
  os << "graph " << (g.directed() ? "directed" : "undirected") << '\n';
  os << "vertices " << g.vertex_count() << '\n';
  for (const Edge& e : g.edges()) os << "edge " << e.u << ' ' << e.v << ' ' << e.tau.str() << '\n';
  return os.str();
}

}  // namespace epcr
