#include <algorithm>

#include <catch_amalgamated.hpp>

#include "epcr/families.hpp"
#include "epcr/reductions.hpp"
#include "epcr/solver.hpp"
#include "oracle.hpp"

using namespace epcr;

namespace {

EdgePeriodicGraph two_vertices() { return parse_graph("graph undirected\nvertices 2\nedge 0 1 1\n"); }

EdgePeriodicGraph static_c4() {
  return parse_graph("graph undirected\nvertices 4\nedge 0 1 1\nedge 1 2 1\nedge 2 3 1\nedge 3 0 1\n");
}

PcaInstance no_instance() { return PcaInstance({PeriodString("10"), PeriodString("01")}); }

// Random small graphs mixing directed and undirected, sparse and dense.
std::vector<EdgePeriodicGraph> random_corpus(std::size_t count, std::uint64_t salt) {
  std::vector<EdgePeriodicGraph> out;
  for (std::uint64_t seed = 0; out.size() < count; ++seed) {
    const std::size_t n = 1 + seed % 5;
    const double density = 0.25 + 0.15 * static_cast<double>(seed % 5);
    auto g = random_graph(n, density, 1 + seed % 4, seed % 3 == 0, salt + seed);
    if (period_profile(g).lcm <= 12) out.push_back(std::move(g));
  }
  return out;
}

void check_winset_invariants(const EdgePeriodicGraph& g, const WinSet& win) {
  for (std::size_t i = 0; i < win.size(); ++i) {
    const Configuration x = win.configuration(i);
    REQUIRE(win.index(x) == i);
    const auto rank = win.rank(x);
    if (x.captured()) {
      CHECK(rank == 0u);
      continue;
    }
    if (!rank) continue;
    const auto next = successors(g, x, win.lcm());
    if (x.turn == Turn::CopToMove) {
      CHECK(std::any_of(next.begin(), next.end(), [&](const auto& y) {
        const auto ry = win.rank(y);
        return ry && *ry < *rank;
      }));
    } else {
      for (const auto& y : next) {
        REQUIRE(win.contains(y));
        CHECK(*win.rank(y) < *rank);
      }
    }
  }
}

}  // namespace

TEST_CASE("two vertices joined by a constant edge are cop-winning from both starts") {
  const auto g = two_vertices();
  const auto r = solve_fixpoint(g);
  CHECK(r.outcome.cop_winning);
  CHECK(r.outcome.winning_starts == std::vector<VertexId>{0, 1});
  CHECK(r.outcome.rounds_bound == 4);

  auto cop = extract_cop_strategy(g, r.winset);
  CHECK(cop.move({0, 1, Turn::CopToMove, 0}) == 1);

  const auto s = solve_streaming(g);
  CHECK(s.winning_starts == r.outcome.winning_starts);
}

TEST_CASE("the static four-cycle is robber-winning") {
  const auto g = static_c4();
  const auto r = solve_fixpoint(g);
  CHECK_FALSE(r.outcome.cop_winning);
  CHECK(r.outcome.winning_starts.empty());
  CHECK(oracle::brute_force(g).winning_starts().empty());
  CHECK_FALSE(solve_streaming(g).cop_winning);
  CHECK_THROWS_AS(extract_cop_strategy(g, r.winset), std::logic_error);
}

TEST_CASE("a single vertex without edges is cop-winning") {
  const auto g = parse_graph("graph undirected\nvertices 1\n");
  CHECK(solve_fixpoint(g).outcome.winning_starts == std::vector<VertexId>{0});
  CHECK(solve_streaming(g).winning_starts == std::vector<VertexId>{0});
}

TEST_CASE("graphs without vertices are rejected") {
  const EdgePeriodicGraph g(0, false, {});
  CHECK_THROWS_AS(solve_fixpoint(g), std::invalid_argument);
  CHECK_THROWS_AS(solve_streaming(g), std::invalid_argument);
}

TEST_CASE("the smallest l = 2 family member is cop-winning from vertex 0") {
  const auto g = gen_cycle_l2(2);
  const auto r = solve_fixpoint(g);
  CHECK(r.outcome.cop_winning);
  CHECK(std::count(r.outcome.winning_starts.begin(), r.outcome.winning_starts.end(), 0u) == 1);
  CHECK(solve_streaming(g).winning_starts == r.outcome.winning_starts);
}

TEST_CASE("the undirected reduction of a PCA no-instance is robber-winning") {
  const auto g = reduce_pca_to_undirected_cycle(no_instance());
  CHECK_FALSE(solve_fixpoint(g).outcome.cop_winning);
  CHECK_FALSE(solve_streaming(g).cop_winning);
}

TEST_CASE("fixpoint, streaming and brute force agree on random graphs") {
  for (const auto& g : random_corpus(150, 0)) {
    INFO(serialize(g));
    const auto fix = solve_fixpoint(g);
    const auto stream = solve_streaming(g);
    const auto bf = oracle::brute_force(g);
    CHECK(fix.outcome.winning_starts == bf.winning_starts());
    CHECK(stream.winning_starts == bf.winning_starts());
    CHECK(fix.outcome.cop_winning == !fix.outcome.winning_starts.empty());
    CHECK(stream.stats.peak_resident_levels == 2);

    for (std::size_t i = 0; i < fix.winset.size(); ++i) {
      const auto x = fix.winset.configuration(i);
      CHECK(fix.winset.contains(x) == bf.contains(x));
    }

    // Level 0 of the sweep is the cop-turn table at time 0.
    const auto sweep = streaming_sweep(g);
    for (VertexId c = 0; c < g.vertex_count(); ++c)
      for (VertexId r = 0; r < g.vertex_count(); ++r)
        CHECK(sweep.level0.cop_wins(c, r) == fix.winset.contains({c, r, Turn::CopToMove, 0}));
  }
}

TEST_CASE("the win set satisfies its local conditions") {
  for (const auto& g : random_corpus(60, 500)) check_winset_invariants(g, solve_fixpoint(g).winset);
  check_winset_invariants(gen_cycle_l2(3), solve_fixpoint(gen_cycle_l2(3)).winset);
  check_winset_invariants(static_c4(), solve_fixpoint(static_c4()).winset);
}

TEST_CASE("parallel sweeps are identical to the sequential sweep") {
  auto corpus = random_corpus(40, 900);
  corpus.push_back(gen_cycle_l2(3));
  corpus.push_back(reduce_pca_to_undirected_cycle(no_instance()));
  for (const auto& g : corpus) {
    const auto one = streaming_sweep(g, {.threads = 1});
    for (unsigned threads : {2u, 3u, 4u}) {
      const auto many = streaming_sweep(g, {.threads = threads});
      CHECK(many.level0.cop_turn == one.level0.cop_turn);
      CHECK(many.level0.robber_turn == one.level0.robber_turn);
      CHECK(many.stats.iterations == one.stats.iterations);
    }
  }
}

TEST_CASE("budgets are enforced before any allocation") {
  const auto g = gen_cycle_l2(3);  // n = 11, lcm = 3
  CHECK_NOTHROW(solve_fixpoint(g, {.budget = 2 * 121 * 3}));
  try {
    solve_fixpoint(g, {.budget = 2 * 121 * 3 - 1});
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.required() == "726");
    CHECK(std::string(e.what()).find("instance too large") != std::string::npos);
  }
  CHECK_NOTHROW(solve_streaming(g, {.level_budget = 363}));
  CHECK_THROWS_AS(solve_streaming(g, {.level_budget = 362}), BudgetExceeded);
}

TEST_CASE("stats report work and resident levels") {
  const auto g = gen_cycle_l2(2);
  const auto fix = solve_fixpoint(g);
  CHECK(fix.outcome.stats.cells == 2 * 49 * 2);
  CHECK(fix.outcome.stats.peak_resident_levels == 2);  // lcm
  CHECK(fix.outcome.stats.iterations >= 1);
  const auto stream = solve_streaming(g);
  CHECK(stream.stats.iterations == 49 * 2);
  CHECK(stream.stats.cells == 49);
  CHECK(stream.stats.peak_resident_levels == 2);
}

TEST_CASE("attractor cop beats the best-response robber within n^2 * lcm rounds") {
  const auto g = gen_cycle_l2(2);
  const auto fix = solve_fixpoint(g);
  auto cop = extract_cop_strategy(g, fix.winset, VertexId{0});
  auto robber = robber_best_response(g, fix.winset, VertexId{3});
  const auto trace = simulate(g, cop, robber, 49 * 2);
  REQUIRE(trace.captured);
  CHECK(*trace.capture_round() < 49 * 2);

  for (const auto& h : random_corpus(80, 2000)) {
    const auto win = solve_fixpoint(h).winset;
    const auto starts = win.winning_starts();
    const std::uint64_t bound = h.vertex_count() * h.vertex_count() * win.lcm();
    for (VertexId c : starts)
      for (VertexId r = 0; r < h.vertex_count(); ++r) {
        auto cs = extract_cop_strategy(h, win, c);
        auto rs = robber_best_response(h, win, r);
        const auto t = simulate(h, cs, rs, bound);
        CHECK(t.captured);
      }
  }
}

TEST_CASE("the cop strategy refuses configurations outside the win set") {
  const auto g = gen_cycle_l2(2);
  const auto fix = solve_fixpoint(g);
  auto cop = extract_cop_strategy(g, fix.winset);
  for (std::size_t i = 0; i < fix.winset.size(); ++i) {
    const auto x = fix.winset.configuration(i);
    if (x.turn == Turn::CopToMove && !fix.winset.contains(x)) {
      CHECK_THROWS_AS(cop.move(x), std::logic_error);
      break;
    }
  }
  const auto losing = fix.outcome.winning_starts;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (std::find(losing.begin(), losing.end(), v) == losing.end())
      CHECK_THROWS_AS(extract_cop_strategy(g, fix.winset, v), std::logic_error);
}

TEST_CASE("the best-response robber evades on robber-winning graphs") {
  const auto g = static_c4();
  const auto win = solve_fixpoint(g).winset;
  for (VertexId c = 0; c < 4; ++c) {
    struct Stay {
      VertexId v;
      VertexId start() const { return v; }
      VertexId move(const Configuration& x) const { return x.cop; }
    } stay{c};
    auto robber = robber_best_response(g, win);
    CHECK_FALSE(simulate(g, stay, robber, 2 * 16).captured);

    auto chaser = CopStrategy{[c] { return c; },
                              [&g](const Configuration& x) {
                                for (const Arc& a : g.moves_from(x.cop))
                                  if (a.to == x.robber) return a.to;
                                return g.moves_from(x.cop)[0].to;
                              }};
    auto robber2 = robber_best_response(g, win);
    CHECK_FALSE(simulate(g, chaser, robber2, 2 * 16).captured);
  }

  // Every robber start on two vertices is already lost.
  const auto tiny = solve_fixpoint(two_vertices()).winset;  // no strategy built on it
  for (VertexId c = 0; c < 2; ++c)
    for (VertexId r = 0; r < 2; ++r) CHECK(tiny.contains({c, r, Turn::CopToMove, 0}));
}

TEST_CASE("evasion certificates verify exactly on robber-winning graphs") {
  const auto directed = reduce_pca_to_directed_cycle(no_instance());
  const auto win = solve_fixpoint(directed).winset;
  const auto cert = evasion_certificate(win);
  REQUIRE(cert);
  CHECK(verify_evasion_certificate(directed, win, *cert));

  for (const auto& g : random_corpus(100, 4000)) {
    const auto w = solve_fixpoint(g).winset;
    const auto c = evasion_certificate(w);
    CHECK(c.has_value() == w.winning_starts().empty());
    if (c) CHECK(verify_evasion_certificate(g, w, *c));
  }

  // Dropping a member the cop can force breaks closure of the complement.
  const auto g = static_c4();
  auto w = solve_fixpoint(g).winset;
  const auto good = *evasion_certificate(w);
  CHECK(verify_evasion_certificate(g, w, good));
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto x = w.configuration(i);
    if (!x.captured() && x.turn == Turn::CopToMove && w.contains(x)) {
      w.set_rank(i, WinSet::kOutside);
      break;
    }
  }
  CHECK_FALSE(verify_evasion_certificate(g, w, good));
}

TEST_CASE("witness traces end in capture exactly when the graph is cop-winning") {
  for (const auto& g : random_corpus(60, 7000)) {
    const auto fix = solve_fixpoint(g);
    const auto trace = witness_trace(g, fix.winset);
    CHECK(trace.captured == fix.outcome.cop_winning);
  }
}
