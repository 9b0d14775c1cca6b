#pragma once

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "epcr/epcr.hpp"
#include "epcr/json.hpp"

namespace epcr::cli {

enum ExitCode : int { kOk = 0, kRobberWinning = 1, kUsage = 2, kBudget = 3 };

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

namespace detail {

inline std::string read_input(const std::string& path, Io& io) {
  if (path == "-") return {std::istreambuf_iterator<char>(io.in), std::istreambuf_iterator<char>()};
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline void write_output(const std::string& path, const std::string& text, Io& io) {
  if (path == "-") {
    io.out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
}

inline std::string join(const std::vector<VertexId>& vs) {
  std::string s;
  for (auto v : vs) s += (s.empty() ? "" : " ") + std::to_string(v);
  return s;
}

// "name" or "name:arg".
inline std::pair<std::string, std::optional<std::string>> split_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return {spec, std::nullopt};
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

inline VertexId spec_vertex(const std::optional<std::string>& arg, const std::string& spec) {
  if (!arg) throw CLI::ValidationError("strategy", "'" + spec + "' needs a vertex, e.g. stay:0");
  try {
    return static_cast<VertexId>(std::stoul(*arg));
  } catch (const std::exception&) {
    throw CLI::ValidationError("strategy", "bad vertex in '" + spec + "'");
  }
}

inline int family_k_from_size(const EdgePeriodicGraph& g) {
  const auto n = g.vertex_count();
  if ((n + 1) % 4 != 0 || n < 7) throw CLI::ValidationError("strategy", "table1 strategies need a 4k-1 cycle");
  return static_cast<int>((n + 1) / 4);
}

inline Direction spec_direction(const std::optional<std::string>& arg) {
  if (arg == "cw") return Direction::Clockwise;
  if (arg == "ccw") return Direction::Counterclockwise;
  throw CLI::ValidationError("strategy", "table1 needs :cw or :ccw");
}

struct Settings {
  unsigned threads = 1;
};

inline int cmd_solve(const std::string& file, const std::string& solver, std::optional<std::uint64_t> budget,
                     bool json, bool witness, const Settings& settings, Io& io) {
  const auto g = parse_graph(read_input(file, io));
  Outcome outcome;
  std::optional<FixpointResult> fix;
  auto run_fixpoint = [&] {
    FixpointOptions opts;
    if (budget) opts.budget = *budget;
    fix.emplace(solve_fixpoint(g, opts));
  };
  if (solver == "streaming") {
    StreamingOptions opts;
    if (budget) opts.level_budget = *budget;
    opts.threads = settings.threads;
    outcome = solve_streaming(g, opts);
    if (witness) run_fixpoint();
  } else {
    run_fixpoint();
    outcome = fix->outcome;
  }
  if (witness) outcome.witness = witness_trace(g, fix->winset);

  if (json) {
    io.out << to_json(outcome).dump() << '\n';
  } else {
    if (outcome.cop_winning)
      io.out << "cop-winning; starts: " << join(outcome.winning_starts) << '\n';
    else
      io.out << "robber-winning\n";
    if (outcome.witness) io.out << format_trace(*outcome.witness);
  }
  return outcome.cop_winning ? kOk : kRobberWinning;
}

inline int cmd_pca(const std::string& file, Io& io) {
  const auto x = parse_pca(read_input(file, io));
  if (auto i = pca_solve(x)) {
    io.out << *i << '\n';
    return kOk;
  }
  io.out << "none\n";
  return kRobberWinning;
}

inline int cmd_reduce(const std::string& file, const std::string& target, const std::string& output, Io& io) {
  const auto x = parse_pca(read_input(file, io));
  const auto kind = target == "undirected-cycle" ? ReductionTarget::UndirectedCycle : ReductionTarget::DirectedCycle;
  const auto header = reduction_header(x, kind);
  write_output(output, serialize(reduce(x, kind), header), io);
  return kOk;
}

inline int cmd_family(int ell, int k, const std::string& output, Io& io) {
  const auto g = gen_family(ell, k);
  const auto p = period_profile(g);
  const std::vector<std::string> header = {
      "sharp-bound cop-winning cycle, ell = " + std::to_string(ell) + ", k = " + std::to_string(k),
      "n = " + std::to_string(g.vertex_count()) + ", lcm = " + p.lcm.str() + ", cop start 0"};
  write_output(output, serialize(g, header), io);
  return kOk;
}

inline int cmd_simulate(const std::string& file, const std::string& cop_spec, const std::string& robber_spec,
                        std::uint64_t horizon, bool show_trace, bool json, std::optional<std::uint64_t> budget,
                        Io& io) {
  const auto g = parse_graph(read_input(file, io));
  std::optional<FixpointResult> fix;
  auto winset = [&]() -> const WinSet& {
    if (!fix) {
      FixpointOptions opts;
      if (budget) opts.budget = *budget;
      fix.emplace(solve_fixpoint(g, opts));
    }
    return fix->winset;
  };

  CopStrategy cop;
  {
    const auto [name, arg] = split_spec(cop_spec);
    if (name == "attractor") {
      std::optional<VertexId> start;
      if (arg) start = spec_vertex(arg, cop_spec);
      auto s = extract_cop_strategy(g, winset(), start);
      cop = {[s] { return s.start(); }, [s](const Configuration& c) { return s.move(c); }};
    } else if (name == "stay") {
      const VertexId v = spec_vertex(arg, cop_spec);
      cop = {[v] { return v; }, [](const Configuration& c) { return c.cop; }};
    } else if (name == "table1") {
      auto s = table1_strategies(g, family_k_from_size(g), spec_direction(arg)).first;
      cop = {[s] { return s.start(); }, [s](const Configuration& c) { return s.move(c); }};
    } else {
      throw CLI::ValidationError("--cop", "unknown cop strategy '" + cop_spec + "'");
    }
  }

  RobberStrategy robber;
  {
    const auto [name, arg] = split_spec(robber_spec);
    if (name == "best") {
      std::optional<VertexId> start;
      if (arg) start = spec_vertex(arg, robber_spec);
      auto s = robber_best_response(g, winset(), start);
      robber = {[s](VertexId c) { return s.start(c); }, [s](const Configuration& c) { return s.move(c); }};
    } else if (name == "stay") {
      const VertexId v = spec_vertex(arg, robber_spec);
      robber = {[v](VertexId) { return v; }, [](const Configuration& c) { return c.robber; }};
    } else if (name == "table1") {
      auto s = std::make_shared<ScriptedRobber>(
          table1_strategies(g, family_k_from_size(g), spec_direction(arg)).second);
      robber = {[s](VertexId c) { return s->start(c); }, [s](const Configuration& c) { return s->move(c); }};
    } else {
      throw CLI::ValidationError("--robber", "unknown robber strategy '" + robber_spec + "'");
    }
  }

  const Trace trace = simulate(g, cop, robber, horizon);
  if (json) {
    io.out << to_json(trace).dump() << '\n';
    return kOk;
  }
  if (trace.captured) {
    const VertexId where = trace.rounds.empty() ? trace.cop_start : trace.rounds.back().cop;
    io.out << "captured";
    if (auto r = trace.capture_round())
      io.out << " in round " << *r;
    else
      io.out << " at start";
    io.out << " at vertex " << where << '\n';
  } else {
    io.out << "evaded for " << trace.rounds.size() << " rounds\n";
  }
  if (show_trace) io.out << format_trace(trace);
  return kOk;
}

inline int cmd_chase(const std::string& file, bool check, std::optional<std::uint64_t> horizon,
                     std::optional<std::uint64_t> budget, const Settings& settings, Io& io) {
  const auto g = parse_graph(read_input(file, io));
  const auto report = greedy_directed_chase(g, horizon, settings.threads);
  io.out << "start robber verdict rounds capture\n";
  for (const auto& s : report.starts) {
    io.out << s.cop_start << ' ' << s.robber_start << ' '
           << (s.verdict == ChaseVerdict::Caught ? "caught" : "evaded") << ' ' << s.rounds << ' ';
    if (s.capture_round)
      io.out << *s.capture_round;
    else
      io.out << '-';
    io.out << '\n';
  }
  io.out << "greedy: " << (report.cop_winning ? "cop-winning" : "robber-winning") << '\n';
  auto j = to_json(report);
  int code = kOk;
  if (check) {
    FixpointOptions opts;
    if (budget) opts.budget = *budget;
    const auto exact = solve_fixpoint(g, opts).outcome;
    const bool agree = exact.cop_winning == report.cop_winning;
    io.out << "exact: " << (exact.cop_winning ? "cop-winning" : "robber-winning") << "; "
           << (agree ? "agree" : "DISAGREE") << '\n';
    j["exact_cop_winning"] = exact.cop_winning;
    j["agree"] = agree;
    if (!agree) code = kRobberWinning;
  }
  io.out << j.dump() << '\n';
  return code;
}

struct BenchRow {
  std::string instance;
  EdgePeriodicGraph graph;
};

inline int cmd_bench(const std::string& suite, std::uint64_t max_lcm, const std::string& csv,
                     const Settings& settings, Io& io) {
  std::vector<BenchRow> rows;
  if (suite == "families") {
    for (int k = 2; static_cast<std::uint64_t>(k) <= max_lcm; ++k)
      rows.push_back({"family_l2_k" + std::to_string(k), gen_cycle_l2(k)});
  } else {
    // Fixed underlying cycle (|X| = 2, six vertices); lcm = 7p.
    for (std::uint64_t p = 1; 7 * p <= max_lcm; ++p) {
      PcaInstance x({PeriodString("1" + std::string(p - 1, '0')), PeriodString("1")});
      rows.push_back({"pca_undirected_p" + std::to_string(p), reduce_pca_to_undirected_cycle(x)});
    }
  }

  std::ostringstream os;
  os << "instance,n,lcm,solver,seconds,peak_cells\n";
  for (const auto& row : rows) {
    const auto n = static_cast<std::uint64_t>(row.graph.vertex_count());
    const auto lcm = lcm_u64(period_profile(row.graph));
    auto timed = [](auto&& fn) {
      const auto t0 = std::chrono::steady_clock::now();
      fn();
      return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    FixpointOptions fo;
    fo.budget = std::uint64_t{1} << 32;
    const double fix_s = timed([&] { solve_fixpoint(row.graph, fo); });
    os << row.instance << ',' << n << ',' << lcm << ",fixpoint," << std::setprecision(6) << fix_s << ','
       << 2 * n * n * lcm << '\n';
    StreamingOptions so;
    so.threads = settings.threads;
    so.level_budget = std::uint64_t{1} << 40;
    const double stream_s = timed([&] { solve_streaming(row.graph, so); });
    os << row.instance << ',' << n << ',' << lcm << ",streaming," << std::setprecision(6) << stream_s << ','
       << 4 * n * n << '\n';
  }
  write_output(csv, os.str(), io);
  return kOk;
}

}  // namespace detail

// Runs one CLI invocation; args exclude the program name.
inline int run_command(const std::vector<std::string>& args, Io io) {
  CLI::App app{"Cops and robber on edge-periodic graphs", "epcr"};
  app.require_subcommand(1);
  detail::Settings settings;
  app.add_option("--threads", settings.threads, "Worker threads for solver and chase")->check(CLI::Range(1u, 256u));

  std::string file = "-";
  std::string solver = "fixpoint";
  std::optional<std::uint64_t> budget;
  bool json = false;
  bool witness = false;
  auto* solve = app.add_subcommand("solve", "Decide whether the graph is cop-winning");
  solve->add_option("file", file, "Instance file ('-' for stdin)")->required();
  solve->add_option("--solver", solver)->check(CLI::IsMember({"fixpoint", "streaming"}));
  solve->add_option("--budget", budget, "Configuration (fixpoint) or level-cell (streaming) limit");
  solve->add_flag("--json", json);
  solve->add_flag("--witness", witness, "Print a capture or evasion trace");

  std::string pca_file;
  auto* pca = app.add_subcommand("pca", "Smallest aligned position of a PCA instance");
  pca->add_option("file", pca_file)->required();

  std::string target;
  std::string output = "-";
  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce a PCA instance to a cycle instance");
  reduce_cmd->add_option("file", pca_file)->required();
  reduce_cmd->add_option("--target", target)->required()->check(CLI::IsMember({"undirected-cycle", "directed-cycle"}));
  reduce_cmd->add_option("-o,--output", output);

  int ell = 2;
  int k = 2;
  auto* family = app.add_subcommand("family", "Emit a sharp-bound cop-winning cycle");
  family->add_option("--ell", ell)->required()->check(CLI::IsMember({1, 2}));
  family->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  family->add_option("-o,--output", output);

  std::string cop_spec;
  std::string robber_spec;
  std::uint64_t horizon = 0;
  bool show_trace = false;
  auto* sim = app.add_subcommand("simulate", "Play two strategies against each other");
  sim->add_option("file", file)->required();
  sim->add_option("--cop", cop_spec, "attractor[:v] | stay:v | table1:cw|ccw")->required();
  sim->add_option("--robber", robber_spec, "best[:v] | stay:v | table1:cw|ccw")->required();
  sim->add_option("--horizon", horizon)->required();
  sim->add_option("--budget", budget);
  sim->add_flag("--trace", show_trace);
  sim->add_flag("--json", json);

  bool greedy = false;
  bool check = false;
  std::optional<std::uint64_t> chase_horizon;
  auto* chase = app.add_subcommand("chase", "Greedy chase on a directed cycle");
  chase->add_option("file", file)->required();
  chase->add_flag("--greedy", greedy)->required();
  chase->add_flag("--check", check, "Cross-check against the exact solver");
  chase->add_option("--horizon", chase_horizon);
  chase->add_option("--budget", budget);

  std::string suite;
  std::uint64_t max_lcm = 0;
  std::string csv;
  auto* bench = app.add_subcommand("bench", "Solver runtime against lcm");
  bench->add_option("--suite", suite)->required()->check(CLI::IsMember({"reductions", "families"}));
  bench->add_option("--max-lcm", max_lcm)->required();
  bench->add_option("--csv", csv)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, io.out, io.err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) return detail::cmd_solve(file, solver, budget, json, witness, settings, io);
    if (*pca) return detail::cmd_pca(pca_file, io);
    if (*reduce_cmd) return detail::cmd_reduce(pca_file, target, output, io);
    if (*family) return detail::cmd_family(ell, k, output, io);
    if (*sim) return detail::cmd_simulate(file, cop_spec, robber_spec, horizon, show_trace, json, budget, io);
    if (*chase) return detail::cmd_chase(file, check, chase_horizon, budget, settings, io);
    if (*bench) return detail::cmd_bench(suite, max_lcm, csv, settings, io);
  } catch (const BudgetExceeded& e) {
    io.err << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace epcr::cli
