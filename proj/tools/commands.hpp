#pragma once

// Subcommands of the lbmcf tool. run_cli is the whole program minus main(), so
// tests can drive it in-process with string streams.
//
// Exit codes: 0 ok, 1 infeasible, 2 usage or input error, 3 internal
// assertion, 4 instance too large for the exact oracle, 5 structural mismatch.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lbmcf/lbmcf.hpp"

namespace lbmcf::cli {

enum ExitCode : int {
  kOk = 0,
  kInfeasible = 1,
  kUsage = 2,
  kInternal = 3,
  kOracleCap = 4,
  kStructural = 5,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << content;
  if (!out) throw UsageError("write to '" + path + "' failed");
}

struct RunReport {
  std::string solver;
  std::int32_t n = 0, m = 0, k = 0, L = 0;
  double total_flow = 0.0;
  std::optional<double> upper_bound;
  std::string ub_source = "none";
  std::optional<double> omega_prime;
  double wall_time_seconds = 0.0;
  int repeat = 1;
  nlohmann::ordered_json stats = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["solver"] = solver;
    j["instance"] = {{"n", n}, {"m", m}, {"k", k}, {"L", L}};
    j["total_flow"] = total_flow;
    j["upper_bound"] = upper_bound ? nlohmann::ordered_json(*upper_bound) : nlohmann::ordered_json();
    j["ub_source"] = ub_source;
    j["omega_prime"] = omega_prime ? nlohmann::ordered_json(*omega_prime) : nlohmann::ordered_json();
    j["wall_time_seconds"] = wall_time_seconds;
    j["repeat"] = repeat;
    j["stats"] = stats;
    return j;
  }

  static std::string csv_header() {
    return "solver,n,m,k,L,total_flow,upper_bound,ub_source,omega_prime,wall_time_seconds";
  }
  std::string csv_row() const {
    std::ostringstream out;
    out << solver << ',' << n << ',' << m << ',' << k << ',' << L << ',' << format_double(total_flow) << ','
        << (upper_bound ? format_double(*upper_bound) : "") << ',' << ub_source << ','
        << (omega_prime ? format_double(*omega_prime) : "") << ',' << format_double(wall_time_seconds);
    return out.str();
  }
};

inline void describe(RunReport& report, const Instance& instance) {
  report.n = instance.network.vertex_count();
  report.m = instance.network.edge_count();
  report.k = instance.commodity_count();
  report.L = instance.hop_bound;
}

inline nlohmann::ordered_json to_json(const ValidationReport& v) {
  return {{"feasible", v.feasible},
          {"max_capacity_violation", v.max_capacity_violation},
          {"max_demand_violation", v.max_demand_violation},
          {"max_hops_violation", v.max_hops_violation},
          {"total_flow", v.total_flow}};
}

struct GenerateArgs {
  GridGenConfig config;
  std::string mode = "I";
  std::string out;
};

inline int cmd_generate(const GenerateArgs& args, std::ostream& out) {
  if (args.mode != "I" && args.mode != "1")
    throw UsageError("demand mode '" + args.mode + "' is not supported; only mode I (congestion scaling) is available");
  const Instance instance = generate_grid_instance(args.config);
  write_file(args.out, serialize_instance(instance, generator_header(args.config)));
  out << "wrote " << args.out << ": n=" << instance.network.vertex_count() << " m=" << instance.network.edge_count()
      << " k=" << instance.commodity_count() << " L=" << instance.hop_bound << '\n';
  return kOk;
}

struct SolveArgs {
  std::string algo;
  std::optional<double> omega;
  std::string in;
  std::string solution_out;
  std::string report = "json";
  std::string ub;
  int threads = 1;
  int repeat = 1;
};

inline int cmd_solve(const SolveArgs& args, std::ostream& out) {
  if (args.algo != "fptas" && args.algo != "greedy") throw UsageError("unknown algorithm '" + args.algo + "'");
  if (args.algo == "fptas" && !args.omega) throw UsageError("--algo fptas requires --omega");
  if (args.algo == "greedy" && args.omega) throw UsageError("--omega applies to --algo fptas only");
  if (args.report != "json" && args.report != "csv") throw UsageError("--report must be json or csv");
  if (args.repeat < 1) throw UsageError("--repeat must be at least 1");
  if (args.threads < 1) throw UsageError("--threads must be at least 1");

  const Instance instance = parse_instance(read_file(args.in));
  RunReport report;
  report.solver = args.algo;
  report.repeat = args.repeat;
  describe(report, instance);

  std::vector<double> times;
  FlowSolution solution;
  for (int rep = 0; rep < args.repeat; ++rep) {
    const auto start = std::chrono::steady_clock::now();
    if (args.algo == "fptas") {
      auto result = solve_fptas(instance, *args.omega);
      times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
      solution = std::move(result.solution);
      report.upper_bound = result.upper_bound;
      report.ub_source = "fptas-dual";
      report.stats = {{"omega", *args.omega},
                      {"epsilon", result.params.epsilon},
                      {"delta", result.params.delta},
                      {"sigma", result.params.sigma},
                      {"r_max", result.params.r_max},
                      {"augmentations", result.stats.augmentations},
                      {"phases_completed", result.stats.phases_completed},
                      {"bellman_ford_calls", result.stats.bellman_ford_calls},
                      {"terminated_early", result.stats.terminated_early},
                      {"pruned_commodities", result.pruned.size()}};
    } else {
      GreedyOptions options;
      options.threads = args.threads;
      auto result = solve_greedy(instance, options);
      times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
      solution = std::move(result.solution);
      report.stats = {{"iterations", result.stats.iterations},
                      {"rebuilds", result.stats.rebuilds},
                      {"searches", result.stats.searches},
                      {"deleted_edges", result.stats.deleted_edges}};
      report.ub_source = "edge-flow-LP-export-pending";
    }
  }
  std::sort(times.begin(), times.end());
  report.wall_time_seconds = times[times.size() / 2];

  const ValidationReport check = validate_solution(instance, solution);
  if (!check.feasible)
    throw InternalError("solver produced an infeasible solution: " + to_json(check).dump());
  report.total_flow = solution.total_value;

  if (!args.ub.empty()) {
    if (args.ub == "exact") {
      report.upper_bound = to_double(exact_optimum(instance).optimum);
      report.ub_source = "exact";
    } else {
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(args.ub.data(), args.ub.data() + args.ub.size(), value);
      if (ec != std::errc{} || ptr != args.ub.data() + args.ub.size() || !(value >= 0.0))
        throw UsageError("--ub must be a nonnegative number or 'exact'");
      report.upper_bound = value;
      report.ub_source = "user";
    }
    if (*report.upper_bound < report.total_flow * (1.0 - kFeasibilityTolerance))
      throw UsageError("upper bound " + format_double(*report.upper_bound) + " is below the solution value " +
                       format_double(report.total_flow));
  }
  if (report.upper_bound && *report.upper_bound > 0.0)
    report.omega_prime = std::max(0.0, (*report.upper_bound - report.total_flow) / *report.upper_bound);
  else if (report.upper_bound)
    report.omega_prime = 0.0;

  if (!args.solution_out.empty()) write_file(args.solution_out, serialize_solution(solution));
  if (args.report == "json") {
    out << report.to_json().dump(2) << '\n';
  } else {
    out << RunReport::csv_header() << '\n' << report.csv_row() << '\n';
  }
  return kOk;
}

struct ExactArgs {
  std::string in;
  std::string solution_out;
};

inline int cmd_exact(const ExactArgs& args, std::ostream& out) {
  const Instance instance = parse_instance(read_file(args.in));
  const auto start = std::chrono::steady_clock::now();
  const ExactResult result = exact_optimum(instance);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out << "optimum " << to_string(result.optimum) << " (" << format_double(to_double(result.optimum)) << ")\n";
  for (const ExactPathFlow& pf : result.path_flows) {
    out << "  commodity " << pf.commodity << " amount " << to_string(pf.amount) << " path";
    for (VertexId v : vertices_of(instance.network, instance.commodities[static_cast<std::size_t>(pf.commodity)].origin,
                                  pf.edges))
      out << ' ' << v;
    out << '\n';
  }
  out << "paths enumerated " << result.catalog_size << ", pivots " << result.pivots << ", "
      << format_double(seconds) << " s\n";
  if (!args.solution_out.empty()) write_file(args.solution_out, serialize_solution(result.solution));
  return kOk;
}

struct ExportArgs {
  std::string in;
  std::string model;
  std::string out;
};

inline int cmd_export_lp(const ExportArgs& args, std::ostream& out) {
  const Instance instance = parse_instance(read_file(args.in));
  LpModel model;
  LpSize expected;
  if (args.model == "edge") {
    model = export_edge_flow_lp(instance);
    expected = edge_flow_lp_size(instance);
    out << "note: the edge-flow model ignores the hop bound L = " << instance.hop_bound
        << "; its optimum is an upper bound on the hop-bounded optimum\n";
  } else if (args.model == "texp") {
    model = export_time_expanded_lp(instance);
    expected = time_expanded_lp_size(instance);
  } else {
    throw UsageError("unknown model '" + args.model + "' (expected edge or texp)");
  }
  if (static_cast<std::int64_t>(model.variable_count()) != expected.variables ||
      static_cast<std::int64_t>(model.row_count()) != expected.constraints)
    throw InternalError("exported model size differs from its closed form");
  write_file(args.out, write_lp_file(model));
  out << "wrote " << args.out << ": " << model.variable_count() << " variables, " << model.row_count()
      << " constraints\n";
  return kOk;
}

struct ValidateArgs {
  std::string in;
  std::string solution;
};

inline int cmd_validate(const ValidateArgs& args, std::ostream& out) {
  const Instance instance = parse_instance(read_file(args.in));
  const std::string text = read_file(args.solution);
  FlowSolution solution;
  try {
    solution = parse_solution(text, instance);
  } catch (const ParseError& e) {
    throw StructuralError(std::string("solution file: ") + e.what());
  }
  const ValidationReport report = validate_solution(instance, solution);
  out << to_json(report).dump(2) << '\n';
  return report.feasible ? kOk : kInfeasible;
}

// args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hop-bounded maximum multicommodity flow tools", "lbmcf"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a random grid instance");
  generate->add_option("--a", gen.config.a, "Grid side")->capture_default_str();
  generate->add_option("--b", gen.config.b, "Number of stacked grids")->capture_default_str();
  generate->add_option("--k", gen.config.k, "Number of commodities")->capture_default_str();
  generate->add_option("--lambda", gen.config.lambda, "Target congestion in (0, 1]")->capture_default_str();
  generate->add_option("--L", gen.config.hop_bound, "Hop bound")->capture_default_str();
  generate->add_option("--seed", gen.config.seed, "RNG seed")->capture_default_str();
  generate->add_option("--mode", gen.mode, "Demand mode (only I)")->capture_default_str();
  generate->add_option("--out", gen.out, "Instance file to write")->required();

  SolveArgs solve_args;
  double omega = 0.0;
  auto* solve = app.add_subcommand("solve", "Run the FPTAS or the greedy heuristic");
  solve->add_option("--algo", solve_args.algo, "fptas or greedy")->required();
  auto* omega_opt = solve->add_option("--omega", omega, "Target relative error for fptas");
  solve->add_option("--in", solve_args.in, "Instance file")->required();
  solve->add_option("--solution-out", solve_args.solution_out, "Where to write the path-flows");
  solve->add_option("--report", solve_args.report, "json or csv")->capture_default_str();
  solve->add_option("--ub", solve_args.ub, "Upper bound for omega': a number or 'exact'");
  solve->add_option("--threads", solve_args.threads, "Worker threads for greedy rebuilds")->capture_default_str();
  solve->add_option("--repeat", solve_args.repeat, "Runs to take the median time over")->capture_default_str();

  ExactArgs exact_args;
  auto* exact = app.add_subcommand("exact", "Exact optimum by path enumeration and rational simplex");
  exact->add_option("--in", exact_args.in, "Instance file")->required();
  exact->add_option("--solution-out", exact_args.solution_out, "Where to write the optimal path-flows");

  ExportArgs export_args;
  auto* export_lp = app.add_subcommand("export-lp", "Write an LP formulation");
  export_lp->add_option("--in", export_args.in, "Instance file")->required();
  export_lp->add_option("--model", export_args.model, "edge or texp")->required();
  export_lp->add_option("--out", export_args.out, "LP file to write")->required();

  ValidateArgs validate_args;
  auto* validate = app.add_subcommand("validate", "Check a solution file against an instance");
  validate->add_option("--in", validate_args.in, "Instance file")->required();
  validate->add_option("--solution", validate_args.solution, "Solution file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    err << "run with --help for usage\n";
    return kUsage;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen, out);
    if (solve->parsed()) {
      if (*omega_opt) solve_args.omega = omega;
      return cmd_solve(solve_args, out);
    }
    if (exact->parsed()) return cmd_exact(exact_args, out);
    if (export_lp->parsed()) return cmd_export_lp(export_args, out);
    if (validate->parsed()) return cmd_validate(validate_args, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParameterError& e) {
    err << "invalid parameter: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return kUsage;
  } catch (const OracleTooLarge& e) {
    err << "too large: " << e.what() << "\nuse export-lp and an external LP solver instead\n";
    return kOracleCap;
  } catch (const StructuralError& e) {
    err << "structural error: " << e.what() << '\n';
    return kStructural;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace lbmcf::cli
