#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "rmove/baselines.hpp"
#include "rmove/bicriteria.hpp"
#include "rmove/errors.hpp"
#include "rmove/fptas.hpp"
#include "rmove/instances.hpp"
#include "rmove/lp.hpp"
#include "rmove/rounding.hpp"
#include "rmove/two_part.hpp"

namespace {

using namespace rmove;

// Raised when an algorithm is asked to run outside its partition count.
struct algorithm_mismatch : error {
  using error::error;
};

const std::vector<std::string> kAlgorithms = {
    "lp",         "lp-round", "lp-round-derand", "component-round",
    "fptas",      "bicriteria", "two-part",      "greedy-best",
    "greedy-boundary", "exact"};

std::string fmt(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.9g", value);
  return buffer;
}

// One relaxation solve per (instance file, budget), shared by every cell.
struct LpCache {
  std::map<std::pair<std::string, int>, std::pair<double, FractionalAssignment>>
      entries;

  const std::pair<double, FractionalAssignment>& get(const std::string& key,
                                                     const Instance& instance) {
    const auto map_key = std::make_pair(key, instance.r);
    auto it = entries.find(map_key);
    if (it != entries.end()) return it->second;
    const LpSolution solution = solve_lp(build_rmove_lp(instance));
    internal_check(solution.status == LpStatus::optimal,
                   "relaxation did not solve to optimality");
    FractionalAssignment x = extract_assignment(instance, solution);
    return entries.emplace(map_key, std::make_pair(solution.objective,
                                                   std::move(x)))
        .first->second;
  }
};

struct AlgParams {
  std::uint64_t seed = 0;
  double eps = 0.5;
  double gamma = 0.75;
  double work_bound = 5e6;
  bool force_lp = false;  // sweep fills lp_obj for every algorithm
};

struct SolveOutcome {
  double cut = 0.0;
  std::optional<double> lp_obj;
  std::optional<int> moves;
  std::optional<int> bound;
};

void check_partition_count(const std::string& alg, const Instance& instance) {
  if (alg == "two-part" && instance.initial.k != 2)
    throw algorithm_mismatch("algorithm 'two-part' needs k = 2, instance has k = " +
                             std::to_string(instance.initial.k));
}

SolveOutcome run_algorithm(const std::string& key, const Instance& instance,
                           const std::string& alg, const AlgParams& params,
                           LpCache& cache) {
  check_partition_count(alg, instance);
  if (alg == "lp") {
    const double objective = cache.get(key, instance).first;
    return {objective, objective, std::nullopt, std::nullopt};
  }

  CutResult result;
  std::optional<double> lp_obj;
  if (alg == "lp-round" || alg == "lp-round-derand" ||
      alg == "component-round" || alg == "bicriteria") {
    const auto& entry = cache.get(key, instance);
    lp_obj = entry.first;
    if (alg == "lp-round")
      result = round_randomized(instance, entry.second, params.seed);
    else if (alg == "lp-round-derand")
      result = round_derandomized(instance, entry.second);
    else if (alg == "component-round")
      result = component_round(instance, entry.second);
    else
      result = bicriteria_round(instance, entry.second, params.gamma,
                                params.seed);
  } else if (alg == "fptas") {
    result = fptas_solve(instance, params.eps);
  } else if (alg == "two-part") {
    result = two_part_solve(instance);
  } else if (alg == "greedy-best") {
    result = greedy_best_move(instance);
  } else if (alg == "greedy-boundary") {
    result = greedy_boundary(instance);
  } else if (alg == "exact") {
    result = exact_brute_force(instance, params.work_bound);
  } else {
    throw parameter_error("unknown algorithm '" + alg + "'");
  }
  if (params.force_lp && !lp_obj) lp_obj = cache.get(key, instance).first;

  const int bound = alg == "bicriteria"
                        ? bicriteria_move_bound(instance.r, params.gamma)
                        : instance.r;
  return {result.cut_value, lp_obj, static_cast<int>(result.moved.size()),
          bound};
}

// Schema: instance,alg,n,m,k,r,seed,cut,lp_obj,moves,ratio,time_ms,bound
std::string csv_row(const std::string& name, const std::string& alg,
                    const Instance& instance, std::uint64_t seed,
                    const SolveOutcome& outcome,
                    std::optional<double> time_ms) {
  std::ostringstream row;
  row << name << ',' << alg << ',' << instance.n() << ','
      << instance.graph.edges().size() << ',' << instance.initial.k << ','
      << instance.r << ',' << seed << ',' << fmt(outcome.cut) << ',';
  if (outcome.lp_obj) row << fmt(*outcome.lp_obj);
  row << ',';
  if (outcome.moves) row << *outcome.moves;
  row << ',';
  if (outcome.lp_obj && *outcome.lp_obj > 0.0)
    row << fmt(outcome.cut / *outcome.lp_obj);
  row << ',';
  if (time_ms) row << fmt(*time_ms);
  row << ',';
  if (outcome.bound) row << *outcome.bound;
  row << '\n';
  return row.str();
}

std::string term_sum(const std::vector<LpTerm>& terms,
                     const std::vector<std::string>& names) {
  if (terms.empty()) return "0";
  std::string sum;
  for (const LpTerm& term : terms) {
    if (sum.empty())
      sum += term.coeff < 0.0 ? "-" : "";
    else
      sum += term.coeff < 0.0 ? " - " : " + ";
    sum += fmt(std::abs(term.coeff)) + "*" + names[term.var];
  }
  return sum;
}

void dump_problem(const std::string& which, const LpProblem& problem) {
  std::cout << "lp " << which << " vars " << problem.var_count
            << " constraints " << problem.constraints.size() << '\n';
  std::cout << "minimize " << term_sum(problem.objective, problem.names);
  if (problem.objective_constant != 0.0)
    std::cout << " + " << fmt(problem.objective_constant);
  std::cout << '\n' << "subject to" << '\n';
  for (const LpConstraint& constraint : problem.constraints) {
    const char* relation = constraint.relation == LpRelation::less_equal ? "<="
                           : constraint.relation == LpRelation::equal   ? "="
                                                                        : ">=";
    std::cout << term_sum(constraint.terms, problem.names) << ' ' << relation
              << ' ' << fmt(constraint.rhs) << '\n';
  }
  std::cout << "bounds" << '\n';
  for (int v = 0; v < problem.var_count; ++v) {
    std::cout << fmt(problem.lower[v]) << " <= " << problem.names[v];
    if (problem.upper[v] != kInfinity) std::cout << " <= " << fmt(problem.upper[v]);
    std::cout << '\n';
  }
}

template <typename T>
void sort_unique(std::vector<T>& values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"r-move k-partitioning toolkit"};
  app.require_subcommand(1);

  // ---- gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "write an instance file");
  gen->require_subcommand(1);

  SbmParams sbm_params;
  bool sbm_relabel = false;
  std::string sbm_out;
  auto* gen_sbm_cmd = gen->add_subcommand("sbm", "planted-block random graph");
  gen_sbm_cmd->add_option("--n", sbm_params.n, "node count")->required();
  gen_sbm_cmd->add_option("--k", sbm_params.k, "block count (default 2)");
  gen_sbm_cmd->add_option("--pin", sbm_params.p_in, "in-block edge probability")
      ->required();
  gen_sbm_cmd
      ->add_option("--pout", sbm_params.p_out, "cross-block edge probability")
      ->required();
  gen_sbm_cmd->add_flag("--relabel", sbm_relabel,
                        "relabel non-terminals uniformly at random");
  gen_sbm_cmd->add_option("--seed", sbm_params.seed, "generator seed");
  gen_sbm_cmd->add_option("--r", sbm_params.r, "move budget stored on the instance");
  gen_sbm_cmd->add_option("-o,--out", sbm_out, "output path")->required();
  gen_sbm_cmd->callback([&] {
    sbm_params.relabel =
        sbm_relabel ? RelabelMode::uniform_random : RelabelMode::keep;
    save_instance(gen_sbm(sbm_params), sbm_out);
  });

  int gap_r = 0, gap_tail = 6;
  double gap_eps = 0.0;
  std::string gap_out;
  auto* gen_gap_cmd =
      gen->add_subcommand("gap", "worst-case family for the relaxation");
  gen_gap_cmd->add_option("--r", gap_r, "move budget")->required();
  gen_gap_cmd->add_option("--eps", gap_eps, "weight of the light edge")
      ->required();
  gen_gap_cmd->add_option("--tail", gap_tail, "length of the terminal tail");
  gen_gap_cmd->add_option("-o,--out", gap_out, "output path")->required();
  gen_gap_cmd->callback(
      [&] { save_instance(gen_integrality_gap(gap_r, gap_eps, gap_tail), gap_out); });

  std::string red_input, red_out;
  int red_r = 0, red_node_bound = 10;
  auto* gen_red_cmd =
      gen->add_subcommand("reduction", "densest-subgraph reduction instance");
  gen_red_cmd->add_option("--input", red_input, "instance file supplying the graph")
      ->required();
  gen_red_cmd->add_option("--r", red_r, "move budget")->required();
  gen_red_cmd->add_option("--node-bound", red_node_bound,
                          "largest accepted input node count");
  gen_red_cmd->add_option("-o,--out", red_out, "output path")->required();
  gen_red_cmd->callback([&] {
    const Instance base = load_instance(red_input);
    save_instance(gen_densest_reduction(base.graph, red_r, red_node_bound),
                  red_out);
  });

  std::string load_edges, load_membership, load_out;
  int load_blocks = 0, load_r = -1;
  auto* gen_load_cmd =
      gen->add_subcommand("load", "instance from edge list + membership file");
  gen_load_cmd->add_option("--edges", load_edges, "u v edge list")->required();
  gen_load_cmd
      ->add_option("--membership", load_membership, "node label file")
      ->required();
  gen_load_cmd
      ->add_option("--top-blocks", load_blocks, "number of largest blocks kept")
      ->required();
  gen_load_cmd->add_option("--r", load_r, "move budget override");
  gen_load_cmd->add_option("-o,--out", load_out, "output path")->required();
  gen_load_cmd->callback([&] {
    int dropped = 0;
    Instance instance =
        load_labeled_edgelist(load_edges, load_membership, load_blocks, &dropped);
    if (load_r >= 0) instance = instance.with_r(load_r);
    if (dropped > 0)
      std::cerr << "dropped " << dropped << " self-loop line(s)\n";
    save_instance(instance, load_out);
  });

  // ---- solve --------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "run one algorithm, print one CSV row");
  std::string solve_path, solve_alg;
  int solve_r = -1;
  AlgParams solve_params;
  solve->add_option("instance", solve_path, "instance file")->required();
  solve->add_option("--alg", solve_alg, "algorithm")
      ->required()
      ->check(CLI::IsMember(kAlgorithms));
  solve->add_option("--r", solve_r, "move budget override");
  solve->add_option("--seed", solve_params.seed, "rounding seed");
  solve->add_option("--eps", solve_params.eps, "fptas accuracy (default 0.5)");
  solve->add_option("--gamma", solve_params.gamma,
                    "bicriteria budget slack in (1/2,1) (default 0.75)");
  solve->add_option("--work-bound", solve_params.work_bound,
                    "exhaustive search work cap (default 5e6)");
  solve->callback([&] {
    Instance instance = load_instance(solve_path);
    if (solve->count("--r")) instance = instance.with_r(solve_r);
    LpCache cache;
    const auto start = std::chrono::steady_clock::now();
    const SolveOutcome outcome =
        run_algorithm(solve_path, instance, solve_alg, solve_params, cache);
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    std::cout << csv_row(solve_path, solve_alg, instance, solve_params.seed,
                         outcome, ms);
  });

  // ---- sweep --------------------------------------------------------------
  auto* sweep =
      app.add_subcommand("sweep", "cross-product runs into a deterministic CSV");
  std::vector<std::string> sweep_paths, sweep_algs;
  std::vector<int> sweep_rs;
  std::vector<std::uint64_t> sweep_seeds;
  std::string sweep_out;
  AlgParams sweep_params;
  sweep->add_option("instances", sweep_paths, "instance files")->required();
  sweep->add_option("--algs", sweep_algs, "comma-separated algorithm list")
      ->required()
      ->delimiter(',');
  sweep->add_option("--rs", sweep_rs, "comma-separated budgets (default: stored r)")
      ->delimiter(',');
  sweep->add_option("--seeds", sweep_seeds, "comma-separated seeds (default 0)")
      ->delimiter(',');
  sweep->add_option("--eps", sweep_params.eps, "fptas accuracy");
  sweep->add_option("--gamma", sweep_params.gamma, "bicriteria budget slack");
  sweep->add_option("--work-bound", sweep_params.work_bound,
                    "exhaustive search work cap");
  sweep->add_option("-o,--out", sweep_out, "output CSV path")->required();
  sweep->callback([&] {
    for (const std::string& alg : sweep_algs)
      if (std::find(kAlgorithms.begin(), kAlgorithms.end(), alg) ==
          kAlgorithms.end())
        throw parameter_error("unknown algorithm '" + alg + "'");
    if (sweep_seeds.empty()) sweep_seeds.push_back(0);
    sort_unique(sweep_paths);
    sort_unique(sweep_algs);
    sort_unique(sweep_rs);
    sort_unique(sweep_seeds);

    std::ofstream out(sweep_out);
    if (!out) throw parameter_error("cannot open '" + sweep_out + "' for writing");
    out << "instance,alg,n,m,k,r,seed,cut,lp_obj,moves,ratio,time_ms,bound\n";

    sweep_params.force_lp = true;
    LpCache cache;
    for (const std::string& path : sweep_paths) {
      const Instance base = load_instance(path);
      const std::vector<int> budgets =
          sweep_rs.empty() ? std::vector<int>{base.r} : sweep_rs;
      for (const std::string& alg : sweep_algs)
        for (int r : budgets) {
          const Instance instance = base.with_r(r);
          for (std::uint64_t seed : sweep_seeds) {
            AlgParams params = sweep_params;
            params.seed = seed;
            const SolveOutcome outcome =
                run_algorithm(path, instance, alg, params, cache);
            // time_ms stays blank: rerunning with the same seeds must
            // reproduce the file byte for byte.
            out << csv_row(path, alg, instance, seed, outcome, std::nullopt);
          }
        }
    }
  });

  // ---- lp-dump ------------------------------------------------------------
  auto* dump = app.add_subcommand(
      "lp-dump", "print a relaxation in plain text, one constraint per line");
  std::string dump_path, dump_which = "rmove";
  double dump_alpha = 0.0;
  dump->add_option("instance", dump_path, "instance file")->required();
  dump->add_option("--which", dump_which, "relaxation family")
      ->check(CLI::IsMember({"rmove", "ckr", "rmove2", "lagrangian"}));
  dump->add_option("--alpha", dump_alpha, "price of a move (lagrangian only)");
  dump->callback([&] {
    const Instance instance = load_instance(dump_path);
    LpProblem problem;
    if (dump_which == "rmove")
      problem = build_rmove_lp(instance);
    else if (dump_which == "ckr")
      problem = build_ckr_lp(instance);
    else if (dump_which == "rmove2")
      problem = build_rmove2_lp(instance);
    else
      problem = build_lagrangian_lp(instance, dump_alpha);
    dump_problem(dump_which, problem);
  });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& parse) {
    std::cerr << parse.what() << '\n';
    return 2;
  } catch (const algorithm_mismatch& mismatch) {
    std::cerr << "error: " << mismatch.what() << '\n';
    return 3;
  } catch (const capacity_error& capacity) {
    std::cerr << "error: " << capacity.what() << '\n';
    return 4;
  } catch (const parse_error& bad) {
    std::cerr << "error: " << bad.what() << '\n';
    return 2;
  } catch (const format_error& bad) {
    std::cerr << "error: " << bad.what() << '\n';
    return 2;
  } catch (const parameter_error& bad) {
    std::cerr << "error: " << bad.what() << '\n';
    return 2;
  } catch (const invalid_labeling_error& bad) {
    std::cerr << "error: " << bad.what() << '\n';
    return 2;
  } catch (const std::exception& unexpected) {
    std::cerr << "internal error: " << unexpected.what() << '\n';
    return 1;
  }
}
