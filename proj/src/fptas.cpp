#include <cmath>
#include <utility>
#include <vector>

#include "rmove/errors.hpp"
#include "rmove/fptas.hpp"

namespace rmove {

std::vector<int> candidate_set(const Instance& instance, double alpha) {
  if (!(alpha > 1.0) || !std::isfinite(alpha))
    throw parameter_error("candidate threshold needs alpha > 1");
  std::vector<int> candidates;
  if (instance.r == 0) return candidates;
  const double initial_cut = cut_value(instance.graph, instance.initial);
  const double threshold = (alpha - 1.0) / (instance.r * alpha) * initial_cut;
  for (int v = 0; v < instance.n(); ++v)
    if (!instance.is_terminal(v) && boundary_weight(instance, v) >= threshold)
      candidates.push_back(v);
  return candidates;
}

namespace {

// One branch-and-lift result: labels live on the instance the call saw,
// moves use top-level node ids for deterministic tie-breaking.
struct BranchResult {
  std::vector<int> labels;
  std::vector<std::pair<int, int>> moves;
};

BranchResult solve_branch(const Instance& instance, double alpha,
                          const std::vector<int>& top_id) {
  BranchResult best{instance.initial.of, {}};
  if (instance.r == 0) return best;
  double best_cut = cut_value(instance.graph, instance.initial);
  if (best_cut == 0.0) return best;  // nothing left to improve
  const double tolerance = instance.graph.cut_tolerance();

  for (int v : candidate_set(instance, alpha)) {
    for (int j = 1; j <= instance.k(); ++j) {
      if (j == instance.initial.of[v]) continue;
      const Contraction contraction = contract_into_terminal(instance, v, j);
      const Instance& child = contraction.instance;

      std::vector<int> child_top_id(child.n());
      for (int u = 0; u < instance.n(); ++u)
        if (u != v) child_top_id[contraction.new_id[u]] = top_id[u];

      const BranchResult sub =
          solve_branch(child.with_r(instance.r - 1), alpha, child_top_id);

      BranchResult lifted;
      lifted.labels.resize(instance.n());
      for (int u = 0; u < instance.n(); ++u)
        lifted.labels[u] = sub.labels[contraction.new_id[u]];
      lifted.moves.reserve(sub.moves.size() + 1);
      lifted.moves.emplace_back(top_id[v], j);
      lifted.moves.insert(lifted.moves.end(), sub.moves.begin(),
                          sub.moves.end());

      const double cut =
          cut_value(instance.graph, {instance.k(), lifted.labels});
      if (cut < best_cut - tolerance ||
          (cut <= best_cut + tolerance && lifted.moves < best.moves)) {
        best_cut = cut;
        best = std::move(lifted);
      }
    }
  }
  return best;
}

}  // namespace

CutResult fptas_solve(const Instance& instance, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw parameter_error("approximation scheme needs epsilon > 0");
  std::vector<int> top_id(instance.n());
  for (int v = 0; v < instance.n(); ++v) top_id[v] = v;
  BranchResult best = solve_branch(instance, 1.0 + epsilon, top_id);
  return make_cut_result(instance, {instance.k(), std::move(best.labels)},
                         "fptas");
}

}  // namespace rmove
