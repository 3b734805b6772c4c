#include <cmath>
#include <string>
#include <vector>

#include "rmove/baselines.hpp"
#include "rmove/errors.hpp"

namespace rmove {

namespace {

// Cut change if v moves from its current partition to j: edges to current
// same-partition neighbors become cut, edges into j stop being cut.
double move_delta(const Instance& instance, const std::vector<int>& labels,
                  int v, int j) {
  double delta = 0.0;
  for (const WeightedGraph::Neighbor& nb : instance.graph.neighbors(v)) {
    if (labels[nb.node] == labels[v]) delta += nb.weight;
    if (labels[nb.node] == j) delta -= nb.weight;
  }
  return delta;
}

}  // namespace

CutResult greedy_best_move(const Instance& instance) {
  const int n = instance.n();
  const int k = instance.k();
  std::vector<int> labels = instance.initial.of;
  std::vector<bool> frozen(n, false);
  for (int s : instance.terminals) frozen[s] = true;

  for (int round = 0; round < instance.r; ++round) {
    int best_v = -1, best_j = -1;
    double best_delta = 0.0;
    for (int v = 0; v < n; ++v) {
      if (frozen[v]) continue;
      for (int j = 1; j <= k; ++j) {
        if (j == labels[v]) continue;
        const double delta = move_delta(instance, labels, v, j);
        if (delta < best_delta) {
          best_delta = delta;
          best_v = v;
          best_j = j;
        }
      }
    }
    if (best_v < 0) break;  // no strictly improving move left
    labels[best_v] = best_j;
    frozen[best_v] = true;
  }
  return make_cut_result(instance, {k, std::move(labels)}, "greedy-best");
}

CutResult greedy_boundary(const Instance& instance) {
  const int n = instance.n();
  const int k = instance.k();
  std::vector<int> labels = instance.initial.of;
  std::vector<bool> frozen(n, false);
  for (int s : instance.terminals) frozen[s] = true;

  for (int round = 0; round < instance.r; ++round) {
    // Most boundary weight under the current labels, lowest id on ties.
    int best_v = -1;
    double best_boundary = -1.0;
    for (int v = 0; v < n; ++v) {
      if (frozen[v]) continue;
      double boundary = 0.0;
      for (const WeightedGraph::Neighbor& nb : instance.graph.neighbors(v))
        if (labels[nb.node] != labels[v]) boundary += nb.weight;
      if (boundary > best_boundary) {
        best_boundary = boundary;
        best_v = v;
      }
    }
    if (best_v < 0) break;  // every non-terminal already moved

    // Partition the node is most connected to, lowest index on ties.
    int best_j = -1;
    double best_attraction = -1.0;
    for (int j = 1; j <= k; ++j) {
      if (j == labels[best_v]) continue;
      double attraction = 0.0;
      for (const WeightedGraph::Neighbor& nb : instance.graph.neighbors(best_v))
        if (labels[nb.node] == j) attraction += nb.weight;
      if (attraction > best_attraction) {
        best_attraction = attraction;
        best_j = j;
      }
    }
    // The move executes unless it would strictly increase the cut.
    if (move_delta(instance, labels, best_v, best_j) > 0.0) break;
    labels[best_v] = best_j;
    frozen[best_v] = true;
  }
  return make_cut_result(instance, {k, std::move(labels)}, "greedy-boundary");
}

namespace {

// Enumeration size: sum over subset sizes s of C(n', s) * (k-1)^s.
double brute_force_work(int nonterminals, int k, int r) {
  double total = 0.0;
  double binom = 1.0;
  double assignments = 1.0;
  for (int s = 0; s <= std::min(r, nonterminals); ++s) {
    total += binom * assignments;
    if (!std::isfinite(total)) return total;
    binom = binom * (nonterminals - s) / (s + 1);
    assignments *= k - 1;
  }
  return total;
}

struct BruteForceSearch {
  const Instance& instance;
  std::vector<int> movable;  // non-terminal ids ascending
  std::vector<int> labels;
  double cut = 0.0;
  int moves_used = 0;

  double best_cut = 0.0;
  std::vector<int> best_labels;
  int best_moves = 0;

  explicit BruteForceSearch(const Instance& inst)
      : instance(inst), labels(inst.initial.of) {
    for (int v = 0; v < inst.n(); ++v)
      if (!inst.is_terminal(v)) movable.push_back(v);
    cut = cut_value(inst.graph, inst.initial);
    best_cut = cut;
    best_labels = labels;
  }

  void consider() {
    const double tol = instance.graph.cut_tolerance();
    if (cut < best_cut - tol) {
      best_cut = cut;
      best_labels = labels;
      best_moves = moves_used;
    } else if (cut <= best_cut + tol && moves_used < best_moves) {
      best_cut = cut;
      best_labels = labels;
      best_moves = moves_used;
    }
  }

  void search(std::size_t start) {
    if (moves_used == instance.r) return;
    for (std::size_t idx = start; idx < movable.size(); ++idx) {
      const int v = movable[idx];
      const int original = labels[v];
      for (int j = 1; j <= instance.initial.k; ++j) {
        if (j == original) continue;
        double delta = 0.0;
        for (const WeightedGraph::Neighbor& nb : instance.graph.neighbors(v)) {
          if (labels[nb.node] == original) delta += nb.weight;
          if (labels[nb.node] == j) delta -= nb.weight;
        }
        labels[v] = j;
        cut += delta;
        ++moves_used;
        consider();
        search(idx + 1);
        --moves_used;
        cut -= delta;
        labels[v] = original;
      }
    }
  }
};

}  // namespace

CutResult exact_brute_force(const Instance& instance, double work_bound) {
  const int nonterminals = instance.n() - instance.k();
  const double work = brute_force_work(nonterminals, instance.k(), instance.r);
  if (!(work <= work_bound))
    throw capacity_error("exhaustive search needs " + std::to_string(work) +
                         " assignments, above the bound " +
                         std::to_string(work_bound));
  BruteForceSearch search(instance);
  search.search(0);
  return make_cut_result(instance,
                         {instance.initial.k, std::move(search.best_labels)},
                         "exact");
}

}  // namespace rmove
