#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rmove/errors.hpp"

namespace rmove {

struct Edge {
  int u = 0;
  int v = 0;
  double weight = 0.0;  // non-negative
};

/**
 * Undirected weighted graph, immutable after construction.
 *
 * Construction canonicalizes the edge list: endpoints are ordered u < v,
 * parallel edges are merged by summing weights, and the list is sorted
 * lexicographically, so structurally equal graphs compare equal edge by
 * edge regardless of input order.
 */
class WeightedGraph {
 public:
  struct Neighbor {
    int node = 0;
    double weight = 0.0;
  };

  WeightedGraph(int node_count, std::vector<Edge> edges);

  int node_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Neighbor>& neighbors(int v) const { return adjacency_[v]; }
  double total_weight() const { return total_weight_; }

  // Absolute tolerance for comparing cut values on this graph.
  double cut_tolerance() const { return 1e-9 * (1.0 + total_weight_); }

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  double total_weight_;
};

// Assignment of every node to a partition in {1..k}.
struct Labeling {
  int k = 0;
  std::vector<int> of;  // of[v] = partition of node v, 1-based

  int operator()(int v) const { return of[v]; }
};

// Throws invalid_labeling_error unless the labeling covers exactly
// node_count nodes with labels in {1..k}.
void validate_labeling(const Labeling& labeling, int node_count);

/**
 * A move-budgeted multiway cut instance: graph, initial partitioning,
 * one terminal per partition, and the move budget r.  Terminal s_i is
 * pinned to partition i and can never be relabeled.
 */
struct Instance {
  WeightedGraph graph;
  Labeling initial;
  std::vector<int> terminals;  // terminals[i-1] = s_i, has initial label i
  int r = 0;

  Instance(WeightedGraph graph_in, Labeling initial_in,
           std::vector<int> terminals_in, int r_in);

  int n() const { return graph.node_count(); }
  int k() const { return static_cast<int>(terminals.size()); }

  bool is_terminal(int v) const {
    for (int s : terminals)
      if (s == v) return true;
    return false;
  }

  Instance with_r(int new_r) const {
    return Instance(graph, initial, terminals, new_r);
  }
};

// Outcome of one solver run on an instance.
struct CutResult {
  Labeling labeling;
  double cut_value = 0.0;
  std::vector<int> moved;  // non-terminals with labeling != initial, ascending
  std::string algorithm;
  std::optional<std::uint64_t> seed;
};

// Result of merging a non-terminal node into a terminal.  new_id maps every
// original node id to its id in the contracted instance; the contracted node
// maps to the terminal it was merged into.
struct Contraction {
  Instance instance;
  std::vector<int> new_id;
};

// Total weight of edges whose endpoints get different labels.
double cut_value(const WeightedGraph& graph, const Labeling& labeling);

// Non-terminal nodes whose label differs from the initial labeling,
// ascending.  Throws terminal_moved_error if a terminal was relabeled.
std::vector<int> moved_set(const Instance& instance, const Labeling& labeling);

// Weight of initially cut edges incident to v.
double boundary_weight(const Instance& instance, int v);

// Merges non-terminal v into terminal s_j; every edge (v,u) becomes extra
// weight on (s_j,u) and the edge (v,s_j), if present, vanishes.
Contraction contract_into_terminal(const Instance& instance, int v, int j);

// Builds a CutResult with recomputed cut value and moved set.
CutResult make_cut_result(const Instance& instance, Labeling labeling,
                          std::string algorithm,
                          std::optional<std::uint64_t> seed = std::nullopt);

Instance load_instance(const std::string& path);
void save_instance(const Instance& instance, const std::string& path);

// Structural equality: same node count, canonical edge lists equal to within
// an absolute weight tolerance, same labels, terminals, and budget.
bool structurally_equal(const Instance& a, const Instance& b,
                        double weight_tolerance = 0.0);

}  // namespace rmove
