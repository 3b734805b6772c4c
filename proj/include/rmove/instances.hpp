#pragma once

#include <cstdint>
#include <string>

#include "rmove/graph.hpp"

namespace rmove {

enum class RelabelMode { keep, uniform_random };

struct SbmParams {
  int n = 0;
  int k = 2;         // must divide n; blocks are contiguous id ranges
  double p_in = 0.0;
  double p_out = 0.0;
  RelabelMode relabel = RelabelMode::keep;
  std::uint64_t seed = 0;
  int r = 0;  // move budget stored on the generated instance
};

// Planted-block random graph with unit weights; one terminal per block
// (the lowest id).  With relabel = uniform_random every non-terminal is
// reassigned a uniform partition; the edge set is unaffected.
Instance gen_sbm(const SbmParams& params);

// Worst-case family for the relaxation: a path whose first edge has weight
// epsilon followed by r unit edges, plus a disjoint unit path of tail_len
// nodes carrying the second terminal.  The relaxation optimum is
// epsilon/(r+1) while the best integer cut is min(epsilon, 1).
Instance gen_integrality_gap(int r, double epsilon, int tail_len);

// Reduction from densest-r-subgraph: partition 1 holds a copy of the input
// graph plus terminal t; partition 2 holds a clique of 2n^2+n nodes (one
// per input edge plus filler) and terminal s adjacent to everything except
// t.  Moving X into partition 2 changes the cut by exactly -2|E(X)|.
Instance gen_densest_reduction(const WeightedGraph& input, int r,
                               int node_bound = 10);

// Builds an instance from a plain `u v` edge list and a `node label`
// membership file, keeping the top_blocks largest labels, inducing the
// subgraph, and picking the lowest id of each block as its terminal.
// Self-loop lines are dropped; their count is reported via the out pointer.
Instance load_labeled_edgelist(const std::string& edges_path,
                               const std::string& membership_path,
                               int top_blocks,
                               int* dropped_self_loops = nullptr);

}  // namespace rmove
