#pragma once

#include <vector>

#include "rmove/graph.hpp"

namespace rmove {

struct MinCut {
  double value = 0.0;
  std::vector<int> source_side;  // ascending; canonical minimal side
};

// Exact max-flow / min s-t cut via augmenting paths; the returned side is
// the set of nodes residual-reachable from s, the unique minimal minimum
// cut, and the value is recomputed as the exact crossing weight.
MinCut min_st_cut(const WeightedGraph& graph, int s, int t);

// G with every non-terminal bound to its initial side's terminal by an
// extra edge of weight alpha.
WeightedGraph build_alpha_graph(const Instance& instance, double alpha);

// Non-terminals whose side of the cut differs from their initial label
// (source side = partition 1), ascending.
std::vector<int> moved_of_cut(const Instance& instance,
                              const std::vector<int>& source_side);

// Two-partition labeling that moves exactly the given non-terminal nodes.
Labeling labeling_moving(const Instance& instance,
                         const std::vector<int>& moved);

struct Breakpoint {
  int size = 0;                // |S_i|, strictly decreasing down the list
  std::vector<int> moved;      // S_i
  double delta = 0.0;          // cut value when moving exactly S_i
  double witness_alpha = 0.0;  // an alpha whose min cut produced S_i
};

struct BreakpointList {
  std::vector<Breakpoint> breakpoints;  // sizes descending, last has size 0
  int min_cut_calls = 0;
};

// Active-pair refinement enumerating every moved-set size a min cut of
// G^alpha attains as alpha sweeps upward.
BreakpointList find_breakpoints(const Instance& instance);

// Picks the breakpoint set fitting the budget: S_0 when r >= |S_0|,
// otherwise the first S_j with |S_j| <= r.  Cut value is within factor
// (r+1)/(r+1-r*) of the optimum, r* being the optimum's move count.
CutResult two_part_solve(const Instance& instance);

}  // namespace rmove
