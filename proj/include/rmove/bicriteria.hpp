#pragma once

#include <cstdint>

#include "rmove/graph.hpp"
#include "rmove/lp.hpp"

namespace rmove {

/**
 * Graph with interpolated nodes inserted so that the endpoint vectors of
 * every edge differ in at most two coordinates.  Original node ids are
 * stable; inserted nodes are appended, so ids >= original_count are
 * synthetic and excluded from move accounting.
 */
struct SubdividedInstance {
  WeightedGraph graph;
  FractionalAssignment x;
  int original_count = 0;
};

// Parameters of one bicriteria rounding run, all drawn from the seed.
struct BicriteriaParams {
  double gamma = 0.0;          // in (1/2, 1)
  double lambda = 0.0;         // uniform on [(gamma+1)/3, gamma]
  double rho = 0.0;            // uniform on [0, lambda]
  bool sigma_reversed = false; // fair coin: sweep partitions k-1..1 instead of 1..k-1
};

// Repeatedly splits edges whose endpoint vectors differ in more than two
// entries; both halves inherit the original weight and the fractional
// objective sum(c * d) is preserved.
SubdividedInstance subdivide(const WeightedGraph& graph,
                             const FractionalAssignment& x);

// Permutation-threshold rounding: sweep partitions in sigma order, putting
// every still-unassigned node with entry > rho into the current partition;
// leftovers go to partition k.  Requires every edge's endpoints to differ
// in at most two entries.
Labeling ckr_round(const WeightedGraph& graph, const FractionalAssignment& x,
                   double rho, bool sigma_reversed);

// Budget-relaxed constant-factor rounding: pins every node owning an entry
// >= lambda, sweeps the rest on the subdivided graph, and restricts the
// result to the original nodes.  Moves at most floor(r/(1-gamma)) nodes;
// expected cut at most 5/(2*gamma-1) times the relaxation objective.
CutResult bicriteria_round(const Instance& instance,
                           const FractionalAssignment& x, double gamma,
                           std::uint64_t seed);

// floor(r / (1-gamma)), the hard move bound of bicriteria_round.
int bicriteria_move_bound(int r, double gamma);

}  // namespace rmove
