#pragma once

#include "rmove/graph.hpp"

namespace rmove {

// Up to r rounds, each applying the single move with the most negative cut
// delta over all (non-terminal, unfrozen node, target partition) pairs;
// halts once the best delta is >= 0.  Moved nodes are frozen.
CutResult greedy_best_move(const Instance& instance);

// Up to r rounds, each picking the unfrozen non-terminal with the largest
// current boundary weight and its most-adjacent other partition; halts when
// that move would strictly increase the cut (zero-delta moves execute).
CutResult greedy_boundary(const Instance& instance);

// Exact optimum by enumerating every subset of non-terminals of size <= r
// and every reassignment of the subset.  Ties prefer fewer moves, then the
// first candidate in (node ascending, partition ascending) order.  Refuses
// instances whose enumeration exceeds work_bound assignments.
CutResult exact_brute_force(const Instance& instance,
                            double work_bound = 5e6);

}  // namespace rmove
