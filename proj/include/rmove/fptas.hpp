#pragma once

#include <vector>

#include "rmove/graph.hpp"

namespace rmove {

struct FptasParams {
  double epsilon = 0.0;  // > 0
  double alpha = 1.0;    // 1 + epsilon
};

// Non-terminal nodes whose initially-cut incident weight reaches
// ((alpha-1)/(r*alpha)) * c(C0); empty when r = 0.  Any single move that
// improves the cut by the required factor must move one of these.
std::vector<int> candidate_set(const Instance& instance, double alpha);

// Recursive contraction scheme: try every (candidate, target partition)
// pair, recurse with budget r-1 on the contracted instance, and keep the
// best lifted result, the unchanged initial cut included.  Guarantees
// cut <= (1+epsilon) * optimum and |moved| <= r.
CutResult fptas_solve(const Instance& instance, double epsilon);

}  // namespace rmove
