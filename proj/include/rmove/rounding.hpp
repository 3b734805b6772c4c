#pragma once

#include <cstdint>
#include <vector>

#include "rmove/graph.hpp"
#include "rmove/lp.hpp"

namespace rmove {

// Shared grid parameters for one randomized rounding run.
struct RoundingParams {
  double g = 0.0;    // grid width (k-1)/(k(r+1))
  double rho = 0.0;  // shared shift in (0,g)
  std::uint64_t seed = 0;
};

// Grid width used by the budgeted rounding.
double default_grid_width(int k, int r);

// Threshold used by the component-based rounding: 1/(10*k*r*(r+2)).
double component_grid_width(int k, int r);

// Draws rho uniformly from (0,g) for the instance's grid.
RoundingParams draw_rounding_params(const Instance& instance,
                                    std::uint64_t seed);

// Snaps every entry down to the largest multiple of g not exceeding the
// entry plus the shared shift rho.  The result is not row-stochastic.
FractionalAssignment grid_round(const FractionalAssignment& x, double g,
                                double rho);

// Groups nodes by identical rounded vector and assigns each group one
// partition: a terminal's partition if the group contains one, otherwise
// the majority initial partition (ties to the lowest index).
Labeling assign_groups(const Instance& instance,
                       const FractionalAssignment& rounded);

// One random-shift rounding of a feasible relaxation solution; moves at
// most r nodes for every shift.
CutResult round_randomized(const Instance& instance,
                           const FractionalAssignment& x, std::uint64_t seed);

// The shift values the exhaustive sweep evaluates: one representative per
// maximal interval of (0,g) on which the rounding is constant.
std::vector<double> derand_rho_values(const Instance& instance,
                                      const FractionalAssignment& x);

// Evaluates every shift in derand_rho_values and returns the best result;
// ties go to the smaller shift.
CutResult round_derandomized(const Instance& instance,
                             const FractionalAssignment& x);

// Draft alternative: keep edges with fractional distance below the
// component threshold, then assign each connected component as a block.
CutResult component_round(const Instance& instance,
                          const FractionalAssignment& x);

}  // namespace rmove
