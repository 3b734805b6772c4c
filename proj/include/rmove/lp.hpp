#pragma once

#include <limits>
#include <string>
#include <vector>

#include "rmove/graph.hpp"

namespace rmove {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct LpTerm {
  int var = 0;
  double coeff = 0.0;
};

enum class LpRelation { less_equal, equal, greater_equal };

struct LpConstraint {
  std::vector<LpTerm> terms;
  LpRelation relation = LpRelation::equal;
  double rhs = 0.0;
};

/**
 * Minimization linear program over real variables with per-variable bounds.
 * Objective value reported by the solver includes objective_constant.
 */
struct LpProblem {
  int var_count = 0;
  std::vector<LpTerm> objective;
  double objective_constant = 0.0;
  std::vector<LpConstraint> constraints;
  std::vector<double> lower;  // per variable, default 0
  std::vector<double> upper;  // per variable, default +inf
  std::vector<std::string> names;

  int add_variable(std::string name, double lo = 0.0, double hi = kInfinity) {
    names.push_back(std::move(name));
    lower.push_back(lo);
    upper.push_back(hi);
    return var_count++;
  }

  void add_constraint(std::vector<LpTerm> terms, LpRelation relation,
                      double rhs) {
    constraints.push_back({std::move(terms), relation, rhs});
  }
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> values;
  double objective = 0.0;
};

// Deterministic two-phase dense-tableau simplex (Bland's anti-cycling rule).
LpSolution solve_lp(const LpProblem& problem);

// Row-stochastic n-by-k matrix assigning each node a fractional mix of
// partitions.  Partition indices are 1-based to match Labeling.
struct FractionalAssignment {
  int n = 0;
  int k = 0;
  std::vector<double> x;  // row-major, x[v*k + (i-1)]

  FractionalAssignment() = default;
  FractionalAssignment(int n_in, int k_in)
      : n(n_in), k(k_in), x(static_cast<std::size_t>(n_in) * k_in, 0.0) {}

  double at(int v, int i) const { return x[static_cast<std::size_t>(v) * k + i - 1]; }
  double& at(int v, int i) { return x[static_cast<std::size_t>(v) * k + i - 1]; }
};

// Half the l1 distance between the rows of u and v.
double distance(const FractionalAssignment& x, int u, int v);

// Integer labeling viewed as a 0/1 assignment.
FractionalAssignment integral_assignment(const Labeling& labeling);

// Total fractional move mass sum over non-terminals of (1 - X_v^{initial}).
double move_mass(const Instance& instance, const FractionalAssignment& x);

/**
 * Builders for the linear programs.  Variable layout of the full relaxation:
 * the X block comes first (x_{v,i} at index v*k+i-1), then one y_{e,i} per
 * edge and partition, then one distance variable per edge.
 */
LpProblem build_rmove_lp(const Instance& instance);

// Same relaxation without the move-budget row (classic multiway cut LP).
LpProblem build_ckr_lp(const Instance& instance);

// Scalar two-partition form: one variable x_v per node, x of terminal 1
// pinned to 1, terminal 2 pinned to 0, plus the move-budget row.
LpProblem build_rmove2_lp(const Instance& instance);

// Two-partition form with the move row priced into the objective at rate
// alpha instead of enforced; objective_constant carries the fixed part.
LpProblem build_lagrangian_lp(const Instance& instance, double alpha);

// Reads the X block of a solution to build_rmove_lp / build_ckr_lp output,
// snaps terminal rows, clamps tiny negatives, renormalizes rows.  Checks the
// move-budget invariant only when check_move_budget is true (the budget-free
// relaxation may exceed it legitimately).
FractionalAssignment extract_assignment(const Instance& instance,
                                        const LpSolution& solution,
                                        bool check_move_budget = true);

// Describes the first violated FractionalAssignment invariant, or returns
// an empty string when x is feasible for the instance (move budget checked
// only when check_move_budget is set).  Callers wrap the message in their
// module's error type.
std::string assignment_violation(const Instance& instance,
                                 const FractionalAssignment& x,
                                 bool check_move_budget);

// assignment_violation wrapped in lp_extraction_error.
void check_assignment(const Instance& instance, const FractionalAssignment& x,
                      bool check_move_budget);

struct RelaxationSolution {
  double objective = 0.0;
  FractionalAssignment assignment;
};

// Fast solvers for the two relaxations.  They use a compact internal
// formulation (terminals substituted, one difference row per edge and
// partition) and a revised simplex warm-started from the initial labeling;
// optima agree with solve_lp on the literal builders to 1e-7 relative.
RelaxationSolution solve_rmove_relaxation(const Instance& instance);
RelaxationSolution solve_multiway_relaxation(const Instance& instance);

// Plain text dump, one constraint per line, for external cross-checking.
std::string format_lp(const LpProblem& problem);

}  // namespace rmove
