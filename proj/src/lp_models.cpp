#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "rmove/errors.hpp"
#include "rmove/lp.hpp"
#include "rmove/rng.hpp"

namespace rmove {

double distance(const FractionalAssignment& x, int u, int v) {
  double total = 0.0;
  for (int i = 1; i <= x.k; ++i) total += std::abs(x.at(u, i) - x.at(v, i));
  return 0.5 * total;
}

FractionalAssignment integral_assignment(const Labeling& labeling) {
  FractionalAssignment x(static_cast<int>(labeling.of.size()), labeling.k);
  for (int v = 0; v < x.n; ++v) x.at(v, labeling.of[v]) = 1.0;
  return x;
}

double move_mass(const Instance& instance, const FractionalAssignment& x) {
  double total = 0.0;
  for (int v = 0; v < instance.n(); ++v)
    total += 1.0 - x.at(v, instance.initial.of[v]);
  return total;
}

namespace {

std::string node_pair(const Edge& e) {
  return std::to_string(e.u) + "_" + std::to_string(e.v);
}

// Shared emitter for the full relaxation; the move-budget row is the only
// difference between the budgeted and classic variants.
LpProblem build_partition_lp(const Instance& instance, bool with_move_row) {
  const int n = instance.n();
  const int k = instance.k();
  const int m = instance.graph.edge_count();
  LpProblem lp;

  for (int v = 0; v < n; ++v)
    for (int i = 1; i <= k; ++i)
      lp.add_variable("x_" + std::to_string(v) + "_" + std::to_string(i));
  for (int e = 0; e < m; ++e)
    for (int i = 1; i <= k; ++i)
      lp.add_variable("y_" + node_pair(instance.graph.edges()[e]) + "_" +
                      std::to_string(i));
  for (int e = 0; e < m; ++e)
    lp.add_variable("d_" + node_pair(instance.graph.edges()[e]));

  const auto xv = [k](int v, int i) { return v * k + i - 1; };
  const auto yv = [n, k](int e, int i) { return n * k + e * k + i - 1; };
  const auto dv = [n, k, m](int e) { return n * k + m * k + e; };

  for (int e = 0; e < m; ++e)
    lp.objective.push_back({dv(e), instance.graph.edges()[e].weight});

  // Distance definition: d_uv = (1/2) sum_i y_uv_i.
  for (int e = 0; e < m; ++e) {
    std::vector<LpTerm> terms{{dv(e), 1.0}};
    for (int i = 1; i <= k; ++i) terms.push_back({yv(e, i), -0.5});
    lp.add_constraint(std::move(terms), LpRelation::equal, 0.0);
  }
  // y dominates the positive and the negative coordinate difference.
  for (int e = 0; e < m; ++e) {
    const Edge& ed = instance.graph.edges()[e];
    for (int i = 1; i <= k; ++i)
      lp.add_constraint(
          {{yv(e, i), 1.0}, {xv(ed.u, i), -1.0}, {xv(ed.v, i), 1.0}},
          LpRelation::greater_equal, 0.0);
  }
  for (int e = 0; e < m; ++e) {
    const Edge& ed = instance.graph.edges()[e];
    for (int i = 1; i <= k; ++i)
      lp.add_constraint(
          {{yv(e, i), 1.0}, {xv(ed.v, i), -1.0}, {xv(ed.u, i), 1.0}},
          LpRelation::greater_equal, 0.0);
  }
  // Each node spreads unit mass over the partitions.
  for (int v = 0; v < n; ++v) {
    std::vector<LpTerm> terms;
    for (int i = 1; i <= k; ++i) terms.push_back({xv(v, i), 1.0});
    lp.add_constraint(std::move(terms), LpRelation::equal, 1.0);
  }
  // Terminals are pinned to their own partitions.
  for (int t = 0; t < k; ++t) {
    const int s = instance.terminals[t];
    for (int i = 1; i <= k; ++i)
      lp.add_constraint({{xv(s, i), 1.0}}, LpRelation::equal,
                        i == t + 1 ? 1.0 : 0.0);
  }
  // Move budget: sum_v (1 - x_v^{initial}) <= r, written over the x's.
  if (with_move_row) {
    std::vector<LpTerm> terms;
    for (int v = 0; v < n; ++v)
      terms.push_back({xv(v, instance.initial.of[v]), -1.0});
    lp.add_constraint(std::move(terms), LpRelation::less_equal,
                      static_cast<double>(instance.r) - n);
  }
  return lp;
}

// Shared emitter for the scalar two-partition programs.  x_v is the mass a
// node puts on partition 1.  The x <= 1 bound is implicit in the vector form
// (row sums) but must be explicit here: without it the priced variant could
// pay initially-partition-1 nodes to exceed unit mass.
LpProblem build_two_part_lp(const Instance& instance, bool with_move_row,
                            double alpha) {
  if (instance.k() != 2)
    throw parameter_error("two-partition LP requires k = 2");
  const int n = instance.n();
  const int m = instance.graph.edge_count();
  LpProblem lp;
  for (int v = 0; v < n; ++v)
    lp.add_variable("x_" + std::to_string(v), 0.0, 1.0);
  for (int e = 0; e < m; ++e)
    lp.add_variable("y_" + node_pair(instance.graph.edges()[e]));

  for (int e = 0; e < m; ++e)
    lp.objective.push_back({n + e, instance.graph.edges()[e].weight});
  if (!with_move_row && alpha != 0.0) {
    // Priced move mass: alpha * (sum_{l_v=1} (1 - x_v) + sum_{l_v=2} x_v).
    for (int v = 0; v < n; ++v) {
      if (instance.initial.of[v] == 1) {
        lp.objective.push_back({v, -alpha});
        lp.objective_constant += alpha;
      } else {
        lp.objective.push_back({v, alpha});
      }
    }
  }

  for (int e = 0; e < m; ++e) {
    const Edge& ed = instance.graph.edges()[e];
    lp.add_constraint({{n + e, 1.0}, {ed.u, -1.0}, {ed.v, 1.0}},
                      LpRelation::greater_equal, 0.0);
    lp.add_constraint({{n + e, 1.0}, {ed.v, -1.0}, {ed.u, 1.0}},
                      LpRelation::greater_equal, 0.0);
  }
  lp.add_constraint({{instance.terminals[0], 1.0}}, LpRelation::equal, 1.0);
  lp.add_constraint({{instance.terminals[1], 1.0}}, LpRelation::equal, 0.0);
  if (with_move_row) {
    // sum_{l_v=1} (1 - x_v) + sum_{l_v=2} x_v <= r.
    std::vector<LpTerm> terms;
    double fixed = 0.0;
    for (int v = 0; v < n; ++v) {
      if (instance.initial.of[v] == 1) {
        terms.push_back({v, -1.0});
        fixed += 1.0;
      } else {
        terms.push_back({v, 1.0});
      }
    }
    lp.add_constraint(std::move(terms), LpRelation::less_equal,
                      instance.r - fixed);
  }
  return lp;
}

// Snaps a raw X matrix into a valid FractionalAssignment: terminal rows
// become exact unit vectors, tiny negatives are clamped, rows renormalized.
FractionalAssignment finalize_assignment(const Instance& instance,
                                         FractionalAssignment raw,
                                         bool check_move_budget) {
  const int k = instance.k();
  for (int t = 0; t < k; ++t) {
    const int s = instance.terminals[t];
    for (int i = 1; i <= k; ++i) {
      const double want = i == t + 1 ? 1.0 : 0.0;
      if (std::abs(raw.at(s, i) - want) > 1e-6)
        throw lp_extraction_error("terminal row of node " + std::to_string(s) +
                                  " deviates from its unit vector");
      raw.at(s, i) = want;
    }
  }
  for (int v = 0; v < raw.n; ++v) {
    if (instance.is_terminal(v)) continue;
    double sum = 0.0;
    for (int i = 1; i <= k; ++i) {
      double& entry = raw.at(v, i);
      if (entry < -1e-9)
        throw lp_extraction_error("entry (" + std::to_string(v) + "," +
                                  std::to_string(i) + ") is negative");
      if (entry < 0.0) entry = 0.0;
      sum += entry;
    }
    if (std::abs(sum - 1.0) > 1e-7)
      throw lp_extraction_error("row " + std::to_string(v) + " sums to " +
                                std::to_string(sum));
    for (int i = 1; i <= k; ++i) {
      double& entry = raw.at(v, i);
      entry /= sum;
      if (entry > 1.0) entry = 1.0;
    }
  }
  if (check_move_budget) {
    const double mass = move_mass(instance, raw);
    if (mass > instance.r + 1e-6)
      throw lp_extraction_error("move mass " + std::to_string(mass) +
                                " exceeds budget " +
                                std::to_string(instance.r));
  }
  return raw;
}

}  // namespace

LpProblem build_rmove_lp(const Instance& instance) {
  return build_partition_lp(instance, true);
}

LpProblem build_ckr_lp(const Instance& instance) {
  return build_partition_lp(instance, false);
}

LpProblem build_rmove2_lp(const Instance& instance) {
  return build_two_part_lp(instance, true, 0.0);
}

LpProblem build_lagrangian_lp(const Instance& instance, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw parameter_error("alpha must be a finite non-negative real");
  return build_two_part_lp(instance, false, alpha);
}

FractionalAssignment extract_assignment(const Instance& instance,
                                        const LpSolution& solution,
                                        bool check_move_budget) {
  if (solution.status != LpStatus::optimal)
    throw lp_extraction_error("solution is not optimal");
  const int n = instance.n();
  const int k = instance.k();
  if (static_cast<int>(solution.values.size()) < n * k)
    throw lp_extraction_error("solution lacks the X block");
  FractionalAssignment raw(n, k);
  for (int v = 0; v < n; ++v)
    for (int i = 1; i <= k; ++i) raw.at(v, i) = solution.values[v * k + i - 1];
  return finalize_assignment(instance, std::move(raw), check_move_budget);
}

std::string assignment_violation(const Instance& instance,
                                 const FractionalAssignment& x,
                                 bool check_move_budget) {
  const int n = instance.n();
  const int k = instance.k();
  if (x.n != n || x.k != k) return "matrix shape does not match the instance";
  for (int t = 0; t < k; ++t) {
    const int s = instance.terminals[t];
    for (int i = 1; i <= k; ++i)
      if (x.at(s, i) != (i == t + 1 ? 1.0 : 0.0))
        return "terminal row of node " + std::to_string(s) +
               " is not its exact unit vector";
  }
  for (int v = 0; v < n; ++v) {
    double sum = 0.0;
    for (int i = 1; i <= k; ++i) {
      const double entry = x.at(v, i);
      if (entry < -1e-9)
        return "entry (" + std::to_string(v) + "," + std::to_string(i) +
               ") is negative";
      sum += entry;
    }
    if (std::abs(sum - 1.0) > 1e-7)
      return "row " + std::to_string(v) + " sums to " + std::to_string(sum);
  }
  if (check_move_budget) {
    const double mass = move_mass(instance, x);
    if (mass > instance.r + 1e-6)
      return "move mass " + std::to_string(mass) + " exceeds budget " +
             std::to_string(instance.r);
  }
  return {};
}

void check_assignment(const Instance& instance, const FractionalAssignment& x,
                      bool check_move_budget) {
  const std::string violation =
      assignment_violation(instance, x, check_move_budget);
  if (!violation.empty()) throw lp_extraction_error(violation);
}

namespace {

constexpr double kFastCostTol = 1e-9;
constexpr double kFastPivotTol = 1e-9;

/**
 * Compact equality form of the relaxation with terminals substituted out.
 * Rows: per (edge, partition) a difference row  x_u^i - x_v^i - p + n = c
 * (p, n split the coordinate difference and each costs w/2), then one
 * unit-mass row per non-terminal, then optionally the budget row
 * sum_v x_v^{initial} - s = #non-terminals - r.  The initial labeling gives
 * a feasible starting basis, so no phase 1 is ever needed.
 */
struct CompactModel {
  int rows = 0;
  int cols = 0;
  int k = 0;
  int m = 0;                                 // edge count
  bool budget = false;                       // budget row present
  int x_cols = 0;                            // one block of k per non-terminal
  std::vector<int> nonterm;                  // dense index -> node id
  std::vector<int> dense_of;                 // node id -> dense index or -1
  std::vector<double> cost;                  // per column
  std::vector<double> rhs;                   // per row
  std::vector<std::vector<LpTerm>> columns;  // sparse (row, coeff) lists
  std::vector<int> crash_basis;              // per row: starting basic column
  std::vector<double> crash_values;          // per row: starting basic value
};

CompactModel build_compact(const Instance& instance, bool with_budget_row) {
  const int n = instance.n();
  const int k = instance.k();
  const int m = instance.graph.edge_count();
  CompactModel mod;
  mod.k = k;
  mod.m = m;
  mod.dense_of.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (instance.is_terminal(v)) continue;
    mod.dense_of[v] = static_cast<int>(mod.nonterm.size());
    mod.nonterm.push_back(v);
  }
  const int nt = static_cast<int>(mod.nonterm.size());
  mod.x_cols = nt * k;
  mod.budget = with_budget_row && instance.r < nt;
  mod.rows = m * k + nt + (mod.budget ? 1 : 0);
  mod.cols = mod.x_cols + 2 * m * k + (mod.budget ? 1 : 0);
  mod.cost.assign(mod.cols, 0.0);
  mod.rhs.assign(mod.rows, 0.0);
  mod.columns.assign(mod.cols, {});
  mod.crash_basis.assign(mod.rows, -1);
  mod.crash_values.assign(mod.rows, 0.0);

  const auto xcol = [&](int v, int i) { return mod.dense_of[v] * k + i - 1; };
  const auto pcol = [&](int e, int i) {
    return mod.x_cols + 2 * (e * k + i - 1);
  };

  for (int e = 0; e < m; ++e) {
    const Edge& ed = instance.graph.edges()[e];
    for (int i = 1; i <= k; ++i) {
      const int row = e * k + i - 1;
      double rhs = 0.0;
      if (mod.dense_of[ed.u] >= 0)
        mod.columns[xcol(ed.u, i)].push_back({row, 1.0});
      else if (instance.initial.of[ed.u] == i)
        rhs -= 1.0;
      if (mod.dense_of[ed.v] >= 0)
        mod.columns[xcol(ed.v, i)].push_back({row, -1.0});
      else if (instance.initial.of[ed.v] == i)
        rhs += 1.0;
      mod.rhs[row] = rhs;
      mod.columns[pcol(e, i)].push_back({row, -1.0});
      mod.columns[pcol(e, i) + 1].push_back({row, 1.0});
      mod.cost[pcol(e, i)] = ed.weight * 0.5;
      mod.cost[pcol(e, i) + 1] = ed.weight * 0.5;
      // At the initial labeling the positive or the negative part carries
      // the 0/1 coordinate difference.
      const double diff = (instance.initial.of[ed.u] == i ? 1.0 : 0.0) -
                          (instance.initial.of[ed.v] == i ? 1.0 : 0.0);
      if (diff < 0.0) {
        mod.crash_basis[row] = pcol(e, i) + 1;
        mod.crash_values[row] = -diff;
      } else {
        mod.crash_basis[row] = pcol(e, i);
        mod.crash_values[row] = diff;
      }
    }
  }
  for (int t = 0; t < nt; ++t) {
    const int row = m * k + t;
    const int v = mod.nonterm[t];
    for (int i = 1; i <= k; ++i) mod.columns[xcol(v, i)].push_back({row, 1.0});
    mod.rhs[row] = 1.0;
    mod.crash_basis[row] = xcol(v, instance.initial.of[v]);
    mod.crash_values[row] = 1.0;
  }
  if (mod.budget) {
    const int row = mod.rows - 1;
    const int slack = mod.cols - 1;
    for (int t = 0; t < nt; ++t) {
      const int v = mod.nonterm[t];
      mod.columns[xcol(v, instance.initial.of[v])].push_back({row, 1.0});
    }
    mod.columns[slack].push_back({row, -1.0});
    mod.rhs[row] = static_cast<double>(nt - instance.r);
    mod.crash_basis[row] = slack;
    mod.crash_values[row] = static_cast<double>(instance.r);
  }
  return mod;
}

// Revised simplex with an explicit dense basis inverse.  Pricing is Devex
// (approximate steepest edge); long degenerate stalls first switch to a
// deterministic randomized column choice to break ties and finally to
// Bland's rule as a guaranteed-terminating backstop.  Terminates via a
// sparse true-residual check with an emergency dense refactorization.
class RevisedSimplex {
 public:
  explicit RevisedSimplex(const CompactModel& mod)
      : mod_(mod), rows_(mod.rows), cols_(mod.cols) {}

  void solve() {
    basis_ = mod_.crash_basis;
    xb_ = mod_.crash_values;
    pos_.assign(cols_, -1);
    for (int i = 0; i < rows_; ++i) pos_[basis_[i]] = i;
    build_crash_inverse();
    compute_duals();
    rhs_scale_ = 1.0;
    for (double b : mod_.rhs) rhs_scale_ = std::max(rhs_scale_, std::abs(b));

    for (int attempt = 0; attempt < 4; ++attempt) {
      run();
      if (accurate()) return;
      refactorize();
    }
    throw internal_error("relaxation solver failed to reach a stable optimum");
  }

  double column_value(int col) const {
    return pos_[col] >= 0 ? xb_[pos_[col]] : 0.0;
  }

  double objective() const {
    double total = 0.0;
    for (int i = 0; i < rows_; ++i) total += mod_.cost[basis_[i]] * xb_[i];
    return total;
  }

 private:
  double& at(int i, int j) {
    return binv_[static_cast<std::size_t>(i) * rows_ + j];
  }

  // The crash basis is block-triangular: each unit-mass row is solved by
  // its X column, each difference row by its own p or n column, the budget
  // row by its slack.  Hence the inverse in closed form: unit-mass rows are
  // identity rows; difference row q with basic sign s gets s on its diagonal
  // and -s * coeff under the unit-mass row of any basic X column appearing
  // in q; the budget row collects the unit-mass rows minus itself.
  void build_crash_inverse() {
    binv_.assign(static_cast<std::size_t>(rows_) * rows_, 0.0);
    const int mk = mod_.m * mod_.k;
    const int nt = static_cast<int>(mod_.nonterm.size());
    for (int t = 0; t < nt; ++t) at(mk + t, mk + t) = 1.0;
    std::vector<double> sign(mk, 0.0);
    for (int row = 0; row < mk; ++row) {
      const double s = mod_.columns[basis_[row]][0].coeff;  // -1: p, +1: n
      sign[row] = s;
      at(row, row) = s;
    }
    for (int t = 0; t < nt; ++t) {
      const int xrow = mk + t;
      for (const LpTerm& entry : mod_.columns[basis_[xrow]])
        if (entry.var < mk)
          at(entry.var, xrow) = -sign[entry.var] * entry.coeff;
    }
    if (mod_.budget) {
      const int row = rows_ - 1;
      at(row, row) = -1.0;
      for (int t = 0; t < nt; ++t) at(row, mk + t) = 1.0;
    }
  }

  void compute_duals() {
    y_.assign(rows_, 0.0);
    for (int i = 0; i < rows_; ++i) {
      const double cb = mod_.cost[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &binv_[static_cast<std::size_t>(i) * rows_];
      for (int j = 0; j < rows_; ++j) y_[j] += cb * row[j];
    }
    duals_fresh_ = true;
  }

  double reduced_cost(int col) const {
    double d = mod_.cost[col];
    for (const LpTerm& entry : mod_.columns[col])
      d -= y_[entry.var] * entry.coeff;
    return d;
  }

  // Pricing modes, escalated on degenerate stalls.
  enum class Pricing { devex, randomized, bland };

  void run() {
    int stall = 0;
    int escapes = 0;
    int random_left = 0;
    Pricing mode = Pricing::devex;
    devex_.assign(cols_, 1.0);
    double objective_now = objective();
    std::vector<double> alpha(rows_);
    std::uint64_t noise = 0x2545f4914f6cdd1dULL;  // deterministic escape rng
    long long guard = 0;

    while (true) {
      internal_check(++guard < 2000000,
                     "relaxation simplex failed to terminate");
      int enter = -1;
      double d_enter = 0.0;
      if (mode == Pricing::bland) {
        for (int j = 0; j < cols_; ++j) {
          if (pos_[j] >= 0) continue;
          const double d = reduced_cost(j);
          if (d < -kFastCostTol) {
            enter = j;
            d_enter = d;
            break;  // smallest eligible index
          }
        }
      } else if (mode == Pricing::randomized) {
        // Reservoir-sample one eligible column; breaks degenerate loops
        // that deterministic scores keep revisiting.
        int seen = 0;
        for (int j = 0; j < cols_; ++j) {
          if (pos_[j] >= 0) continue;
          const double d = reduced_cost(j);
          if (d >= -kFastCostTol) continue;
          ++seen;
          noise = Rng::splitmix64(noise);
          if (noise % static_cast<std::uint64_t>(seen) == 0) {
            enter = j;
            d_enter = d;
          }
        }
        if (--random_left <= 0) mode = Pricing::devex;
      } else {
        double best_score = 0.0;
        for (int j = 0; j < cols_; ++j) {
          if (pos_[j] >= 0) continue;
          const double d = reduced_cost(j);
          if (d >= -kFastCostTol) continue;
          const double score = d * d / devex_[j];
          if (score > best_score) {
            best_score = score;
            enter = j;
            d_enter = d;
          }
        }
      }
      if (enter < 0) {
        if (!duals_fresh_) {
          compute_duals();
          continue;  // re-verify optimality with exact duals
        }
        return;
      }

      // FTRAN: alpha = Binv * (entering column).
      std::fill(alpha.begin(), alpha.end(), 0.0);
      for (const LpTerm& entry : mod_.columns[enter]) {
        const double a = entry.coeff;
        const std::size_t offset = static_cast<std::size_t>(entry.var);
        for (int i = 0; i < rows_; ++i)
          alpha[i] += a * binv_[static_cast<std::size_t>(i) * rows_ + offset];
      }

      int leave = -1;
      if (mode == Pricing::bland) {
        double best_ratio = 0.0;
        for (int i = 0; i < rows_; ++i) {
          if (alpha[i] <= kFastPivotTol) continue;
          const double ratio = xb_[i] / alpha[i];
          if (leave < 0 || ratio < best_ratio - 1e-12 ||
              (ratio <= best_ratio + 1e-12 && basis_[i] < basis_[leave])) {
            leave = i;
            best_ratio = ratio;
          }
        }
      } else {
        // Two-pass ratio test: bound the step with a little slack, then take
        // the largest pivot element among the rows achieving it.
        double theta_max = kInfinity;
        for (int i = 0; i < rows_; ++i)
          if (alpha[i] > kFastPivotTol)
            theta_max = std::min(theta_max, (xb_[i] + 1e-9) / alpha[i]);
        if (theta_max < kInfinity) {
          double best_pivot = 0.0;
          for (int i = 0; i < rows_; ++i) {
            if (alpha[i] <= kFastPivotTol || xb_[i] / alpha[i] > theta_max)
              continue;
            if (alpha[i] > best_pivot ||
                (alpha[i] == best_pivot && leave >= 0 &&
                 basis_[i] < basis_[leave])) {
              best_pivot = alpha[i];
              leave = i;
            }
          }
        }
      }
      internal_check(leave >= 0, "relaxation LP cannot be unbounded");

      const double theta = std::max(0.0, xb_[leave] / alpha[leave]);
      pivot(enter, leave, theta, d_enter, alpha,
            mode == Pricing::devex || mode == Pricing::randomized);

      const double drop = -d_enter * theta;
      if (drop <= 1e-13 * (1.0 + std::abs(objective_now))) {
        ++stall;
        if (stall > 200 && mode == Pricing::devex) {
          if (++escapes <= 5) {
            mode = Pricing::randomized;
            random_left = 60;
          } else {
            mode = Pricing::bland;  // guaranteed termination
            compute_duals();
          }
          stall = 0;
        }
      } else {
        stall = 0;
        objective_now -= drop;
      }
      if ((guard & 511) == 0) {
        recompute_basics();
        compute_duals();
        objective_now = objective();
      }
    }
  }

  void pivot(int enter, int leave, double theta, double d_enter,
             const std::vector<double>& alpha, bool update_devex) {
    const double pivot_element = alpha[leave];
    const double inv = 1.0 / pivot_element;
    double* prow = &binv_[static_cast<std::size_t>(leave) * rows_];
    for (int j = 0; j < rows_; ++j) prow[j] *= inv;
    for (int i = 0; i < rows_; ++i) {
      if (i == leave) continue;
      const double f = alpha[i];
      if (f == 0.0) continue;
      double* row = &binv_[static_cast<std::size_t>(i) * rows_];
      for (int j = 0; j < rows_; ++j) row[j] -= f * prow[j];
      xb_[i] -= theta * f;
      if (xb_[i] < 0.0 && xb_[i] > -1e-11) xb_[i] = 0.0;
    }
    xb_[leave] = theta;
    // Dual update: y' = y + d_enter * (new pivot row), which zeroes the
    // entering column's reduced cost and preserves all basic ones.
    for (int j = 0; j < rows_; ++j) y_[j] += d_enter * prow[j];
    duals_fresh_ = false;

    if (update_devex) {
      // Devex reference weights: w_j <- max(w_j, t_j^2 * w_enter) with
      // t_j = (new pivot row) . A_j, the leaving variable's weight set from
      // the pivot magnitude.  Approximates steepest-edge norms.
      const double w_enter = devex_[enter];
      for (int j = 0; j < cols_; ++j) {
        if (pos_[j] >= 0 || j == enter) continue;
        double t = 0.0;
        for (const LpTerm& entry : mod_.columns[j])
          t += prow[entry.var] * entry.coeff;
        if (t != 0.0) {
          const double cand = t * t * w_enter;
          if (cand > devex_[j]) devex_[j] = cand;
        }
      }
      devex_[basis_[leave]] =
          std::max(w_enter / (pivot_element * pivot_element), 1.0);
      // Restart the reference framework when weights blow up.
      if (devex_[basis_[leave]] > 1e12) devex_.assign(cols_, 1.0);
    }

    pos_[basis_[leave]] = -1;
    basis_[leave] = enter;
    pos_[enter] = leave;
  }

  void recompute_basics() {
    std::vector<double> fresh(rows_, 0.0);
    for (int i = 0; i < rows_; ++i) {
      const double* row = &binv_[static_cast<std::size_t>(i) * rows_];
      double sum = 0.0;
      for (int j = 0; j < rows_; ++j) sum += row[j] * mod_.rhs[j];
      fresh[i] = sum < 0.0 && sum > -1e-11 ? 0.0 : sum;
    }
    xb_ = std::move(fresh);
  }

  // True residual b - B x_B over the sparse basis columns, plus basic value
  // non-negativity.
  bool accurate() const {
    std::vector<double> residual = mod_.rhs;
    double worst_negative = 0.0;
    for (int i = 0; i < rows_; ++i) {
      worst_negative = std::min(worst_negative, xb_[i]);
      if (xb_[i] == 0.0) continue;
      for (const LpTerm& entry : mod_.columns[basis_[i]])
        residual[entry.var] -= entry.coeff * xb_[i];
    }
    double worst = 0.0;
    for (double value : residual) worst = std::max(worst, std::abs(value));
    return worst <= 1e-9 * rhs_scale_ && worst_negative >= -1e-9 * rhs_scale_;
  }

  // Dense Gauss-Jordan inversion of the current basis matrix (emergency
  // path): row i of the result expresses the basic variable of row i.
  void refactorize() {
    const std::size_t size = static_cast<std::size_t>(rows_) * rows_;
    std::vector<double> mat(size, 0.0);
    for (int i = 0; i < rows_; ++i)
      for (const LpTerm& entry : mod_.columns[basis_[i]])
        mat[static_cast<std::size_t>(entry.var) * rows_ + i] = entry.coeff;
    std::vector<double> inv(size, 0.0);
    for (int i = 0; i < rows_; ++i)
      inv[static_cast<std::size_t>(i) * rows_ + i] = 1.0;
    for (int col = 0; col < rows_; ++col) {
      int prow = col;
      double best = std::abs(mat[static_cast<std::size_t>(col) * rows_ + col]);
      for (int i = col + 1; i < rows_; ++i) {
        const double cand =
            std::abs(mat[static_cast<std::size_t>(i) * rows_ + col]);
        if (cand > best) {
          best = cand;
          prow = i;
        }
      }
      internal_check(best > 1e-11, "basis matrix is singular");
      if (prow != col)
        for (int j = 0; j < rows_; ++j) {
          std::swap(mat[static_cast<std::size_t>(prow) * rows_ + j],
                    mat[static_cast<std::size_t>(col) * rows_ + j]);
          std::swap(inv[static_cast<std::size_t>(prow) * rows_ + j],
                    inv[static_cast<std::size_t>(col) * rows_ + j]);
        }
      const double pv = 1.0 / mat[static_cast<std::size_t>(col) * rows_ + col];
      for (int j = 0; j < rows_; ++j) {
        mat[static_cast<std::size_t>(col) * rows_ + j] *= pv;
        inv[static_cast<std::size_t>(col) * rows_ + j] *= pv;
      }
      for (int i = 0; i < rows_; ++i) {
        if (i == col) continue;
        const double f = mat[static_cast<std::size_t>(i) * rows_ + col];
        if (f == 0.0) continue;
        for (int j = 0; j < rows_; ++j) {
          mat[static_cast<std::size_t>(i) * rows_ + j] -=
              f * mat[static_cast<std::size_t>(col) * rows_ + j];
          inv[static_cast<std::size_t>(i) * rows_ + j] -=
              f * inv[static_cast<std::size_t>(col) * rows_ + j];
        }
      }
    }
    binv_ = std::move(inv);
    recompute_basics();
    compute_duals();
  }

  const CompactModel& mod_;
  int rows_, cols_;
  std::vector<double> binv_;  // row-major rows_ x rows_
  std::vector<int> basis_;    // per row: basic column
  std::vector<int> pos_;      // per column: basis row or -1
  std::vector<double> xb_;    // per row: basic value
  std::vector<double> y_;     // duals, one per row
  std::vector<double> devex_;  // per column: reference weight
  double rhs_scale_ = 1.0;
  bool duals_fresh_ = false;
};

RelaxationSolution solve_compact(const Instance& instance,
                                 bool with_budget_row,
                                 bool check_move_budget) {
  const CompactModel mod = build_compact(instance, with_budget_row);
  RevisedSimplex simplex(mod);
  simplex.solve();
  const int k = instance.k();
  FractionalAssignment raw(instance.n(), k);
  for (int t = 0; t < k; ++t) raw.at(instance.terminals[t], t + 1) = 1.0;
  for (std::size_t t = 0; t < mod.nonterm.size(); ++t) {
    const int v = mod.nonterm[t];
    for (int i = 1; i <= k; ++i)
      raw.at(v, i) = simplex.column_value(static_cast<int>(t) * k + i - 1);
  }
  RelaxationSolution out;
  out.objective = simplex.objective();
  out.assignment =
      finalize_assignment(instance, std::move(raw), check_move_budget);
  return out;
}

}  // namespace

RelaxationSolution solve_rmove_relaxation(const Instance& instance) {
  return solve_compact(instance, true, true);
}

RelaxationSolution solve_multiway_relaxation(const Instance& instance) {
  return solve_compact(instance, false, false);
}

}  // namespace rmove
