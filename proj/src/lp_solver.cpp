#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <optional>
#include <vector>

#include "rmove/errors.hpp"
#include "rmove/lp.hpp"

namespace rmove {

namespace {

constexpr double kFeasTol = 1e-7;   // constraint satisfaction
constexpr double kCostTol = 1e-9;   // reduced-cost optimality
constexpr double kPivotTol = 1e-9;  // smallest acceptable pivot magnitude
constexpr double kFixTol = 1e-11;   // bound width treated as fixed

bool lp_stats() {
  static const bool on = std::getenv("RMOVE_LP_STATS") != nullptr;
  return on;
}

bool lp_verify() {
  static const bool on = std::getenv("RMOVE_LP_VERIFY") != nullptr;
  return on;
}

// ---------------------------------------------------------------------------
// Presolve.  Works in the original variable index space; new columns created
// by the absolute-value split get indices past the original count.  Each
// applied reduction pushes a postsolve rule; replaying the stack in reverse
// reconstructs every eliminated variable from the surviving ones.
// ---------------------------------------------------------------------------

struct PTerm {
  int var;
  double coeff;
};

struct PRow {
  std::vector<PTerm> terms;
  LpRelation relation = LpRelation::equal;
  double rhs = 0.0;
  bool alive = true;
};

struct PostRule {
  enum Kind { fixed, substituted, abs_split } kind;
  int var = -1;            // variable being reconstructed
  double value = 0.0;      // fixed: the pinned value
  std::vector<PTerm> rest; // substituted: v = (rhs - rest)/coeff
  double rhs = 0.0;
  double coeff = 1.0;
  int plus = -1, minus = -1;  // abs_split: v = (plus + minus)/coeff
};

struct Presolved {
  bool infeasible = false;
  std::vector<PRow> rows;          // alive rows only after compaction
  std::vector<double> lo, up, obj; // per working variable
  double obj_constant = 0.0;
  int var_count = 0;               // original + appended split variables
  std::vector<PostRule> rules;
  std::vector<bool> removed;       // per working variable
};

// Interval of a linear expression over the current variable boxes.
void expr_range(const std::vector<PTerm>& terms, const std::vector<double>& lo,
                const std::vector<double>& up, double& out_lo, double& out_up) {
  out_lo = 0.0;
  out_up = 0.0;
  for (const PTerm& t : terms) {
    const double a = t.coeff;
    const double l = a > 0 ? lo[t.var] : up[t.var];
    const double u = a > 0 ? up[t.var] : lo[t.var];
    if (out_lo > -kInfinity) {
      if (l <= -kInfinity || l >= kInfinity)
        out_lo = -kInfinity;
      else
        out_lo += a * l;
    }
    if (out_up < kInfinity) {
      if (u >= kInfinity || u <= -kInfinity)
        out_up = kInfinity;
      else
        out_up += a * u;
    }
  }
}

Presolved presolve(const LpProblem& problem) {
  Presolved p;
  const int nv = problem.var_count;
  p.var_count = nv;
  p.lo = problem.lower;
  p.up = problem.upper;
  p.obj.assign(nv, 0.0);
  p.removed.assign(nv, false);
  for (const LpTerm& t : problem.objective) p.obj[t.var] += t.coeff;
  p.obj_constant = problem.objective_constant;

  p.rows.reserve(problem.constraints.size());
  for (const LpConstraint& c : problem.constraints) {
    PRow row;
    row.relation = c.relation;
    row.rhs = c.rhs;
    // Accumulate duplicate terms and drop zeros so the structural rules see
    // canonical rows.
    std::vector<PTerm> terms;
    for (const LpTerm& t : c.terms) {
      internal_check(t.var >= 0 && t.var < nv,
                     "constraint references bad variable");
      terms.push_back({t.var, t.coeff});
    }
    std::sort(terms.begin(), terms.end(),
              [](const PTerm& a, const PTerm& b) { return a.var < b.var; });
    for (const PTerm& t : terms) {
      if (!row.terms.empty() && row.terms.back().var == t.var)
        row.terms.back().coeff += t.coeff;
      else
        row.terms.push_back(t);
    }
    row.terms.erase(std::remove_if(row.terms.begin(), row.terms.end(),
                                   [](const PTerm& t) { return t.coeff == 0.0; }),
                    row.terms.end());
    p.rows.push_back(std::move(row));
  }

  // Occurrence counts over alive rows, maintained incrementally.
  std::vector<int> occur(nv, 0);
  for (const PRow& row : p.rows)
    for (const PTerm& t : row.terms) ++occur[t.var];

  const auto scale = [&p](const PRow& row) {
    double s = std::abs(row.rhs);
    for (const PTerm& t : row.terms) s = std::max(s, std::abs(t.coeff));
    return 1.0 + s;
  };

  const auto fix_variable = [&](int v, double value) {
    // Substitutes a pinned variable into every row and the objective.
    if (p.removed[v]) return;
    p.removed[v] = true;
    p.obj_constant += p.obj[v] * value;
    for (PRow& row : p.rows) {
      if (!row.alive) continue;
      for (std::size_t idx = 0; idx < row.terms.size(); ++idx) {
        if (row.terms[idx].var != v) continue;
        row.rhs -= row.terms[idx].coeff * value;
        row.terms.erase(row.terms.begin() + idx);
        --occur[v];
        break;
      }
    }
    p.rules.push_back({PostRule::fixed, v, value, {}, 0.0, 1.0, -1, -1});
  };

  bool changed = std::getenv("RMOVE_LP_NOPRESOLVE") == nullptr;
  while (changed && !p.infeasible) {
    changed = false;

    // Bound sanity and fixed variables.
    for (int v = 0; v < nv && !p.infeasible; ++v) {
      if (p.removed[v]) continue;
      if (p.lo[v] > p.up[v] + 1e-12 * (1.0 + std::abs(p.lo[v]))) {
        p.infeasible = true;
        break;
      }
      if (p.lo[v] > -kInfinity && p.up[v] < kInfinity &&
          p.up[v] - p.lo[v] <= kFixTol * (1.0 + std::abs(p.lo[v]))) {
        fix_variable(v, p.lo[v]);
        changed = true;
      }
    }
    if (p.infeasible) break;

    for (PRow& row : p.rows) {
      if (!row.alive) continue;
      // Empty rows become pure feasibility checks.
      if (row.terms.empty()) {
        const double tol = kFeasTol * scale(row);
        const bool ok = row.relation == LpRelation::equal
                            ? std::abs(row.rhs) <= tol
                            : (row.relation == LpRelation::less_equal
                                   ? row.rhs >= -tol
                                   : row.rhs <= tol);
        if (!ok) {
          p.infeasible = true;
          break;
        }
        row.alive = false;
        changed = true;
        continue;
      }
      // Singleton rows tighten a bound and disappear.
      if (row.terms.size() == 1) {
        const int v = row.terms[0].var;
        const double a = row.terms[0].coeff;
        const double b = row.rhs / a;
        const bool up_side = (row.relation == LpRelation::less_equal) == (a > 0);
        if (row.relation == LpRelation::equal) {
          p.lo[v] = std::max(p.lo[v], b);
          p.up[v] = std::min(p.up[v], b);
        } else if (up_side) {
          p.up[v] = std::min(p.up[v], b);
        } else {
          p.lo[v] = std::max(p.lo[v], b);
        }
        --occur[v];
        row.alive = false;
        changed = true;
        continue;
      }
    }
    if (p.infeasible || changed) continue;  // re-run cheap rules first

    // Column singleton in an equality row whose implied range fits inside the
    // variable's own bounds: substitute the variable out.
    for (std::size_t ri = 0; ri < p.rows.size() && !changed; ++ri) {
      PRow& row = p.rows[ri];
      if (!row.alive || row.relation != LpRelation::equal) continue;
      for (const PTerm& t : row.terms) {
        if (occur[t.var] != 1 || p.removed[t.var]) continue;
        const int v = t.var;
        const double a = t.coeff;
        std::vector<PTerm> rest;
        for (const PTerm& o : row.terms)
          if (o.var != v) rest.push_back(o);
        double rlo, rup;
        expr_range(rest, p.lo, p.up, rlo, rup);
        // v = (rhs - rest)/a; its implied interval must sit inside [lo, up].
        double vlo, vup;
        if (a > 0) {
          vlo = rup >= kInfinity ? -kInfinity : (row.rhs - rup) / a;
          vup = rlo <= -kInfinity ? kInfinity : (row.rhs - rlo) / a;
        } else {
          vlo = rlo <= -kInfinity ? -kInfinity : (row.rhs - rlo) / a;
          vup = rup >= kInfinity ? kInfinity : (row.rhs - rup) / a;
        }
        const double tol = kFeasTol * scale(row);
        if (vlo < p.lo[v] - tol || vup > p.up[v] + tol) continue;
        // Fold the objective contribution into the surviving variables.
        const double w = p.obj[v];
        if (w != 0.0) {
          p.obj_constant += w * row.rhs / a;
          for (const PTerm& o : rest) p.obj[o.var] -= w * o.coeff / a;
        }
        for (const PTerm& o : rest) --occur[o.var];
        --occur[v];
        p.removed[v] = true;
        row.alive = false;
        p.rules.push_back(
            {PostRule::substituted, v, 0.0, rest, row.rhs, a, -1, -1});
        changed = true;
        break;
      }
    }
    if (changed) continue;

    // Absolute-value pairs: y >= g and y >= -g with matching coefficient on y
    // and cost(y) >= 0 collapse to one equality g + t+ - t- = rhs with
    // y = (t+ + t-)/a.  This halves the dominating row block of the
    // partition relaxations.
    for (std::size_t ri = 0; ri < p.rows.size() && !changed; ++ri) {
      PRow& r1 = p.rows[ri];
      if (!r1.alive || r1.relation != LpRelation::greater_equal) continue;
      for (const PTerm& t : r1.terms) {
        const int y = t.var;
        if (occur[y] != 2 || p.removed[y]) continue;
        const double a = t.coeff;
        if (a <= 0.0) continue;
        if (p.obj[y] < 0.0) continue;
        if (p.up[y] < kInfinity) continue;
        if (p.lo[y] > 0.0) continue;
        // Find the partner row holding y's other occurrence.
        std::size_t rj = p.rows.size();
        for (std::size_t cand = 0; cand < p.rows.size(); ++cand) {
          if (cand == ri || !p.rows[cand].alive) continue;
          for (const PTerm& o : p.rows[cand].terms)
            if (o.var == y) {
              rj = cand;
              break;
            }
          if (rj != p.rows.size()) break;
        }
        if (rj == p.rows.size()) continue;
        PRow& r2 = p.rows[rj];
        if (r2.relation != LpRelation::greater_equal) continue;
        if (r2.terms.size() != r1.terms.size()) continue;
        if (r2.rhs != -r1.rhs) continue;
        // The non-y parts must be exact negations (terms are var-sorted).
        bool mirror = true;
        double a2 = 0.0;
        std::size_t i1 = 0, i2 = 0;
        while (i1 < r1.terms.size() && i2 < r2.terms.size()) {
          const PTerm& u1 = r1.terms[i1];
          const PTerm& u2 = r2.terms[i2];
          if (u1.var != u2.var) {
            mirror = false;
            break;
          }
          if (u1.var == y) {
            a2 = u2.coeff;
          } else if (u2.coeff != -u1.coeff) {
            mirror = false;
            break;
          }
          ++i1, ++i2;
        }
        if (!mirror || a2 != a) continue;

        // Append t+ and t- and rewrite r1 as the equality; r2 dies.
        const int plus = p.var_count++;
        const int minus = p.var_count++;
        p.lo.push_back(0.0);
        p.up.push_back(kInfinity);
        p.obj.push_back(p.obj[y] / a);
        p.lo.push_back(0.0);
        p.up.push_back(kInfinity);
        p.obj.push_back(p.obj[y] / a);
        p.removed.push_back(false);
        p.removed.push_back(false);
        occur.push_back(0);
        occur.push_back(0);

        std::vector<PTerm> kept;
        for (const PTerm& o : r1.terms)
          if (o.var != y) kept.push_back(o);
        kept.push_back({plus, 1.0});
        kept.push_back({minus, -1.0});
        occur[plus] = 1;
        occur[minus] = 1;
        for (const PTerm& o : r2.terms) --occur[o.var];
        occur[y] -= 1;  // r1's occurrence
        r1.terms = std::move(kept);
        r1.relation = LpRelation::equal;
        // r1 encoded y >= (rhs - g)/a; the split states g + t+ - t- = rhs so
        // that y = (t+ + t-)/a >= |g - rhs|/a matches both inequalities.
        r2.alive = false;
        p.removed[y] = true;
        p.rules.push_back(
            {PostRule::abs_split, y, 0.0, {}, 0.0, a, plus, minus});
        changed = true;
        break;
      }
    }
  }

  // `occur` counts logically consumed variables; nothing else reads it past
  // this point, so no final reconciliation is required.
  if (!p.infeasible) {
    std::size_t alive = 0;
    for (const PRow& row : p.rows)
      if (row.alive) ++alive;
    std::vector<PRow> compact;
    compact.reserve(alive);
    for (PRow& row : p.rows)
      if (row.alive) compact.push_back(std::move(row));
    p.rows = std::move(compact);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Bounded-variable primal simplex on the presolved rows with an explicit
// dense basis inverse.  Columns: structurals, then one logical per row
// (equality logicals are fixed at zero), then phase-1 artificials.  Devex
// pricing with deterministic tie-breaks; a persistent switch to Bland's rule
// after a degenerate stall preserves the anti-cycling guarantee.
// ---------------------------------------------------------------------------

enum class VStat : signed char { basic, at_lo, at_up, nb_free };

class Engine {
 public:
  Engine(const Presolved& p, const std::vector<int>& col_of, int struct_count)
      : m_(static_cast<int>(p.rows.size())) {
    // Column storage: compressed sparse columns over presolved rows.
    nstruct_ = struct_count;
    ncols_ = nstruct_ + m_;
    col_ptr_.assign(ncols_ + 1, 0);
    lo_.assign(ncols_, 0.0);
    up_.assign(ncols_, 0.0);
    cost_.assign(ncols_, 0.0);

    std::vector<std::vector<std::pair<int, double>>> cols(nstruct_);
    b_.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const PRow& row = p.rows[i];
      b_[i] = row.rhs;
      for (const PTerm& t : row.terms) {
        const int c = col_of[t.var];
        internal_check(c >= 0, "presolve left a removed variable in a row");
        cols[c].push_back({i, t.coeff});
      }
    }
    int v = 0;
    for (int ov = 0; ov < p.var_count; ++ov) {
      if (p.removed[ov]) continue;
      lo_[v] = p.lo[ov];
      up_[v] = p.up[ov];
      cost_[v] = p.obj[ov];
      ++v;
    }
    internal_check(v == nstruct_, "presolve column compaction mismatch");
    for (int c = 0; c < nstruct_; ++c) col_ptr_[c + 1] = col_ptr_[c] + static_cast<int>(cols[c].size());
    int logical = nstruct_;
    for (int i = 0; i < m_; ++i, ++logical) {
      col_ptr_[logical + 1] = col_ptr_[logical] + 1;
      switch (p.rows[i].relation) {
        case LpRelation::equal:
          lo_[logical] = 0.0;
          up_[logical] = 0.0;
          break;
        case LpRelation::less_equal:
          lo_[logical] = 0.0;
          up_[logical] = kInfinity;
          break;
        case LpRelation::greater_equal:
          lo_[logical] = -kInfinity;
          up_[logical] = 0.0;
          break;
      }
    }
    col_row_.resize(col_ptr_[ncols_]);
    col_val_.resize(col_ptr_[ncols_]);
    for (int c = 0; c < nstruct_; ++c) {
      int at = col_ptr_[c];
      for (const auto& [row, coeff] : cols[c]) {
        col_row_[at] = row;
        col_val_[at] = coeff;
        ++at;
      }
    }
    for (int i = 0; i < m_; ++i) {
      col_row_[col_ptr_[nstruct_ + i]] = i;
      col_val_[col_ptr_[nstruct_ + i]] = 1.0;
    }

    rhs_scale_ = 1.0;
    for (int i = 0; i < m_; ++i) rhs_scale_ = std::max(rhs_scale_, std::abs(b_[i]));
  }

  LpStatus solve() {
    crash();
    if (!artificial_rows_.empty()) {
      if (!phase1()) return LpStatus::infeasible;
    }
    const LpStatus status = phase2();
    if (status == LpStatus::optimal) {
      // Two rounds of iterative refinement squeeze the inverse's drift out of
      // the reported basic values.
      refresh();
      refine();
      refine();
      if (lp_verify()) audit();
    }
    return status;
  }

  // Basic solution over engine columns (structurals first).
  std::vector<double> values() const {
    std::vector<double> x(ncols_, 0.0);
    for (int c = 0; c < ncols_; ++c) {
      switch (stat_[c]) {
        case VStat::at_lo:
          x[c] = lo_[c];
          break;
        case VStat::at_up:
          x[c] = up_[c];
          break;
        default:
          break;
      }
    }
    for (int i = 0; i < m_; ++i) x[basis_[i]] = xb_[i];
    return x;
  }

  int iterations() const { return total_iterations_; }

  const std::vector<double>& rhs() const { return b_; }

  // True when the other engine describes the same constraint matrix, costs,
  // and bounds over the structural and logical columns; the right-hand side
  // may differ.  Artificial columns appended by an earlier solve are ignored.
  bool same_structure(const Engine& o) const {
    if (o.m_ != m_ || o.nstruct_ != nstruct_) return false;
    const int plain = nstruct_ + m_;
    if (!std::equal(col_ptr_.begin(), col_ptr_.begin() + plain + 1,
                    o.col_ptr_.begin()))
      return false;
    const int nnz = col_ptr_[plain];
    if (!std::equal(col_row_.begin(), col_row_.begin() + nnz,
                    o.col_row_.begin()) ||
        !std::equal(col_val_.begin(), col_val_.begin() + nnz,
                    o.col_val_.begin()))
      return false;
    for (int c = 0; c < plain; ++c)
      if (lo_[c] != o.lo_[c] || up_[c] != o.up_[c] || cost_[c] != o.cost_[c])
        return false;
    return true;
  }

  // Re-solve after a right-hand-side change, starting from this engine's
  // previous optimal basis.  The basis stays dual feasible (costs and bounds
  // are unchanged), so a dual simplex walk repairs the primal violations in
  // a handful of pivots.  Returns false when the repair does not converge;
  // the caller then solves from scratch.
  bool resolve_with_rhs(const std::vector<double>& nb) {
    if (static_cast<int>(nb.size()) != m_) return false;
    b_ = nb;
    rhs_scale_ = 1.0;
    for (int i = 0; i < m_; ++i)
      rhs_scale_ = std::max(rhs_scale_, std::abs(b_[i]));
    refresh();
    if (!dual_repair()) return false;
    // Re-certify with the primal loop: normally zero pivots, but any dual
    // drift is cleaned up by the same machinery as a cold solve.
    if (run(false) != Outcome::optimal) {
      if (lp_stats())
        std::fprintf(stderr, "lp: warm re-certification failed\n");
      return false;
    }
    refresh();
    refine();
    refine();
    if (lp_verify()) audit();
    return true;
  }

 private:
  double nonbasic_value(int c) const {
    if (stat_[c] == VStat::at_lo) return lo_[c];
    if (stat_[c] == VStat::at_up) return up_[c];
    return 0.0;
  }

  // Initial basis: the logical of every row when its crash value is feasible,
  // otherwise a fresh artificial column covering the violation.
  void crash() {
    stat_.assign(ncols_, VStat::at_lo);
    for (int c = 0; c < ncols_; ++c) {
      if (lo_[c] <= -kInfinity)
        stat_[c] = up_[c] >= kInfinity ? VStat::nb_free : VStat::at_up;
    }
    std::vector<double> act(m_, 0.0);
    for (int c = 0; c < nstruct_; ++c) {
      const double xv = nonbasic_value(c);
      if (xv == 0.0) continue;
      for (int at = col_ptr_[c]; at < col_ptr_[c + 1]; ++at)
        act[col_row_[at]] += col_val_[at] * xv;
    }
    // Structural singleton columns, indexed by their row: a basic singleton
    // with room to move beats a fixed logical pinned at zero.
    std::vector<int> row_singleton(m_, -1);
    for (int c = 0; c < nstruct_; ++c) {
      if (col_ptr_[c + 1] - col_ptr_[c] != 1) continue;
      const int i = col_row_[col_ptr_[c]];
      if (row_singleton[i] < 0) row_singleton[i] = c;
    }
    basis_.assign(m_, -1);
    xb_.assign(m_, 0.0);
    artificial_rows_.clear();
    art_start_ = ncols_;
    const double tol = kFeasTol * rhs_scale_;
    for (int i = 0; i < m_; ++i) {
      const int logical = nstruct_ + i;
      const double want = b_[i] - act[i];  // logical's value if basic
      const int single = row_singleton[i];
      if (lo_[logical] == up_[logical] && single >= 0 &&
          stat_[single] != VStat::basic) {
        const double a = col_val_[col_ptr_[single]];
        const double value = (b_[i] - act[i] + nonbasic_value(single) * a) / a;
        if (value >= lo_[single] - tol && value <= up_[single] + tol) {
          basis_[i] = single;
          stat_[logical] = VStat::at_lo;
          stat_[single] = VStat::basic;
          continue;
        }
      }
      if (want >= lo_[logical] - tol && want <= up_[logical] + tol) {
        basis_[i] = logical;
        xb_[i] = want;
        stat_[logical] = VStat::basic;
      } else {
        // Park the logical at its nearest bound and record the leftover for
        // an artificial column added lazily below.
        stat_[logical] = std::abs(want - lo_[logical]) <= std::abs(want - up_[logical])
                             ? VStat::at_lo
                             : VStat::at_up;
        artificial_rows_.push_back(i);
      }
    }
    if (!artificial_rows_.empty()) {
      const int nart = static_cast<int>(artificial_rows_.size());
      art_sign_.clear();
      for (int idx = 0; idx < nart; ++idx) {
        const int i = artificial_rows_[idx];
        const int logical = nstruct_ + i;
        const double residual = b_[i] - act[i] - nonbasic_value(logical);
        basis_[i] = ncols_ + idx;
        art_sign_.push_back(residual >= 0 ? 1.0 : -1.0);
      }
      col_ptr_.resize(ncols_ + nart + 1);
      for (int idx = 0; idx < nart; ++idx) {
        col_ptr_[ncols_ + idx + 1] = col_ptr_[ncols_ + idx] + 1;
        col_row_.push_back(artificial_rows_[idx]);
        col_val_.push_back(art_sign_[idx]);
        lo_.push_back(0.0);
        up_.push_back(kInfinity);
        cost_.push_back(0.0);
        stat_.push_back(VStat::basic);
      }
      ncols_ += nart;
    }
    // The crash basis is triangular by construction (logicals and artificials
    // are singletons), so the inverse starts as a signed permutation and the
    // refresh below computes the exact basic values.
    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const int c = basis_[i];
      const double a = col_val_[col_ptr_[c]];
      binv_[static_cast<std::size_t>(i) * m_ + i] = 1.0 / a;
    }
    refresh();
  }

  bool phase1() {
    const int first_art = ncols_ - static_cast<int>(artificial_rows_.size());
    std::vector<double> saved_cost(cost_);
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (int c = first_art; c < ncols_; ++c) cost_[c] = 1.0;
    run(true);
    double art_total = 0.0;
    for (int i = 0; i < m_; ++i)
      if (basis_[i] >= first_art) art_total += std::abs(xb_[i]);
    cost_ = std::move(saved_cost);
    if (art_total > kFeasTol * rhs_scale_) return false;
    // Freeze every artificial at zero; basic ones linger harmlessly
    // degenerate and can only leave.
    for (int c = first_art; c < ncols_; ++c) {
      up_[c] = 0.0;
      if (stat_[c] != VStat::basic) stat_[c] = VStat::at_lo;
    }
    return true;
  }

  LpStatus phase2() {
    const auto outcome = run(false);
    return outcome == Outcome::unbounded ? LpStatus::unbounded
                                         : LpStatus::optimal;
  }

  enum class Outcome { optimal, unbounded };

  // Right-hand side net of the nonbasic contributions.
  void effective_rhs(std::vector<double>& rhs) const {
    rhs = b_;
    for (int c = 0; c < ncols_; ++c) {
      if (stat_[c] == VStat::basic) continue;
      const double xv = nonbasic_value(c);
      if (xv == 0.0) continue;
      for (int at = col_ptr_[c]; at < col_ptr_[c + 1]; ++at)
        rhs[col_row_[at]] -= col_val_[at] * xv;
    }
  }

  // Exact recomputation of duals and basic values from the current basis.
  void refresh() {
    y_.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const double cb = cost_[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &binv_[static_cast<std::size_t>(i) * m_];
      for (int j = 0; j < m_; ++j) y_[j] += cb * row[j];
    }
    std::vector<double> rhs;
    effective_rhs(rhs);
    for (int i = 0; i < m_; ++i) {
      const double* row = &binv_[static_cast<std::size_t>(i) * m_];
      double v = 0.0;
      for (int j = 0; j < m_; ++j) v += row[j] * rhs[j];
      xb_[i] = v;
    }
  }

  // One step of iterative refinement: measure the true residual of B x_B
  // against the exact sparse columns, then correct through the inverse.
  void refine() {
    std::vector<double> rhs;
    effective_rhs(rhs);
    std::vector<double> residual(rhs);
    for (int i = 0; i < m_; ++i) {
      const int c = basis_[i];
      const double xv = xb_[i];
      if (xv == 0.0) continue;
      for (int at = col_ptr_[c]; at < col_ptr_[c + 1]; ++at)
        residual[col_row_[at]] -= col_val_[at] * xv;
    }
    for (int i = 0; i < m_; ++i) {
      const double* row = &binv_[static_cast<std::size_t>(i) * m_];
      double v = 0.0;
      for (int j = 0; j < m_; ++j) v += row[j] * residual[j];
      xb_[i] += v;
    }
  }

  double reduced_cost(int c) const {
    double d = cost_[c];
    for (int at = col_ptr_[c]; at < col_ptr_[c + 1]; ++at)
      d -= y_[col_row_[at]] * col_val_[at];
    return d;
  }

  // Debug-only certificate: refactorize the basis from scratch with
  // Gauss-Jordan elimination, then re-check primal feasibility and dual
  // optimality against the exact inverse.  O(m^3); enabled by RMOVE_LP_VERIFY.
  void audit() {
    const std::size_t mm = static_cast<std::size_t>(m_);
    std::vector<double> mat(mm * mm, 0.0), inv(mm * mm, 0.0);
    for (int i = 0; i < m_; ++i) {
      const int c = basis_[i];
      for (int at = col_ptr_[c]; at < col_ptr_[c + 1]; ++at)
        mat[static_cast<std::size_t>(col_row_[at]) * mm + i] = col_val_[at];
      inv[static_cast<std::size_t>(i) * mm + i] = 1.0;
    }
    for (int col = 0; col < m_; ++col) {
      int piv = col;
      double best = std::abs(mat[static_cast<std::size_t>(col) * mm + col]);
      for (int i = col + 1; i < m_; ++i) {
        const double v = std::abs(mat[static_cast<std::size_t>(i) * mm + col]);
        if (v > best) {
          best = v;
          piv = i;
        }
      }
      if (best < 1e-12) {
        std::fprintf(stderr, "lp audit: basis singular at column %d\n", col);
        return;
      }
      if (piv != col) {
        for (int j = 0; j < m_; ++j) {
          std::swap(mat[static_cast<std::size_t>(piv) * mm + j],
                    mat[static_cast<std::size_t>(col) * mm + j]);
          std::swap(inv[static_cast<std::size_t>(piv) * mm + j],
                    inv[static_cast<std::size_t>(col) * mm + j]);
        }
      }
      const double scale = 1.0 / mat[static_cast<std::size_t>(col) * mm + col];
      for (int j = 0; j < m_; ++j) {
        mat[static_cast<std::size_t>(col) * mm + j] *= scale;
        inv[static_cast<std::size_t>(col) * mm + j] *= scale;
      }
      for (int i = 0; i < m_; ++i) {
        if (i == col) continue;
        const double f = mat[static_cast<std::size_t>(i) * mm + col];
        if (f == 0.0) continue;
        for (int j = 0; j < m_; ++j) {
          mat[static_cast<std::size_t>(i) * mm + j] -=
              f * mat[static_cast<std::size_t>(col) * mm + j];
          inv[static_cast<std::size_t>(i) * mm + j] -=
              f * inv[static_cast<std::size_t>(col) * mm + j];
        }
      }
    }
    double inv_drift = 0.0;
    for (std::size_t i = 0; i < mm * mm; ++i)
      inv_drift = std::max(inv_drift, std::abs(inv[i] - binv_[i]));
    std::vector<double> rhs;
    effective_rhs(rhs);
    std::vector<double> xb_exact(m_, 0.0), y_exact(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const double* row = &inv[static_cast<std::size_t>(i) * mm];
      double v = 0.0;
      for (int j = 0; j < m_; ++j) v += row[j] * rhs[j];
      xb_exact[i] = v;
      const double cb = cost_[basis_[i]];
      if (cb == 0.0) continue;
      for (int j = 0; j < m_; ++j) y_exact[j] += cb * row[j];
    }
    double bound_viol = 0.0, xb_drift = 0.0, obj_exact = 0.0;
    for (int i = 0; i < m_; ++i) {
      const int c = basis_[i];
      bound_viol = std::max(bound_viol, lo_[c] - xb_exact[i]);
      bound_viol = std::max(bound_viol, xb_exact[i] - up_[c]);
      xb_drift = std::max(xb_drift, std::abs(xb_exact[i] - xb_[i]));
      obj_exact += cost_[c] * xb_exact[i];
    }
    for (int c = 0; c < ncols_; ++c)
      if (stat_[c] != VStat::basic) obj_exact += cost_[c] * nonbasic_value(c);
    double dual_viol = 0.0;
    for (int c = 0; c < art_start_; ++c) {
      if (stat_[c] == VStat::basic || lo_[c] == up_[c]) continue;
      double d = cost_[c];
      for (int at = col_ptr_[c]; at < col_ptr_[c + 1]; ++at)
        d -= y_exact[col_row_[at]] * col_val_[at];
      if (stat_[c] == VStat::at_lo)
        dual_viol = std::max(dual_viol, -d);
      else if (stat_[c] == VStat::at_up)
        dual_viol = std::max(dual_viol, d);
      else
        dual_viol = std::max(dual_viol, std::abs(d));
    }
    std::fprintf(stderr,
                 "lp audit: inv_drift=%.3e xb_drift=%.3e bound_viol=%.3e "
                 "dual_viol=%.3e obj_exact=%.12f obj_reported=%.12f\n",
                 inv_drift, xb_drift, bound_viol, dual_viol, obj_exact,
                 objective_value());
  }

  // FTRAN: alpha = B^-1 a_c via strided column reads of the row-major inverse.
  void ftran(int c, std::vector<double>& alpha) const {
    alpha.assign(m_, 0.0);
    for (int at = col_ptr_[c]; at < col_ptr_[c + 1]; ++at) {
      const double v = col_val_[at];
      const double* col = &binv_[col_row_[at]];
      for (int i = 0; i < m_; ++i) alpha[i] += v * col[static_cast<std::size_t>(i) * m_];
    }
  }

  Outcome run(bool in_phase1) {
    refresh();
    devex_.assign(ncols_, 1.0);
    bland_ = false;
    escapes_ = 0;
    int stall = 0;
    double last_obj = objective_value();
    std::vector<double> alpha;
    int guard = 0;
    bool retried_unbounded = false;
    const int guard_limit = 2000000;
    const int refresh_every = 256;
    while (true) {
      internal_check(++guard < guard_limit, "simplex failed to terminate");
      ++total_iterations_;
      if ((guard % refresh_every) == 0) refresh();

      // Pricing: full sparse scan each iteration.  Artificials never
      // re-enter once they have left the basis.
      int enter = -1;
      double enter_d = 0.0;
      double best_score = 0.0;
      for (int c = 0; c < art_start_; ++c) {
        if (stat_[c] == VStat::basic) continue;
        if (lo_[c] == up_[c] && stat_[c] != VStat::nb_free) continue;  // fixed
        const double d = reduced_cost(c);
        double viol = 0.0;
        if (stat_[c] == VStat::at_lo && d < -kCostTol)
          viol = -d;
        else if (stat_[c] == VStat::at_up && d > kCostTol)
          viol = d;
        else if (stat_[c] == VStat::nb_free && std::abs(d) > kCostTol)
          viol = std::abs(d);
        if (viol == 0.0) continue;
        if (bland_) {
          enter = c;
          enter_d = d;
          break;
        }
        const double score = viol * viol / devex_[c];
        if (score > best_score) {
          best_score = score;
          enter = c;
          enter_d = d;
        }
      }
      if (enter < 0) {
        refresh();
        // Stale duals can hide a genuinely attractive column; re-price once
        // after the exact refresh before declaring optimality.
        bool any = false;
        for (int c = 0; c < art_start_ && !any; ++c) {
          if (stat_[c] == VStat::basic) continue;
          if (lo_[c] == up_[c] && stat_[c] != VStat::nb_free) continue;
          const double d = reduced_cost(c);
          any = (stat_[c] == VStat::at_lo && d < -10 * kCostTol) ||
                (stat_[c] == VStat::at_up && d > 10 * kCostTol) ||
                (stat_[c] == VStat::nb_free && std::abs(d) > 10 * kCostTol);
        }
        if (!any) return Outcome::optimal;
        continue;
      }

      const double dir = stat_[enter] == VStat::at_up
                             ? -1.0
                             : (stat_[enter] == VStat::nb_free
                                    ? (enter_d < 0 ? 1.0 : -1.0)
                                    : 1.0);
      ftran(enter, alpha);

      // Bounded ratio test.  theta measures the entering variable's movement
      // along dir; the entering column's own range caps it (a bound flip).
      double theta = kInfinity;
      if (lo_[enter] > -kInfinity && up_[enter] < kInfinity)
        theta = up_[enter] - lo_[enter];
      int leave = -1;  // row index
      bool leave_to_up = false;
      double best_pivot = 0.0;
      const double window = 1e-9 * (1.0 + rhs_scale_);
      for (int i = 0; i < m_; ++i) {
        const double a = dir * alpha[i];
        if (std::abs(a) <= kPivotTol) continue;
        const int bc = basis_[i];
        double t;
        bool to_up;
        if (a > 0) {
          if (lo_[bc] <= -kInfinity) continue;
          t = (xb_[i] - lo_[bc]) / a;
          to_up = false;
        } else {
          if (up_[bc] >= kInfinity) continue;
          t = (xb_[i] - up_[bc]) / a;
          to_up = true;
        }
        if (t < 0.0) t = 0.0;  // tiny drift past a bound: degenerate step
        bool take;
        if (leave < 0) {
          take = t < theta;
        } else if (t < theta - window) {
          take = true;
        } else if (t <= theta + window) {
          take = bland_ ? basis_[i] < basis_[leave]
                        : std::abs(alpha[i]) > best_pivot;
        } else {
          take = false;
        }
        if (take) {
          theta = std::min(theta, t);
          leave = i;
          leave_to_up = to_up;
          best_pivot = std::abs(alpha[i]);
        }
      }

      if (leave < 0) {
        if (theta >= kInfinity) {
          // A blocking row with a sub-tolerance pivot can masquerade as a
          // ray; retry once against an exact refresh before believing it.
          if (!retried_unbounded) {
            retried_unbounded = true;
            refresh();
            continue;
          }
          if (in_phase1) throw internal_error("phase 1 cannot be unbounded");
          return Outcome::unbounded;
        }
        // Bound flip: no basis change.
        const double step = dir * theta;
        for (int i = 0; i < m_; ++i) xb_[i] -= alpha[i] * step;
        stat_[enter] = stat_[enter] == VStat::at_lo ? VStat::at_up : VStat::at_lo;
      } else {
        pivot(enter, leave, alpha, dir, theta, leave_to_up);
      }

      const double obj = objective_value();
      if (obj < last_obj - 1e-12 * (1.0 + std::abs(last_obj))) {
        stall = 0;
        last_obj = obj;
        if (bland_ && escapes_ <= kMaxEscapes) {
          bland_ = false;  // escape succeeded: back to Devex pricing
          devex_.assign(ncols_, 1.0);
        }
      } else if (++stall >= kStallLimit && !bland_) {
        // Degenerate stall: walk with Bland's rule until the objective moves
        // again.  After too many escapes the switch becomes permanent, which
        // restores the textbook termination guarantee.
        bland_ = true;
        stall = 0;
        ++escapes_;
        if (lp_stats())
          std::fprintf(stderr, "lp: Bland escape %d at iteration %d\n",
                       escapes_, guard);
      }
      if (lp_stats() && (guard % 1024) == 0)
        std::fprintf(stderr, "lp: %d iterations, obj %.6f\n", guard, obj);
    }
  }

  // Bounded-variable dual simplex: while some basic value violates a bound,
  // drive it to the violated bound and bring in the nonbasic column that
  // keeps every reduced cost on its feasible side (smallest dual ratio,
  // ties to the largest pivot).  Deterministic; gives up rather than loops.
  bool dual_repair() {
    const double ptol = kFeasTol * (1.0 + rhs_scale_);
    std::vector<double> alpha;
    int pivots = 0;
    int stall = 0;
    bool dbland = false;  // smallest-index rules while a degenerate run lasts
    // The dual objective (the primal objective at the current basis) climbs
    // weakly toward the new optimum; primal violations may wander meanwhile.
    double last_z = -kInfinity;
    const int cap = 12000;
    while (true) {
      if (pivots > 0 && (pivots % 64) == 0) refresh();
      int lrow = -1;
      bool low_side = false;
      double worst = ptol;
      for (int i = 0; i < m_; ++i) {
        const int c = basis_[i];
        const double below = lo_[c] - xb_[i];
        const double above = xb_[i] - up_[c];
        const double viol = std::max(below, above);
        if (viol <= ptol) continue;
        if (dbland) {
          if (lrow < 0 || basis_[i] < basis_[lrow]) {
            lrow = i;
            low_side = below > above;
          }
        } else if (viol > worst) {
          worst = viol;
          lrow = i;
          low_side = below > above;
        }
      }
      if (lrow < 0) {
        if (lp_stats())
          std::fprintf(stderr, "lp: warm repair done after %d pivots\n", pivots);
        return true;  // primal feasible again
      }
      if (++pivots > cap) {
        if (lp_stats()) std::fprintf(stderr, "lp: warm repair hit pivot cap\n");
        return false;
      }
      const double z = objective_value();
      if (z > last_z + 1e-12 * (1.0 + std::abs(last_z))) {
        stall = 0;
        last_z = z;
        dbland = false;
      } else if (++stall > (dbland ? 8000 : 300)) {
        if (dbland) {
          if (lp_stats())
            std::fprintf(stderr,
                         "lp: warm repair stalled (z %.6f, worst %.3e)\n", z,
                         worst);
          return false;
        }
        dbland = true;
        stall = 0;
      }

      // Dual ratio test over row lrow of B^-1 A.  A basic value below its
      // lower bound must rise, one above its upper bound must fall; the
      // admissible sign of the row entry depends on the entering bound.
      const double* brow = &binv_[static_cast<std::size_t>(lrow) * m_];
      int enter = -1;
      double best_ratio = kInfinity;
      double enter_arow = 0.0;
      for (int c = 0; c < art_start_; ++c) {
        if (stat_[c] == VStat::basic) continue;
        if (lo_[c] == up_[c] && stat_[c] != VStat::nb_free) continue;
        double a = 0.0;
        for (int at = col_ptr_[c]; at < col_ptr_[c + 1]; ++at)
          a += brow[col_row_[at]] * col_val_[at];
        if (std::abs(a) <= kPivotTol) continue;
        bool ok;
        if (stat_[c] == VStat::at_lo)
          ok = low_side ? a < 0 : a > 0;
        else if (stat_[c] == VStat::at_up)
          ok = low_side ? a > 0 : a < 0;
        else
          ok = true;
        if (!ok) continue;
        double d = reduced_cost(c);
        if (stat_[c] == VStat::at_lo)
          d = std::max(d, 0.0);
        else if (stat_[c] == VStat::at_up)
          d = std::min(d, 0.0);
        const double ratio = std::abs(d) / std::abs(a);
        const double window = 1e-9 * (1.0 + best_ratio);
        if (enter < 0 || ratio < best_ratio - window) {
          enter = c;
          best_ratio = ratio;
          enter_arow = a;
        } else if (!dbland && ratio <= best_ratio + window &&
                   std::abs(a) > std::abs(enter_arow)) {
          // Ties go to the largest pivot; under the smallest-index rule the
          // first candidate seen keeps the slot instead.
          enter = c;
          best_ratio = std::min(best_ratio, ratio);
          enter_arow = a;
        }
      }
      if (enter < 0) {
        if (lp_stats())
          std::fprintf(stderr, "lp: warm repair found a dual ray (pivot %d)\n",
                       pivots);
        return false;  // dual ray; let the cold solve decide
      }

      ftran(enter, alpha);
      if (std::abs(alpha[lrow]) <= kPivotTol) {
        if (lp_stats())
          std::fprintf(stderr, "lp: warm repair pivot drift (row %d)\n", lrow);
        return false;  // drifted inverse
      }
      const double target =
          low_side ? lo_[basis_[lrow]] : up_[basis_[lrow]];
      const double t = (xb_[lrow] - target) / alpha[lrow];
      ++total_iterations_;
      pivot(enter, lrow, alpha, t >= 0 ? 1.0 : -1.0, std::abs(t), !low_side);
    }
  }

  void pivot(int enter, int leave, const std::vector<double>& alpha, double dir,
             double theta, bool leave_to_up) {
    const int leaving = basis_[leave];
    const double ap = alpha[leave];
    const double inv = 1.0 / ap;
    double* prow = &binv_[static_cast<std::size_t>(leave) * m_];

    // Basic values move before the inverse does; alpha is in the old basis.
    const double step = dir * theta;
    if (step != 0.0)
      for (int i = 0; i < m_; ++i) xb_[i] -= alpha[i] * step;
    const double enter_value = nonbasic_value(enter) + step;

    // Entering reduced cost against the pre-pivot duals.
    double d_enter = cost_[enter];
    for (int at = col_ptr_[enter]; at < col_ptr_[enter + 1]; ++at)
      d_enter -= y_[col_row_[at]] * col_val_[at];

    // Rank-1 update of the dense inverse: scale the pivot row, sweep the rest.
    for (int j = 0; j < m_; ++j) prow[j] *= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == leave) continue;
      const double f = alpha[i];
      if (f == 0.0) continue;
      double* row = &binv_[static_cast<std::size_t>(i) * m_];
      for (int j = 0; j < m_; ++j) row[j] -= f * prow[j];
    }

    // Incremental duals: the new pivot row re-prices everything consistently.
    for (int j = 0; j < m_; ++j) y_[j] += d_enter * prow[j];

    // Devex reference weights, approximated from the new pivot row.  Columns
    // aligned with the entering direction inherit its weight.
    const double we = std::max(devex_[enter], 1.0);
    double wmax = 0.0;
    for (int c = 0; c < art_start_; ++c) {
      if (stat_[c] == VStat::basic || c == enter) continue;
      double z = 0.0;
      for (int at = col_ptr_[c]; at < col_ptr_[c + 1]; ++at)
        z += prow[col_row_[at]] * col_val_[at];
      if (z != 0.0) devex_[c] = std::max(devex_[c], z * z * we);
      wmax = std::max(wmax, devex_[c]);
    }
    devex_[leaving] = std::max(we * inv * inv, 1.0);
    devex_[enter] = 1.0;
    if (std::max(wmax, devex_[leaving]) > 1e12) devex_.assign(ncols_, 1.0);

    basis_[leave] = enter;
    stat_[enter] = VStat::basic;
    xb_[leave] = enter_value;
    stat_[leaving] = leave_to_up ? VStat::at_up : VStat::at_lo;
    if (lo_[leaving] <= -kInfinity && up_[leaving] >= kInfinity)
      stat_[leaving] = VStat::nb_free;
  }

  double objective_value() const {
    double obj = 0.0;
    for (int c = 0; c < ncols_; ++c) {
      if (stat_[c] == VStat::basic) continue;
      const double xv = nonbasic_value(c);
      if (xv != 0.0) obj += cost_[c] * xv;
    }
    for (int i = 0; i < m_; ++i) obj += cost_[basis_[i]] * xb_[i];
    return obj;
  }

  int m_ = 0;
  int nstruct_ = 0;
  int ncols_ = 0;
  std::vector<int> col_ptr_, col_row_;
  std::vector<double> col_val_;
  std::vector<double> lo_, up_, cost_, b_;
  std::vector<double> binv_, xb_, y_;
  std::vector<double> devex_;
  std::vector<int> basis_;
  std::vector<VStat> stat_;
  std::vector<int> artificial_rows_;
  std::vector<double> art_sign_;
  int art_start_ = 0;
  bool bland_ = false;
  int escapes_ = 0;
  static constexpr int kStallLimit = 300;
  static constexpr int kMaxEscapes = 10;
  double rhs_scale_ = 1.0;
  int total_iterations_ = 0;
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem) {
  const int nv = problem.var_count;
  for (int j = 0; j < nv; ++j)
    if (problem.lower[j] > problem.upper[j] + 1e-12)
      return {LpStatus::infeasible, {}, 0.0};

  const auto t0 = std::chrono::steady_clock::now();
  Presolved p = presolve(problem);
  if (lp_stats())
    std::fprintf(stderr, "lp: presolve %zu -> %zu rows, %d -> %d vars, %.2fs\n",
                 problem.constraints.size(), p.rows.size(), nv,
                 static_cast<int>(std::count(p.removed.begin(), p.removed.end(),
                                             false)),
                 std::chrono::duration<double>(
                     std::chrono::steady_clock::now() - t0)
                     .count());
  if (p.infeasible) return {LpStatus::infeasible, {}, 0.0};

  // Compact surviving variables into engine columns.
  std::vector<int> col_of(p.var_count, -1);
  int struct_count = 0;
  for (int v = 0; v < p.var_count; ++v)
    if (!p.removed[v]) col_of[v] = struct_count++;

  std::vector<double> full(p.var_count, 0.0);
  LpStatus status = LpStatus::optimal;
  if (struct_count == 0 || p.rows.empty()) {
    // No rows survived: every remaining variable sits at its best bound.
    for (int v = 0; v < p.var_count; ++v) {
      if (p.removed[v]) continue;
      const double w = p.obj[v];
      double x;
      if (w > 0.0) {
        if (p.lo[v] <= -kInfinity) return {LpStatus::unbounded, {}, 0.0};
        x = p.lo[v];
      } else if (w < 0.0) {
        if (p.up[v] >= kInfinity) return {LpStatus::unbounded, {}, 0.0};
        x = p.up[v];
      } else {
        x = p.lo[v] > -kInfinity ? p.lo[v] : (p.up[v] < kInfinity ? p.up[v] : 0.0);
      }
      full[v] = x;
    }
  } else {
    Engine engine(p, col_of, struct_count);
    // Consecutive solves often differ only in the right-hand side (budget
    // sweeps over one instance).  Keep the last optimal engine and let a
    // dual simplex repair reuse its basis; any mismatch or failed repair
    // falls back to a cold solve.
    static std::optional<Engine> hot;
    const bool warm = hot && hot->same_structure(engine) &&
                      hot->resolve_with_rhs(engine.rhs());
    if (!warm) {
      status = engine.solve();
      if (status != LpStatus::optimal) {
        hot.reset();
        return {status, {}, 0.0};
      }
      hot = std::move(engine);
    }
    const std::vector<double> xs = hot->values();
    for (int v = 0; v < p.var_count; ++v)
      if (col_of[v] >= 0) full[v] = xs[col_of[v]];
    if (lp_stats())
      std::fprintf(stderr, "lp: %d rows, %d iterations%s, %.2fs\n",
                   static_cast<int>(p.rows.size()), hot->iterations(),
                   warm ? " (warm)" : "",
                   std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - t0)
                       .count());
  }

  // Postsolve: replay the reduction stack backwards.
  for (auto it = p.rules.rbegin(); it != p.rules.rend(); ++it) {
    switch (it->kind) {
      case PostRule::fixed:
        full[it->var] = it->value;
        break;
      case PostRule::substituted: {
        double rest = 0.0;
        for (const PTerm& t : it->rest) rest += t.coeff * full[t.var];
        full[it->var] = (it->rhs - rest) / it->coeff;
        break;
      }
      case PostRule::abs_split:
        full[it->var] = (full[it->plus] + full[it->minus]) / it->coeff;
        break;
    }
  }

  LpSolution solution;
  solution.status = LpStatus::optimal;
  solution.values.assign(full.begin(), full.begin() + nv);
  double obj = problem.objective_constant;
  for (const LpTerm& term : problem.objective)
    obj += term.coeff * solution.values[term.var];
  solution.objective = obj;
  return solution;
}

namespace {

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

std::string format_terms(const LpProblem& problem,
                         const std::vector<LpTerm>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const LpTerm& t : terms) {
    const std::string name = problem.names.empty()
                                 ? "x" + std::to_string(t.var)
                                 : problem.names[t.var];
    if (first) {
      out += format_number(t.coeff) + "*" + name;
      first = false;
    } else if (t.coeff < 0) {
      out += " - " + format_number(-t.coeff) + "*" + name;
    } else {
      out += " + " + format_number(t.coeff) + "*" + name;
    }
  }
  return out;
}

}  // namespace

std::string format_lp(const LpProblem& problem) {
  std::string out = "min " + format_terms(problem, problem.objective);
  if (problem.objective_constant != 0.0)
    out += " + " + format_number(problem.objective_constant);
  out += "\n";
  for (const LpConstraint& c : problem.constraints) {
    const char* rel = c.relation == LpRelation::less_equal
                          ? "<="
                          : (c.relation == LpRelation::greater_equal ? ">=" : "=");
    out += format_terms(problem, c.terms);
    out += std::string(" ") + rel + " " + format_number(c.rhs) + "\n";
  }
  for (int j = 0; j < problem.var_count; ++j) {
    const double lo = problem.lower[j];
    const double up = problem.upper[j];
    if (lo == 0.0 && up == kInfinity) continue;
    const std::string name =
        problem.names.empty() ? "x" + std::to_string(j) : problem.names[j];
    out += name + " in [" +
           (lo == -kInfinity ? std::string("-inf") : format_number(lo)) + ", " +
           (up == kInfinity ? std::string("inf") : format_number(up)) + "]\n";
  }
  return out;
}

}  // namespace rmove
