#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "rmove/errors.hpp"
#include "rmove/lp.hpp"
#include "rmove/rng.hpp"
#include "support.hpp"

using namespace rmove;

namespace {

// Recomputes the relaxation objective from the assignment alone.
double assignment_objective(const Instance& inst,
                            const FractionalAssignment& x) {
  double total = 0.0;
  for (const Edge& e : inst.graph.edges())
    total += e.weight * distance(x, e.u, e.v);
  return total;
}

}  // namespace

TEST_CASE("generic solver handles the textbook cases") {
  SUBCASE("single bounded variable") {
    LpProblem lp;
    lp.add_variable("x");
    lp.objective = {{0, 1.0}};
    lp.add_constraint({{0, 1.0}}, LpRelation::greater_equal, 1.0);
    LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.objective == doctest::Approx(1.0));
    CHECK(sol.values[0] == doctest::Approx(1.0));
  }
  SUBCASE("conflicting constraints are infeasible") {
    LpProblem lp;
    lp.add_variable("x");
    lp.objective = {{0, 1.0}};
    lp.add_constraint({{0, 1.0}}, LpRelation::greater_equal, 1.0);
    lp.add_constraint({{0, 1.0}}, LpRelation::less_equal, 0.0);
    CHECK(solve_lp(lp).status == LpStatus::infeasible);
  }
  SUBCASE("shared constraint splits between variables") {
    LpProblem lp;
    lp.add_variable("x");
    lp.add_variable("y");
    lp.objective = {{0, 1.0}, {1, 1.0}};
    lp.add_constraint({{0, 1.0}, {1, 1.0}}, LpRelation::greater_equal, 2.0);
    LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.objective == doctest::Approx(2.0));
  }
  SUBCASE("maximization via negated costs is unbounded") {
    LpProblem lp;
    lp.add_variable("x");
    lp.objective = {{0, -1.0}};
    CHECK(solve_lp(lp).status == LpStatus::unbounded);
  }
  SUBCASE("free variable reaches a negative optimum") {
    LpProblem lp;
    lp.add_variable("x", -kInfinity);
    lp.objective = {{0, 1.0}};
    lp.add_constraint({{0, 1.0}}, LpRelation::greater_equal, -5.0);
    LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.objective == doctest::Approx(-5.0));
    CHECK(sol.values[0] == doctest::Approx(-5.0));
  }
  SUBCASE("upper bounds are respected") {
    LpProblem lp;
    lp.add_variable("x", 0.0, 3.0);
    lp.objective = {{0, -1.0}};
    LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.values[0] == doctest::Approx(3.0));
    CHECK(sol.objective == doctest::Approx(-3.0));
  }
  SUBCASE("crossed bounds are infeasible") {
    LpProblem lp;
    lp.add_variable("x", 2.0, 1.0);
    CHECK(solve_lp(lp).status == LpStatus::infeasible);
  }
  SUBCASE("redundant equalities do not confuse phase one") {
    LpProblem lp;
    lp.add_variable("x");
    lp.add_variable("y");
    lp.objective = {{0, 1.0}};
    lp.add_constraint({{0, 1.0}, {1, 1.0}}, LpRelation::equal, 1.0);
    lp.add_constraint({{0, 2.0}, {1, 2.0}}, LpRelation::equal, 2.0);
    LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.objective == doctest::Approx(0.0));
  }
  SUBCASE("objective constant is added") {
    LpProblem lp;
    lp.add_variable("x");
    lp.objective = {{0, 1.0}};
    lp.objective_constant = 10.0;
    lp.add_constraint({{0, 1.0}}, LpRelation::greater_equal, 1.0);
    CHECK(solve_lp(lp).objective == doctest::Approx(11.0));
  }
}

TEST_CASE("rhs-only re-solves match cold solves") {
  // The solver reuses the previous basis when consecutive programs differ
  // only in right-hand sides.  Interleaving a structurally different program
  // forces a from-scratch solve of the same data for comparison.
  auto make = [](double b) {
    LpProblem lp;
    lp.add_variable("x", 0.0, 10.0);
    lp.add_variable("y", 0.0, 10.0);
    lp.objective = {{0, 1.0}, {1, 2.0}};
    lp.add_constraint({{0, 1.0}, {1, 1.0}}, LpRelation::greater_equal, b);
    lp.add_constraint({{0, 1.0}, {1, -1.0}}, LpRelation::greater_equal, -2.0);
    return lp;
  };
  auto break_reuse = [] {
    LpProblem lp;
    lp.add_variable("a");
    lp.add_variable("b");
    lp.add_variable("c");
    lp.objective = {{0, 1.0}, {1, 1.0}, {2, 1.0}};
    lp.add_constraint({{0, 1.0}, {1, 2.0}}, LpRelation::greater_equal, 1.0);
    lp.add_constraint({{1, 1.0}, {2, 1.0}}, LpRelation::greater_equal, 1.0);
    REQUIRE(solve_lp(lp).status == LpStatus::optimal);
  };

  SUBCASE("loosening and tightening a scalar program") {
    LpSolution first = solve_lp(make(3.0));
    REQUIRE(first.status == LpStatus::optimal);
    CHECK(first.objective == doctest::Approx(3.0));
    // Consecutive re-solves at new right-hand sides (basis reuse eligible).
    LpSolution looser = solve_lp(make(5.0));
    LpSolution tighter = solve_lp(make(1.0));
    REQUIRE(looser.status == LpStatus::optimal);
    REQUIRE(tighter.status == LpStatus::optimal);
    break_reuse();
    LpSolution cold5 = solve_lp(make(5.0));
    break_reuse();
    LpSolution cold1 = solve_lp(make(1.0));
    CHECK(looser.objective == doctest::Approx(cold5.objective).epsilon(1e-9));
    CHECK(tighter.objective == doctest::Approx(cold1.objective).epsilon(1e-9));
    // This family has unique optima, so the vertices must agree exactly.
    for (int v = 0; v < 2; ++v) {
      CHECK(looser.values[v] == doctest::Approx(cold5.values[v]).epsilon(1e-7));
      CHECK(tighter.values[v] == doctest::Approx(cold1.values[v]).epsilon(1e-7));
    }
  }

  SUBCASE("budget sweep over one relaxation") {
    Rng rng(17, "warm");
    Instance inst = rmove::testing::random_instance(9, 3, 1, 0.5, rng);
    std::vector<double> chained;
    for (int r = 1; r <= 4; ++r) {
      LpSolution sol = solve_lp(build_rmove_lp(inst.with_r(r)));
      REQUIRE(sol.status == LpStatus::optimal);
      extract_assignment(inst.with_r(r), sol, true);  // validates the vertex
      chained.push_back(sol.objective);
    }
    for (std::size_t i = 1; i < chained.size(); ++i)
      CHECK(chained[i] <= chained[i - 1] + 1e-9);
    for (int r = 1; r <= 4; ++r) {
      break_reuse();
      LpSolution cold = solve_lp(build_rmove_lp(inst.with_r(r)));
      REQUIRE(cold.status == LpStatus::optimal);
      CHECK(chained[static_cast<std::size_t>(r - 1)] ==
            doctest::Approx(cold.objective).epsilon(1e-9));
    }
  }

  SUBCASE("re-solve that turns infeasible is detected") {
    LpSolution ok = solve_lp(make(3.0));
    REQUIRE(ok.status == LpStatus::optimal);
    CHECK(solve_lp(make(25.0)).status == LpStatus::infeasible);
    LpSolution back = solve_lp(make(4.0));
    REQUIRE(back.status == LpStatus::optimal);
    CHECK(back.objective == doctest::Approx(4.0));
  }
}

TEST_CASE("assignment helpers") {
  Instance inst = rmove::testing::t1();
  FractionalAssignment x = integral_assignment(inst.initial);
  CHECK(x.at(0, 1) == 1.0);
  CHECK(x.at(0, 2) == 0.0);
  CHECK(x.at(2, 2) == 1.0);
  CHECK(distance(x, 0, 1) == doctest::Approx(0.0));
  CHECK(distance(x, 1, 2) == doctest::Approx(1.0));
  CHECK(move_mass(inst, x) == doctest::Approx(0.0));

  FractionalAssignment half(4, 2);
  half.at(0, 1) = 1.0;
  half.at(3, 2) = 1.0;
  half.at(1, 1) = 0.5;
  half.at(1, 2) = 0.5;
  half.at(2, 1) = 0.25;
  half.at(2, 2) = 0.75;
  CHECK(distance(half, 1, 2) == doctest::Approx(0.25));
  CHECK(move_mass(inst, half) == doctest::Approx(0.5 + 0.25));
  CHECK(assignment_violation(inst, half, true).empty());
  CHECK(!assignment_violation(inst, half, false).empty() == false);

  // violations in order: shape, terminal pin, negativity, row sum, budget
  FractionalAssignment wrong_shape(3, 2);
  CHECK(!assignment_violation(inst, wrong_shape, false).empty());
  FractionalAssignment loose = half;
  loose.at(0, 1) = 1.0 - 1e-9;
  CHECK(!assignment_violation(inst, loose, false).empty());
  loose = half;
  loose.at(1, 1) = -1e-8;
  loose.at(1, 2) = 1.0 + 1e-8;
  CHECK(!assignment_violation(inst, loose, false).empty());
  loose = half;
  loose.at(1, 1) = 0.7;
  CHECK(!assignment_violation(inst, loose, false).empty());
  Instance tight = inst.with_r(0);
  CHECK(!assignment_violation(tight, half, true).empty());
  CHECK(assignment_violation(tight, half, false).empty());
  CHECK_THROWS_AS(check_assignment(tight, half, true), lp_extraction_error);
}

TEST_CASE("relaxation optimum of the worst-case family") {
  // First edge weight epsilon, then r unit edges: the relaxation spreads the
  // move budget along the path and pays epsilon/(r+1).
  for (int r = 1; r <= 3; ++r) {
    Instance inst = rmove::testing::handmade_gap(r, 0.1, 2);
    LpSolution literal = solve_lp(build_rmove_lp(inst));
    REQUIRE(literal.status == LpStatus::optimal);
    CHECK(literal.objective == doctest::Approx(0.1 / (r + 1)).epsilon(1e-6));

    RelaxationSolution fast = solve_rmove_relaxation(inst);
    CHECK(fast.objective == doctest::Approx(literal.objective).epsilon(1e-7));
    CHECK(assignment_violation(inst, fast.assignment, true).empty());

    FractionalAssignment lit =
        extract_assignment(inst, literal, true);
    CHECK(assignment_objective(inst, lit) ==
          doctest::Approx(literal.objective).epsilon(1e-6));
  }
}

TEST_CASE("fast relaxation matches the literal program on random instances") {
  Rng rng(20260816, "lp-agreement");
  int k2_checked = 0;
  for (int trial = 0; trial < 14; ++trial) {
    const int n = 5 + static_cast<int>(rng.uniform_int(0, 3));
    const int k = 2 + static_cast<int>(rng.uniform_int(0, 1));
    const int r = static_cast<int>(rng.uniform_int(0, 3));
    Instance inst = rmove::testing::random_instance(n, k, r, 0.55, rng);
    CAPTURE(trial);
    CAPTURE(n);
    CAPTURE(k);
    CAPTURE(r);

    LpSolution literal = solve_lp(build_rmove_lp(inst));
    REQUIRE(literal.status == LpStatus::optimal);
    RelaxationSolution fast = solve_rmove_relaxation(inst);
    CHECK(std::abs(fast.objective - literal.objective) <=
          1e-6 * (1.0 + std::abs(literal.objective)));
    CHECK(assignment_violation(inst, fast.assignment, true).empty());
    CHECK(assignment_objective(inst, fast.assignment) ==
          doctest::Approx(fast.objective).epsilon(1e-6));

    // The classic relaxation drops the budget row, so it can only improve.
    LpSolution classic = solve_lp(build_ckr_lp(inst));
    REQUIRE(classic.status == LpStatus::optimal);
    CHECK(classic.objective <= literal.objective + 1e-7);
    RelaxationSolution fast_classic = solve_multiway_relaxation(inst);
    CHECK(std::abs(fast_classic.objective - classic.objective) <=
          1e-6 * (1.0 + std::abs(classic.objective)));

    // A budget covering every non-terminal makes the two coincide.
    Instance loose = inst.with_r(n);
    CHECK(std::abs(solve_rmove_relaxation(loose).objective -
                   classic.objective) <=
          1e-6 * (1.0 + std::abs(classic.objective)));

    // Scalar two-partition form agrees with the vector form when k = 2.
    if (k == 2) {
      ++k2_checked;
      LpSolution scalar = solve_lp(build_rmove2_lp(inst));
      REQUIRE(scalar.status == LpStatus::optimal);
      CHECK(std::abs(scalar.objective - literal.objective) <= 1e-6);
    }
  }
  CHECK(k2_checked > 0);
}

TEST_CASE("feasible relaxation solutions satisfy the threshold bound") {
  // Mass below lambda on the home coordinate is capped: fewer than
  // r/(1-lambda) nodes can sit below any lambda < 1.
  Rng rng(99, "lemma-threshold");
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 6 + static_cast<int>(rng.uniform_int(0, 2));
    const int k = 2 + static_cast<int>(rng.uniform_int(0, 1));
    const int r = 1 + static_cast<int>(rng.uniform_int(0, 2));
    Instance inst = rmove::testing::random_instance(n, k, r, 0.6, rng);
    FractionalAssignment x = solve_rmove_relaxation(inst).assignment;
    for (double lambda : {0.0, 0.25, 0.5, 0.75, 0.9}) {
      int low = 0;
      for (int v = 0; v < n; ++v)
        if (x.at(v, inst.initial.of[v]) < lambda) ++low;
      CHECK(low < inst.r / (1.0 - lambda) + 1e-9);
    }
    // Half the l1 distance dominates every single coordinate difference.
    for (const Edge& e : inst.graph.edges()) {
      const double d = distance(x, e.u, e.v);
      for (int i = 1; i <= k; ++i)
        CHECK(d >= std::abs(x.at(e.u, i) - x.at(e.v, i)) - 1e-9);
    }
  }
}

TEST_CASE("priced two-partition program needs a valid alpha") {
  Instance inst = rmove::testing::t1();
  CHECK_THROWS_AS(build_lagrangian_lp(inst, -1.0), parameter_error);
  CHECK_THROWS_AS(build_lagrangian_lp(inst, std::nan("")), parameter_error);

  // At alpha = 0 pricing vanishes: optimum equals the unbudgeted scalar LP.
  LpSolution priced = solve_lp(build_lagrangian_lp(inst, 0.0));
  LpSolution unbudgeted = solve_lp(build_rmove2_lp(inst.with_r(inst.n())));
  REQUIRE(priced.status == LpStatus::optimal);
  REQUIRE(unbudgeted.status == LpStatus::optimal);
  CHECK(priced.objective == doctest::Approx(unbudgeted.objective).epsilon(1e-9));

  // Large alpha forbids fractional moves: optimum is the initial cut.
  LpSolution frozen = solve_lp(build_lagrangian_lp(inst, 100.0));
  REQUIRE(frozen.status == LpStatus::optimal);
  CHECK(frozen.objective == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("two-partition builders reject k != 2") {
  Rng rng(4, "k3");
  Instance inst = rmove::testing::random_instance(6, 3, 1, 0.5, rng);
  CHECK_THROWS_AS(build_rmove2_lp(inst), parameter_error);
  CHECK_THROWS_AS(build_lagrangian_lp(inst, 1.0), parameter_error);
}

TEST_CASE("extraction rejects junk solutions") {
  Instance inst = rmove::testing::t1();
  LpSolution sol;
  sol.status = LpStatus::infeasible;
  CHECK_THROWS_AS(extract_assignment(inst, sol, true), lp_extraction_error);
  sol.status = LpStatus::optimal;
  sol.values.assign(3, 0.0);  // too short
  CHECK_THROWS_AS(extract_assignment(inst, sol, true), lp_extraction_error);
  sol.values.assign(8, 0.125);  // rows sum to 0.25, terminals wrong
  CHECK_THROWS_AS(extract_assignment(inst, sol, true), lp_extraction_error);
}

TEST_CASE("formatted program mentions every block") {
  Instance inst = rmove::testing::t1();
  const std::string text = format_lp(build_rmove_lp(inst));
  CHECK(text.find("min") != std::string::npos);
  CHECK(text.find("x_0_1") != std::string::npos);
  CHECK(text.find("y_0_1_1") != std::string::npos);
  CHECK(text.find("d_0_1") != std::string::npos);
  CHECK(text.find("<=") != std::string::npos);
  CHECK(text.find(">=") != std::string::npos);
  const std::string scalar = format_lp(build_rmove2_lp(inst));
  CHECK(scalar.find("x_1 in [0, 1]") != std::string::npos);
}
