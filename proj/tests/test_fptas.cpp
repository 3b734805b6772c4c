#include <algorithm>
#include <vector>

#include "doctest.h"
#include "rmove/baselines.hpp"
#include "rmove/errors.hpp"
#include "rmove/fptas.hpp"
#include "rmove/rng.hpp"
#include "support.hpp"

using namespace rmove;
using rmove::testing::random_instance;
using rmove::testing::t1;

TEST_CASE("candidate_set applies the boundary threshold") {
  // T1 boundary weights: node 1 -> 1.5, node 2 -> 1.0, initial cut 1.5.
  const Instance instance = t1(1);
  CHECK(candidate_set(instance, 1.5) == std::vector<int>{1, 2});
  CHECK(candidate_set(instance, 4.0) == std::vector<int>{1});
  CHECK(candidate_set(instance.with_r(0), 1.5).empty());
  CHECK_THROWS_AS(candidate_set(instance, 1.0), parameter_error);
}

TEST_CASE("candidate_set with an uncut initial labeling keeps everyone") {
  WeightedGraph graph(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  const Instance instance(graph, {2, {1, 1, 2, 2}}, {0, 2}, 1);
  CHECK(candidate_set(instance, 2.0) == std::vector<int>{1, 3});
}

TEST_CASE("candidate_set size never exceeds its guarantee") {
  Rng rng(33, "fptas-size");
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 6 + rng.uniform_int(0, 6);
    const int k = 2 + rng.uniform_int(0, 1);
    const int r = 1 + rng.uniform_int(0, 3);
    const double alpha = 1.0 + 0.25 * (1 + rng.uniform_int(0, 3));
    const Instance instance = random_instance(n, k, r, 0.5, rng);
    if (cut_value(instance.graph, instance.initial) == 0.0) continue;
    const std::size_t size = candidate_set(instance, alpha).size();
    CHECK(static_cast<double>(size) <=
          2.0 * instance.r * alpha / (alpha - 1.0) + 1e-9);
  }
}

TEST_CASE("fptas_solve keeps an optimal initial labeling") {
  const CutResult result = fptas_solve(t1(1), 0.5);
  CHECK(result.cut_value == doctest::Approx(1.5));
  CHECK(result.moved.empty());
  CHECK(result.algorithm == "fptas");
}

TEST_CASE("fptas_solve with no budget returns the initial cut") {
  const CutResult result = fptas_solve(t1(0), 0.5);
  CHECK(result.cut_value == doctest::Approx(1.5));
  CHECK(result.moved.empty());
  CHECK(result.labeling.of == t1(0).initial.of);
}

TEST_CASE("fptas_solve rejects non-positive epsilon") {
  CHECK_THROWS_AS(fptas_solve(t1(1), 0.0), parameter_error);
  CHECK_THROWS_AS(fptas_solve(t1(1), -0.5), parameter_error);
}

TEST_CASE("fptas_solve finds the improving move on the star") {
  WeightedGraph graph(5, {{2, 0, 1.0}, {2, 1, 1.0}, {2, 3, 1.0}, {2, 4, 1.0}});
  const Instance instance(graph, {2, {1, 2, 1, 2, 2}}, {0, 1}, 1);
  const CutResult result = fptas_solve(instance, 0.5);
  CHECK(result.cut_value == doctest::Approx(1.0));
  CHECK(result.moved == std::vector<int>{2});
}

TEST_CASE("fptas_solve stays within (1+eps) of the optimum") {
  Rng rng(77, "fptas-ratio");
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 5 + rng.uniform_int(0, 4);
    const int k = 2 + rng.uniform_int(0, 1);
    const int r = rng.uniform_int(0, 3);
    const Instance instance = random_instance(n, k, r, 0.55, rng);
    const double tol = instance.graph.cut_tolerance();
    const double initial_cut = cut_value(instance.graph, instance.initial);
    const CutResult exact = exact_brute_force(instance);

    for (double epsilon : {0.25, 0.5, 1.0}) {
      const CutResult result = fptas_solve(instance, epsilon);
      CHECK(static_cast<int>(result.moved.size()) <= r);
      CHECK(result.cut_value <= initial_cut + tol);
      CHECK(result.cut_value <= (1.0 + epsilon) * exact.cut_value + tol);
    }
  }
}

TEST_CASE("contracted cuts match lifted cuts on the original graph") {
  Rng rng(13, "fptas-lift");
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 6 + rng.uniform_int(0, 4);
    const int k = 2 + rng.uniform_int(0, 1);
    const Instance instance = random_instance(n, k, 2, 0.6, rng);

    // Contract a random non-terminal and relabel the child arbitrarily.
    std::vector<int> movable;
    for (int v = 0; v < n; ++v)
      if (!instance.is_terminal(v)) movable.push_back(v);
    const int v = movable[rng.uniform_int(0, movable.size() - 1)];
    const int j = 1 + rng.uniform_int(0, k - 1);
    if (instance.initial.of[v] == j) continue;
    const Contraction contraction = contract_into_terminal(instance, v, j);

    Labeling child_labels = contraction.instance.initial;
    for (int u = 0; u < contraction.instance.n(); ++u)
      if (!contraction.instance.is_terminal(u))
        child_labels.of[u] = 1 + rng.uniform_int(0, k - 1);

    Labeling lifted{k, std::vector<int>(n, 0)};
    for (int u = 0; u < n; ++u)
      lifted.of[u] = child_labels.of[contraction.new_id[u]];

    CHECK(cut_value(contraction.instance.graph, child_labels) ==
          doctest::Approx(cut_value(instance.graph, lifted)).epsilon(1e-9));
  }
}
