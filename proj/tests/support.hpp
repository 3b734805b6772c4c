#pragma once

#include <vector>

#include "rmove/graph.hpp"
#include "rmove/rng.hpp"

namespace rmove::testing {

// Four-node fixture used across the suites: s-a-b-t path with a chord.
// Initial cut 1.5 (edges (a,b) and (a,t)); the best single move keeps it.
inline Instance t1(int r = 1) {
  WeightedGraph g(4, {{0, 1, 2.0}, {1, 2, 1.0}, {2, 3, 2.0}, {1, 3, 0.5}});
  Labeling initial{2, {1, 1, 2, 2}};
  return Instance(std::move(g), std::move(initial), {0, 3}, r);
}

// Random instance: terminals are ids 0..k-1 labeled 1..k, every other node
// gets a uniform label, each pair becomes an edge with probability
// edge_prob, and weights are drawn from {0.5, 1.0, ..., 4.0}.
inline Instance random_instance(int n, int k, int r, double edge_prob,
                                Rng& rng) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.uniform01() < edge_prob)
        edges.push_back(
            {u, v, 0.5 * static_cast<double>(rng.uniform_int(1, 8))});
  Labeling initial{k, std::vector<int>(n, 1)};
  std::vector<int> terminals(k);
  for (int i = 0; i < k; ++i) {
    terminals[i] = i;
    initial.of[i] = i + 1;
  }
  for (int v = k; v < n; ++v)
    initial.of[v] = static_cast<int>(rng.uniform_int(1, k));
  return Instance(WeightedGraph(n, std::move(edges)), std::move(initial),
                  std::move(terminals), r);
}

// Worst-case relaxation family built by hand (mirrors the generator, kept
// independent so generator tests have a second opinion): a path whose first
// edge has weight epsilon followed by r unit edges, plus a disjoint unit
// path of tail_len nodes ending in the second terminal.
inline Instance handmade_gap(int r, double epsilon, int tail_len) {
  const int n = r + 2 + tail_len;
  std::vector<Edge> edges;
  edges.push_back({0, 1, epsilon});
  for (int i = 1; i <= r; ++i) edges.push_back({i, i + 1, 1.0});
  for (int i = r + 2; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  Labeling initial{2, std::vector<int>(n, 2)};
  initial.of[0] = 1;
  return Instance(WeightedGraph(n, std::move(edges)), std::move(initial),
                  {0, n - 1}, r);
}

}  // namespace rmove::testing
