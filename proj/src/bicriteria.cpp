#include <cmath>
#include <utility>
#include <vector>

#include "rmove/bicriteria.hpp"
#include "rmove/errors.hpp"
#include "rmove/rng.hpp"

namespace rmove {

namespace {

constexpr double kSameEntryTol = 1e-12;

int differing_entries(const std::vector<double>& rows, int k, int u, int v) {
  int count = 0;
  for (int i = 0; i < k; ++i)
    if (std::abs(rows[u * k + i] - rows[v * k + i]) > kSameEntryTol) ++count;
  return count;
}

}  // namespace

SubdividedInstance subdivide(const WeightedGraph& graph,
                             const FractionalAssignment& x) {
  if (x.n != graph.node_count() || x.k < 2)
    throw parameter_error("assignment shape does not match the graph");
  const int k = x.k;
  std::vector<double> rows = x.x;
  std::vector<Edge> edges = graph.edges();
  int nodes = graph.node_count();

  for (std::size_t idx = 0; idx < edges.size();) {
    int u = edges[idx].u;
    int v = edges[idx].v;
    if (differing_entries(rows, k, u, v) <= 2) {
      ++idx;
      continue;
    }
    // Smallest nonzero coordinate gap, lowest coordinate on ties.
    int ci = -1;
    double alpha = 0.0;
    for (int i = 0; i < k; ++i) {
      const double gap = std::abs(rows[u * k + i] - rows[v * k + i]);
      if (gap > kSameEntryTol && (ci < 0 || gap < alpha)) {
        ci = i;
        alpha = gap;
      }
    }
    if (rows[u * k + ci] > rows[v * k + ci]) std::swap(u, v);
    // Some coordinate must shrink by alpha; the minimality of alpha makes
    // any positive difference large enough.
    int cj = -1;
    for (int j = 0; j < k; ++j)
      if (rows[u * k + j] - rows[v * k + j] >= alpha - kSameEntryTol) {
        cj = j;
        break;
      }
    internal_check(cj >= 0, "no coordinate can absorb a subdivision step");

    const int w = nodes++;
    rows.insert(rows.end(), rows.begin() + u * k, rows.begin() + (u + 1) * k);
    rows[w * k + ci] += alpha;
    rows[w * k + cj] -= alpha;
    const double weight = edges[idx].weight;
    edges[idx] = {u, w, weight};
    edges.push_back({w, v, weight});
  }

  FractionalAssignment extended(nodes, k);
  extended.x = std::move(rows);
  return {WeightedGraph(nodes, std::move(edges)), std::move(extended),
          graph.node_count()};
}

Labeling ckr_round(const WeightedGraph& graph, const FractionalAssignment& x,
                   double rho, bool sigma_reversed) {
  if (x.n != graph.node_count() || x.k < 2)
    throw parameter_error("assignment shape does not match the graph");
  for (const Edge& edge : graph.edges())
    if (differing_entries(x.x, x.k, edge.u, edge.v) > 2)
      throw subdivision_required_error(
          "edge endpoints differ in more than two entries");

  const int k = x.k;
  std::vector<int> label(x.n, 0);
  for (int step = 0; step < k - 1; ++step) {
    const int i = sigma_reversed ? k - 1 - step : step + 1;
    for (int v = 0; v < x.n; ++v)
      if (label[v] == 0 && x.at(v, i) > rho) label[v] = i;
  }
  for (int v = 0; v < x.n; ++v)
    if (label[v] == 0) label[v] = k;
  return {k, std::move(label)};
}

int bicriteria_move_bound(int r, double gamma) {
  if (!(gamma > 0.5) || !(gamma < 1.0))
    throw parameter_error("gamma must lie strictly between 1/2 and 1");
  if (r < 0) throw parameter_error("move budget must be non-negative");
  return static_cast<int>(std::floor(r / (1.0 - gamma) + 1e-9));
}

CutResult bicriteria_round(const Instance& instance,
                           const FractionalAssignment& x, double gamma,
                           std::uint64_t seed) {
  if (!(gamma > 0.5) || !(gamma < 1.0))
    throw parameter_error("gamma must lie strictly between 1/2 and 1");
  const std::string violation = assignment_violation(instance, x, true);
  if (!violation.empty()) throw feasibility_error(violation);

  Rng rng(seed, "bicriteria");
  const double lambda = rng.uniform((gamma + 1.0) / 3.0, gamma);
  const double rho = rng.uniform(0.0, lambda);
  const bool reversed = rng.bernoulli(0.5);

  const SubdividedInstance sub = subdivide(instance.graph, x);
  const int k = instance.k();
  std::vector<int> label(sub.graph.node_count(), 0);

  // lambda > 1/2, so at most one entry per node can reach it.
  for (int v = 0; v < sub.graph.node_count(); ++v)
    for (int i = 1; i <= k; ++i)
      if (sub.x.at(v, i) >= lambda) {
        internal_check(label[v] == 0, "two pinned entries on one node");
        label[v] = i;
      }

  for (int step = 0; step < k - 1; ++step) {
    const int i = reversed ? k - 1 - step : step + 1;
    for (int v = 0; v < sub.graph.node_count(); ++v)
      if (label[v] == 0 && sub.x.at(v, i) > rho) label[v] = i;
  }
  for (int v = 0; v < sub.graph.node_count(); ++v)
    if (label[v] == 0) label[v] = k;

  label.resize(instance.n());  // synthetic nodes carry no move accounting
  return make_cut_result(instance, {k, std::move(label)}, "bicriteria", seed);
}

}  // namespace rmove
