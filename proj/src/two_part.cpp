#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <utility>
#include <vector>

#include "rmove/errors.hpp"
#include "rmove/two_part.hpp"

namespace rmove {

MinCut min_st_cut(const WeightedGraph& graph, int s, int t) {
  const int n = graph.node_count();
  if (s < 0 || s >= n || t < 0 || t >= n)
    throw parameter_error("terminal id out of range");
  if (s == t) throw parameter_error("source and sink must differ");

  // Paired residual arcs; arc a and a^1 are opposites.  An undirected edge
  // starts with weight capacity in both directions.
  std::vector<int> head(n, -1);
  std::vector<int> next_arc, arc_to;
  std::vector<double> arc_cap;
  auto add_arc = [&](int u, int v, double cap) {
    arc_to.push_back(v);
    arc_cap.push_back(cap);
    next_arc.push_back(head[u]);
    head[u] = static_cast<int>(arc_to.size()) - 1;
  };
  for (const Edge& edge : graph.edges()) {
    add_arc(edge.u, edge.v, edge.weight);
    add_arc(edge.v, edge.u, edge.weight);
  }

  // Edmonds-Karp; each augmentation zeroes its bottleneck arc exactly, so
  // plain > 0 comparisons are safe.
  std::vector<int> parent_arc(n);
  std::vector<int> queue;
  queue.reserve(n);
  while (true) {
    std::fill(parent_arc.begin(), parent_arc.end(), -1);
    parent_arc[s] = -2;
    queue.assign(1, s);
    for (std::size_t at = 0; at < queue.size() && parent_arc[t] == -1; ++at) {
      const int u = queue[at];
      for (int a = head[u]; a != -1; a = next_arc[a])
        if (arc_cap[a] > 0.0 && parent_arc[arc_to[a]] == -1) {
          parent_arc[arc_to[a]] = a;
          queue.push_back(arc_to[a]);
        }
    }
    if (parent_arc[t] == -1) break;

    double bottleneck = std::numeric_limits<double>::infinity();
    for (int v = t; v != s; v = arc_to[parent_arc[v] ^ 1])
      bottleneck = std::min(bottleneck, arc_cap[parent_arc[v]]);
    for (int v = t; v != s; v = arc_to[parent_arc[v] ^ 1]) {
      arc_cap[parent_arc[v]] -= bottleneck;
      arc_cap[parent_arc[v] ^ 1] += bottleneck;
    }
  }

  // Residual reachability gives the unique minimal source side.
  std::vector<char> reachable(n, 0);
  reachable[s] = 1;
  queue.assign(1, s);
  for (std::size_t at = 0; at < queue.size(); ++at)
    for (int a = head[queue[at]]; a != -1; a = next_arc[a])
      if (arc_cap[a] > 0.0 && !reachable[arc_to[a]]) {
        reachable[arc_to[a]] = 1;
        queue.push_back(arc_to[a]);
      }
  internal_check(!reachable[t], "sink reachable after max flow");

  MinCut result;
  for (int v = 0; v < n; ++v)
    if (reachable[v]) result.source_side.push_back(v);
  for (const Edge& edge : graph.edges())
    if (reachable[edge.u] != reachable[edge.v]) result.value += edge.weight;
  return result;
}

WeightedGraph build_alpha_graph(const Instance& instance, double alpha) {
  if (instance.k() != 2)
    throw parameter_error("terminal binding needs a two-partition instance");
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw parameter_error("alpha must be non-negative and finite");
  if (alpha == 0.0) return instance.graph;

  std::vector<Edge> edges = instance.graph.edges();
  for (int v = 0; v < instance.n(); ++v) {
    if (instance.is_terminal(v)) continue;
    const int own = instance.terminals[instance.initial.of[v] - 1];
    edges.push_back({own, v, alpha});
  }
  return WeightedGraph(instance.n(), std::move(edges));
}

std::vector<int> moved_of_cut(const Instance& instance,
                              const std::vector<int>& source_side) {
  if (instance.k() != 2)
    throw parameter_error("cut sides need a two-partition instance");
  std::vector<char> on_source(instance.n(), 0);
  for (int v : source_side) {
    if (v < 0 || v >= instance.n())
      throw parameter_error("cut side node out of range");
    on_source[v] = 1;
  }
  std::vector<int> moved;
  for (int v = 0; v < instance.n(); ++v) {
    if (instance.is_terminal(v)) continue;
    const int side = on_source[v] ? 1 : 2;
    if (side != instance.initial.of[v]) moved.push_back(v);
  }
  return moved;
}

Labeling labeling_moving(const Instance& instance,
                         const std::vector<int>& moved) {
  if (instance.k() != 2)
    throw parameter_error("moves between two sides need k = 2");
  Labeling labeling = instance.initial;
  std::vector<char> seen(instance.n(), 0);
  for (int v : moved) {
    if (v < 0 || v >= instance.n())
      throw parameter_error("moved node out of range");
    if (instance.is_terminal(v))
      throw terminal_moved_error("node " + std::to_string(v) +
                                 " is a terminal");
    if (seen[v]) throw parameter_error("moved node listed twice");
    seen[v] = 1;
    labeling.of[v] = 3 - labeling.of[v];
  }
  return labeling;
}

namespace {

double retire_tolerance(double value) { return 1e-9 * (1.0 + std::abs(value)); }

}  // namespace

BreakpointList find_breakpoints(const Instance& instance) {
  if (instance.k() != 2)
    throw parameter_error("breakpoints need a two-partition instance");
  const int s = instance.terminals[0];
  const int t = instance.terminals[1];
  const double initial_cut = cut_value(instance.graph, instance.initial);

  BreakpointList out;
  auto run_min_cut = [&](double alpha) {
    ++out.min_cut_calls;
    return min_st_cut(build_alpha_graph(instance, alpha), s, t);
  };
  auto delta_of = [&instance](const std::vector<int>& moved) {
    return cut_value(instance.graph, labeling_moving(instance, moved));
  };

  const MinCut base = run_min_cut(0.0);
  if (initial_cut - base.value <= retire_tolerance(initial_cut)) {
    // The initial labeling already attains the global min cut value.
    out.breakpoints.push_back({0, {}, initial_cut, 0.0});
    return out;
  }

  struct Entry {
    std::vector<int> moved;
    double delta = 0.0;
    double witness = 0.0;
    bool witnessed = false;
  };
  std::vector<Entry> found;
  found.push_back({moved_of_cut(instance, base.source_side), base.value, 0.0,
                   true});
  found.push_back({{}, initial_cut, 0.0, false});

  std::deque<std::pair<int, int>> active;  // (larger set, smaller set)
  active.emplace_back(0, 1);
  while (!active.empty()) {
    const auto [big, small] = active.front();
    active.pop_front();
    const int r_big = static_cast<int>(found[big].moved.size());
    const int r_small = static_cast<int>(found[small].moved.size());
    const double alpha =
        (found[small].delta - found[big].delta) / (r_big - r_small);

    const MinCut cut = run_min_cut(alpha);
    const double target = r_big * alpha + found[big].delta;
    std::vector<int> moved = moved_of_cut(instance, cut.source_side);
    const int size = static_cast<int>(moved.size());

    if (std::abs(cut.value - target) <= retire_tolerance(cut.value) ||
        size <= r_small || size >= r_big) {
      // Both endpoints are min cuts at alpha; nothing lies between them.
      if (!found[small].witnessed) {
        found[small].witness = alpha;
        found[small].witnessed = true;
      }
      if (!found[big].witnessed) {
        found[big].witness = alpha;
        found[big].witnessed = true;
      }
      continue;
    }
    const double moved_delta = delta_of(moved);
    found.push_back({std::move(moved), moved_delta, alpha, true});
    const int inserted = static_cast<int>(found.size()) - 1;
    active.emplace_back(big, inserted);
    active.emplace_back(inserted, small);
  }

  std::sort(found.begin(), found.end(), [](const Entry& a, const Entry& b) {
    return a.moved.size() > b.moved.size();
  });
  // The base cut minimizes the side, not the move count, so it may tie the
  // min cut value with fewer moves discovered later. Such a line never owns
  // an envelope segment; keep only entries whose delta strictly improves as
  // the size grows.
  std::vector<const Entry*> kept;
  for (auto it = found.rbegin(); it != found.rend(); ++it)
    if (kept.empty() || it->delta < kept.back()->delta) kept.push_back(&*it);
  std::reverse(kept.begin(), kept.end());
  for (const Entry* entry : kept) {
    internal_check(entry->witnessed, "breakpoint without a witness alpha");
    out.breakpoints.push_back({static_cast<int>(entry->moved.size()),
                               entry->moved, entry->delta, entry->witness});
  }
  for (std::size_t i = 0; i + 1 < out.breakpoints.size(); ++i) {
    internal_check(
        out.breakpoints[i].size > out.breakpoints[i + 1].size &&
            out.breakpoints[i].delta < out.breakpoints[i + 1].delta,
        "breakpoint list lost its monotonicity");
  }
  return out;
}

CutResult two_part_solve(const Instance& instance) {
  const BreakpointList list = find_breakpoints(instance);
  const Breakpoint* chosen = nullptr;
  for (const Breakpoint& breakpoint : list.breakpoints)
    if (breakpoint.size <= instance.r) {
      chosen = &breakpoint;
      break;
    }
  internal_check(chosen != nullptr, "breakpoint list missing the empty set");
  return make_cut_result(instance, labeling_moving(instance, chosen->moved),
                         "two-part");
}

}  // namespace rmove
