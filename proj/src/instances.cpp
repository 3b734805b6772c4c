#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rmove/errors.hpp"
#include "rmove/instances.hpp"
#include "rmove/rng.hpp"

namespace rmove {

Instance gen_sbm(const SbmParams& params) {
  const int n = params.n;
  const int k = params.k;
  if (n <= 0) throw parameter_error("block model needs n > 0");
  if (k < 2) throw parameter_error("block model needs k >= 2");
  if (n % k != 0)
    throw parameter_error("block count must divide the node count");
  if (!(params.p_in >= 0.0 && params.p_in <= 1.0) ||
      !(params.p_out >= 0.0 && params.p_out <= 1.0))
    throw parameter_error("edge probabilities must lie in [0, 1]");

  const int block_size = n / k;
  const auto block_of = [block_size](int v) { return v / block_size; };

  // Edges and labels use separate streams so the edge set is identical for
  // both relabel modes under the same seed.
  Rng edge_rng(params.seed, "sbm-edges");
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const double p = block_of(u) == block_of(v) ? params.p_in : params.p_out;
      if (edge_rng.bernoulli(p)) edges.push_back({u, v, 1.0});
    }

  std::vector<int> terminals(k);
  for (int b = 0; b < k; ++b) terminals[b] = b * block_size;

  Labeling initial{k, std::vector<int>(n)};
  for (int v = 0; v < n; ++v) initial.of[v] = block_of(v) + 1;
  if (params.relabel == RelabelMode::uniform_random) {
    Rng label_rng(params.seed, "sbm-labels");
    for (int v = 0; v < n; ++v) {
      if (v % block_size == 0) continue;  // terminals keep their partition
      initial.of[v] = static_cast<int>(label_rng.uniform_int(1, k));
    }
  }
  return Instance(WeightedGraph(n, std::move(edges)), std::move(initial),
                  std::move(terminals), params.r);
}

Instance gen_integrality_gap(int r, double epsilon, int tail_len) {
  if (r < 1) throw parameter_error("gap family needs r >= 1");
  if (tail_len < 1) throw parameter_error("gap family needs tail_len >= 1");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw parameter_error("epsilon must be a positive real");

  const int head = r + 2;  // path carrying terminal 1 and the budget edges
  const int n = head + tail_len;
  std::vector<Edge> edges;
  edges.push_back({0, 1, epsilon});
  for (int i = 1; i <= r; ++i) edges.push_back({i, i + 1, 1.0});
  for (int i = head; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});

  Labeling initial{2, std::vector<int>(n, 2)};
  initial.of[0] = 1;
  return Instance(WeightedGraph(n, std::move(edges)), std::move(initial),
                  {0, n - 1}, r);
}

Instance gen_densest_reduction(const WeightedGraph& input, int r,
                               int node_bound) {
  const int n = input.node_count();
  if (n < 1) throw parameter_error("reduction input needs at least one node");
  if (n > node_bound)
    throw capacity_error("reduction input exceeds the node bound (" +
                         std::to_string(n) + " > " +
                         std::to_string(node_bound) + ")");
  const int m = input.edge_count();

  // Layout: A copy 0..n-1, terminal t = n, one node per input edge at
  // n+1..n+m, clique filler up to |B| = 2n^2+n, terminal s last.
  const int b_size = 2 * n * n + n;
  const int t = n;
  const int first_b = n + 1;
  const int s = first_b + b_size;
  const int total = s + 1;

  std::vector<Edge> edges;
  for (const Edge& e : input.edges()) edges.push_back({e.u, e.v, 1.0});
  for (int a = 0; a < n; ++a) edges.push_back({a, t, 1.0});
  for (int j = 0; j < m; ++j) {
    const Edge& e = input.edges()[j];
    edges.push_back({e.u, first_b + j, 1.0});
    edges.push_back({e.v, first_b + j, 1.0});
  }
  // B plus s form a clique; s additionally reaches all of A but not t, so
  // moving X out of A changes the cut by exactly -2|E(X)|.
  for (int p = first_b; p <= s; ++p)
    for (int q = p + 1; q <= s; ++q) edges.push_back({p, q, 1.0});
  for (int a = 0; a < n; ++a) edges.push_back({a, s, 1.0});

  Labeling initial{2, std::vector<int>(total, 2)};
  for (int v = 0; v <= t; ++v) initial.of[v] = 1;
  return Instance(WeightedGraph(total, std::move(edges)), std::move(initial),
                  {t, s}, r);
}

namespace {

// Reads `a b` integer pairs, one per line; '#' starts a comment and blank
// lines are skipped.  Throws parse_error naming the offending line.
std::vector<std::pair<long long, long long>> read_pairs(
    const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw parse_error(std::string(what) + " file not readable: " + path);
  std::vector<std::pair<long long, long long>> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream row(line);
    long long a = 0, b = 0;
    if (!(row >> a)) continue;  // blank line
    std::string extra;
    if (!(row >> b) || (row >> extra))
      throw parse_error(std::string(what) + " line " + std::to_string(line_no) +
                        ": expected exactly two integers");
    out.push_back({a, b});
  }
  return out;
}

}  // namespace

Instance load_labeled_edgelist(const std::string& edges_path,
                               const std::string& membership_path,
                               int top_blocks, int* dropped_self_loops) {
  if (top_blocks < 2)
    throw parameter_error("need at least two blocks to form an instance");

  std::map<long long, long long> label_of;
  for (const auto& [node, label] : read_pairs(membership_path, "membership")) {
    const auto it = label_of.find(node);
    if (it != label_of.end() && it->second != label)
      throw format_error("node " + std::to_string(node) +
                         " has conflicting labels");
    label_of[node] = label;
  }

  std::map<long long, int> block_count;
  for (const auto& [node, label] : label_of) {
    (void)node;
    ++block_count[label];
  }
  if (static_cast<int>(block_count.size()) < top_blocks)
    throw format_error("fewer distinct labels than requested blocks");

  // Largest blocks first; equal sizes break toward the smaller label.
  std::vector<std::pair<long long, int>> order(block_count.begin(),
                                               block_count.end());
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::map<long long, int> partition_of_label;
  for (int i = 0; i < top_blocks; ++i)
    partition_of_label[order[i].first] = i + 1;

  // Kept nodes, renumbered in ascending original order.
  std::map<long long, int> new_id;
  std::vector<int> partition;
  for (const auto& [node, label] : label_of) {
    const auto it = partition_of_label.find(label);
    if (it == partition_of_label.end()) continue;
    new_id[node] = static_cast<int>(partition.size());
    partition.push_back(it->second);
  }

  int self_loops = 0;
  std::set<std::pair<int, int>> kept_edges;
  for (const auto& [a, b] : read_pairs(edges_path, "edge")) {
    if (a == b) {
      ++self_loops;
      continue;
    }
    if (label_of.find(a) == label_of.end() ||
        label_of.find(b) == label_of.end())
      throw format_error("edge endpoint without a membership label");
    const auto ia = new_id.find(a);
    const auto ib = new_id.find(b);
    if (ia == new_id.end() || ib == new_id.end()) continue;  // dropped block
    const int u = std::min(ia->second, ib->second);
    const int v = std::max(ia->second, ib->second);
    kept_edges.insert({u, v});  // duplicates collapse to one unit edge
  }
  if (dropped_self_loops) *dropped_self_loops = self_loops;

  const int n = static_cast<int>(partition.size());
  std::vector<Edge> edges;
  for (const auto& [u, v] : kept_edges) edges.push_back({u, v, 1.0});

  std::vector<int> terminals(top_blocks, -1);
  for (int v = 0; v < n; ++v)
    if (terminals[partition[v] - 1] < 0) terminals[partition[v] - 1] = v;
  for (int i = 0; i < top_blocks; ++i)
    if (terminals[i] < 0) throw format_error("induced block is empty");

  return Instance(WeightedGraph(n, std::move(edges)),
                  Labeling{top_blocks, std::move(partition)},
                  std::move(terminals), 0);
}

}  // namespace rmove
