#include "rmove/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

namespace rmove {

WeightedGraph::WeightedGraph(int node_count, std::vector<Edge> edges)
    : n_(node_count), total_weight_(0.0) {
  if (n_ < 0) throw parameter_error("node count must be non-negative");
  std::map<std::pair<int, int>, double> merged;
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
      throw parameter_error("edge endpoint out of range");
    if (e.u == e.v) throw parameter_error("self-loops are not allowed");
    if (!std::isfinite(e.weight) || e.weight < 0.0)
      throw parameter_error("edge weights must be finite and non-negative");
    merged[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.weight;
  }
  edges_.reserve(merged.size());
  adjacency_.resize(n_);
  for (const auto& [key, w] : merged) {
    edges_.push_back({key.first, key.second, w});
    adjacency_[key.first].push_back({key.second, w});
    adjacency_[key.second].push_back({key.first, w});
    total_weight_ += w;
  }
}

void validate_labeling(const Labeling& labeling, int node_count) {
  if (labeling.k < 2) throw invalid_labeling_error("labeling needs k >= 2");
  if (static_cast<int>(labeling.of.size()) != node_count)
    throw invalid_labeling_error("labeling covers wrong number of nodes");
  for (int v = 0; v < node_count; ++v) {
    if (labeling.of[v] < 1 || labeling.of[v] > labeling.k)
      throw invalid_labeling_error("label of node " + std::to_string(v) +
                                   " outside {1.." +
                                   std::to_string(labeling.k) + "}");
  }
}

Instance::Instance(WeightedGraph graph_in, Labeling initial_in,
                   std::vector<int> terminals_in, int r_in)
    : graph(std::move(graph_in)),
      initial(std::move(initial_in)),
      terminals(std::move(terminals_in)),
      r(r_in) {
  validate_labeling(initial, graph.node_count());
  const int k = static_cast<int>(terminals.size());
  if (k < 2) throw parameter_error("instance needs at least two terminals");
  if (initial.k != k)
    throw parameter_error("labeling k does not match terminal count");
  if (r < 0) throw parameter_error("move budget must be non-negative");
  for (int i = 0; i < k; ++i) {
    const int s = terminals[i];
    if (s < 0 || s >= graph.node_count())
      throw parameter_error("terminal id out of range");
    for (int j = i + 1; j < k; ++j)
      if (terminals[j] == s) throw parameter_error("terminals must be distinct");
    if (initial.of[s] != i + 1)
      throw parameter_error("terminal s_" + std::to_string(i + 1) +
                            " must start in partition " + std::to_string(i + 1));
  }
}

double cut_value(const WeightedGraph& graph, const Labeling& labeling) {
  validate_labeling(labeling, graph.node_count());
  double total = 0.0;
  for (const Edge& e : graph.edges())
    if (labeling.of[e.u] != labeling.of[e.v]) total += e.weight;
  return total;
}

std::vector<int> moved_set(const Instance& instance, const Labeling& labeling) {
  validate_labeling(labeling, instance.n());
  if (labeling.k != instance.k())
    throw invalid_labeling_error("labeling k does not match instance");
  for (int s : instance.terminals)
    if (labeling.of[s] != instance.initial.of[s])
      throw terminal_moved_error("terminal " + std::to_string(s) +
                                 " was relabeled");
  std::vector<int> moved;
  for (int v = 0; v < instance.n(); ++v)
    if (labeling.of[v] != instance.initial.of[v]) moved.push_back(v);
  return moved;
}

double boundary_weight(const Instance& instance, int v) {
  if (v < 0 || v >= instance.n())
    throw parameter_error("node id out of range");
  double total = 0.0;
  for (const auto& nb : instance.graph.neighbors(v))
    if (instance.initial.of[nb.node] != instance.initial.of[v])
      total += nb.weight;
  return total;
}

Contraction contract_into_terminal(const Instance& instance, int v, int j) {
  if (v < 0 || v >= instance.n())
    throw parameter_error("node id out of range");
  if (j < 1 || j > instance.k())
    throw parameter_error("partition id out of range");
  if (instance.is_terminal(v))
    throw terminal_contract_error("node " + std::to_string(v) +
                                  " is a terminal");
  const int target = instance.terminals[j - 1];

  std::vector<int> new_id(instance.n());
  for (int u = 0; u < instance.n(); ++u) new_id[u] = u - (u > v ? 1 : 0);
  new_id[v] = new_id[target];

  std::vector<Edge> edges;
  edges.reserve(instance.graph.edges().size());
  for (const Edge& e : instance.graph.edges()) {
    const int a = new_id[e.u];
    const int b = new_id[e.v];
    if (a == b) continue;  // the (v, s_j) edge vanishes into the merge
    edges.push_back({a, b, e.weight});
  }
  WeightedGraph graph(instance.n() - 1, std::move(edges));

  Labeling labels{instance.k(), std::vector<int>(instance.n() - 1, 0)};
  for (int u = 0; u < instance.n(); ++u)
    if (u != v) labels.of[new_id[u]] = instance.initial.of[u];

  std::vector<int> terminals(instance.k());
  for (int i = 0; i < instance.k(); ++i)
    terminals[i] = new_id[instance.terminals[i]];

  return Contraction{
      Instance(std::move(graph), std::move(labels), std::move(terminals),
               instance.r),
      std::move(new_id)};
}

CutResult make_cut_result(const Instance& instance, Labeling labeling,
                          std::string algorithm,
                          std::optional<std::uint64_t> seed) {
  CutResult result;
  result.cut_value = cut_value(instance.graph, labeling);
  result.moved = moved_set(instance, labeling);
  result.labeling = std::move(labeling);
  result.algorithm = std::move(algorithm);
  result.seed = seed;
  return result;
}

namespace {

// Reads whitespace-separated tokens, skipping `#` comment lines, and tracks
// the current line number for error messages.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  int line() const { return line_; }

  std::string next(const char* what) {
    std::string token;
    while (true) {
      if (pos_ >= current_.size()) {
        if (!std::getline(in_, current_))
          throw parse_error(std::string("line ") + std::to_string(line_ + 1) +
                            ": expected " + what + ", found end of file");
        ++line_;
        pos_ = 0;
        const auto hash = current_.find('#');
        if (hash != std::string::npos) current_.resize(hash);
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(current_[pos_]))) {
        ++pos_;
        continue;
      }
      const auto start = pos_;
      while (pos_ < current_.size() &&
             !std::isspace(static_cast<unsigned char>(current_[pos_])))
        ++pos_;
      token = current_.substr(start, pos_ - start);
      return token;
    }
  }

  long long next_int(const char* what) {
    const std::string token = next(what);
    try {
      std::size_t used = 0;
      const long long value = std::stoll(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      return value;
    } catch (const std::exception&) {
      throw parse_error("line " + std::to_string(line_) + ": expected " +
                        std::string(what) + ", found '" + token + "'");
    }
  }

  double next_real(const char* what) {
    const std::string token = next(what);
    try {
      std::size_t used = 0;
      const double value = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      return value;
    } catch (const std::exception&) {
      throw parse_error("line " + std::to_string(line_) + ": expected " +
                        std::string(what) + ", found '" + token + "'");
    }
  }

 private:
  std::istream& in_;
  std::string current_;
  std::size_t pos_ = 0;
  int line_ = 0;
};

}  // namespace

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  TokenReader reader(in);

  const long long n = reader.next_int("node count");
  const long long m = reader.next_int("edge count");
  const long long k = reader.next_int("partition count");
  const long long r = reader.next_int("move budget");
  if (n < 0 || m < 0 || k < 2 || r < 0 || k > n)
    throw parse_error("line " + std::to_string(reader.line()) +
                      ": malformed header");

  std::vector<int> terminals(k);
  for (long long i = 0; i < k; ++i) {
    const long long s = reader.next_int("terminal id");
    if (s < 0 || s >= n)
      throw parse_error("line " + std::to_string(reader.line()) +
                        ": terminal id out of range");
    terminals[i] = static_cast<int>(s);
  }

  Labeling labels{static_cast<int>(k), std::vector<int>(n)};
  for (long long v = 0; v < n; ++v) {
    const long long label = reader.next_int("node label");
    if (label < 1 || label > k)
      throw parse_error("line " + std::to_string(reader.line()) +
                        ": label of node " + std::to_string(v) +
                        " out of range");
    labels.of[v] = static_cast<int>(label);
  }
  for (long long i = 0; i < k; ++i)
    if (labels.of[terminals[i]] != i + 1)
      throw parse_error("line " + std::to_string(reader.line()) +
                        ": terminal " + std::to_string(terminals[i]) +
                        " must carry label " + std::to_string(i + 1));

  std::vector<Edge> edges;
  edges.reserve(m);
  for (long long e = 0; e < m; ++e) {
    const long long u = reader.next_int("edge endpoint");
    const long long v = reader.next_int("edge endpoint");
    const double w = reader.next_real("edge weight");
    if (u < 0 || u >= n || v < 0 || v >= n || u == v)
      throw parse_error("line " + std::to_string(reader.line()) +
                        ": bad edge endpoints");
    if (!std::isfinite(w) || w < 0.0)
      throw parse_error("line " + std::to_string(reader.line()) +
                        ": negative or non-finite edge weight");
    edges.push_back({static_cast<int>(u), static_cast<int>(v), w});
  }

  return Instance(WeightedGraph(static_cast<int>(n), std::move(edges)),
                  std::move(labels), std::move(terminals),
                  static_cast<int>(r));
}

void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw parse_error("cannot open '" + path + "' for writing");
  out.precision(17);
  out << instance.n() << ' ' << instance.graph.edge_count() << ' '
      << instance.k() << ' ' << instance.r << '\n';
  for (int i = 0; i < instance.k(); ++i)
    out << instance.terminals[i] << (i + 1 < instance.k() ? ' ' : '\n');
  for (int v = 0; v < instance.n(); ++v)
    out << instance.initial.of[v] << (v + 1 < instance.n() ? ' ' : '\n');
  for (const Edge& e : instance.graph.edges())
    out << e.u << ' ' << e.v << ' ' << e.weight << '\n';
  if (!out) throw parse_error("write to '" + path + "' failed");
}

bool structurally_equal(const Instance& a, const Instance& b,
                        double weight_tolerance) {
  if (a.n() != b.n() || a.k() != b.k() || a.r != b.r) return false;
  if (a.terminals != b.terminals || a.initial.of != b.initial.of) return false;
  if (a.graph.edge_count() != b.graph.edge_count()) return false;
  for (int i = 0; i < a.graph.edge_count(); ++i) {
    const Edge& ea = a.graph.edges()[i];
    const Edge& eb = b.graph.edges()[i];
    if (ea.u != eb.u || ea.v != eb.v) return false;
    if (std::abs(ea.weight - eb.weight) > weight_tolerance) return false;
  }
  return true;
}

}  // namespace rmove
