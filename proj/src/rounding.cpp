#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "rmove/errors.hpp"
#include "rmove/rng.hpp"
#include "rmove/rounding.hpp"

namespace rmove {

double default_grid_width(int k, int r) {
  if (k < 2 || r < 0) throw parameter_error("grid width needs k >= 2, r >= 0");
  return static_cast<double>(k - 1) / (static_cast<double>(k) * (r + 1));
}

double component_grid_width(int k, int r) {
  if (k < 2 || r < 1)
    throw parameter_error("component threshold needs k >= 2, r >= 1");
  return 1.0 / (10.0 * k * r * (r + 2.0));
}

RoundingParams draw_rounding_params(const Instance& instance,
                                    std::uint64_t seed) {
  RoundingParams params;
  params.g = default_grid_width(instance.k(), instance.r);
  params.seed = seed;
  Rng rng(seed, "grid-shift");
  do {
    params.rho = params.g * rng.uniform01();
  } while (params.rho == 0.0);  // the shift must be strictly positive
  return params;
}

FractionalAssignment grid_round(const FractionalAssignment& x, double g,
                                double rho) {
  if (!(g > 0.0) || !(rho > 0.0) || !(rho < g))
    throw parameter_error("grid rounding needs 0 < rho < g");
  FractionalAssignment rounded(x.n, x.k);
  for (int v = 0; v < x.n; ++v)
    for (int i = 1; i <= x.k; ++i)
      rounded.at(v, i) = g * std::floor((x.at(v, i) + rho) / g);
  return rounded;
}

namespace {

// Integer grid coordinates of one rounded row; exact since every entry is
// g times a small integer.
std::vector<long long> group_key(const FractionalAssignment& rounded, int v,
                                 double g) {
  std::vector<long long> key(rounded.k);
  long long total = 0;
  for (int i = 1; i <= rounded.k; ++i) {
    key[i - 1] = std::llround(rounded.at(v, i) / g);
    internal_check(key[i - 1] >= 0, "rounded entry below zero");
    total += key[i - 1];
  }
  // Row sums are 1 before rounding and each entry grows by less than g.
  internal_check(g * static_cast<double>(total) < 1.0 + rounded.k * g + 1e-9,
                 "rounded row exceeds its mass bound");
  return key;
}

}  // namespace

Labeling assign_groups(const Instance& instance,
                       const FractionalAssignment& rounded) {
  const int n = instance.n();
  const int k = instance.k();
  if (rounded.n != n || rounded.k != k)
    throw parameter_error("rounded assignment shape mismatch");
  const double g = default_grid_width(k, instance.r);

  std::map<std::vector<long long>, int> group_of;
  std::vector<std::vector<int>> members;
  for (int v = 0; v < n; ++v) {
    const auto [it, inserted] = group_of.try_emplace(
        group_key(rounded, v, g), static_cast<int>(members.size()));
    if (inserted) members.emplace_back();
    members[it->second].push_back(v);
  }

  Labeling labeling{k, std::vector<int>(n, 0)};
  for (const std::vector<int>& group : members) {
    int target = 0;
    for (int v : group)
      if (instance.is_terminal(v)) {
        internal_check(target == 0, "two terminals rounded together");
        target = instance.initial.of[v];
      }
    if (target == 0) {
      // Majority initial partition, lowest index on ties.
      std::vector<int> votes(k + 1, 0);
      for (int v : group) ++votes[instance.initial.of[v]];
      for (int j = 1; j <= k; ++j)
        if (votes[j] > votes[target]) target = j;
    }
    for (int v : group) labeling.of[v] = target;
  }
  return labeling;
}

CutResult round_randomized(const Instance& instance,
                           const FractionalAssignment& x, std::uint64_t seed) {
  const std::string violation = assignment_violation(instance, x, true);
  if (!violation.empty()) throw feasibility_error(violation);
  const RoundingParams params = draw_rounding_params(instance, seed);
  Labeling labeling =
      assign_groups(instance, grid_round(x, params.g, params.rho));
  return make_cut_result(instance, std::move(labeling), "lp-round", seed);
}

std::vector<double> derand_rho_values(const Instance& instance,
                                      const FractionalAssignment& x) {
  const double g = default_grid_width(instance.k(), instance.r);
  // The rounding changes exactly when some entry plus rho crosses a grid
  // multiple, i.e. at rho = (-entry) mod g.
  std::vector<double> critical;
  for (int v = 0; v < x.n; ++v)
    for (int i = 1; i <= x.k; ++i) {
      const double entry = x.at(v, i);
      double c = std::fmod(g * std::ceil(entry / g) - entry, g);
      if (c < 0.0) c += g;
      if (c > 0.0 && c < g) critical.push_back(c);
    }
  std::sort(critical.begin(), critical.end());
  critical.erase(std::unique(critical.begin(), critical.end(),
                             [](double a, double b) {
                               return std::abs(a - b) <= 1e-12;
                             }),
                 critical.end());

  if (critical.empty()) return {g / 2.0};
  std::vector<double> shifts;
  shifts.push_back(critical.front() / 2.0);
  for (std::size_t p = 0; p + 1 < critical.size(); ++p)
    shifts.push_back((critical[p] + critical[p + 1]) / 2.0);
  shifts.push_back((critical.back() + g) / 2.0);
  return shifts;
}

CutResult round_derandomized(const Instance& instance,
                             const FractionalAssignment& x) {
  const std::string violation = assignment_violation(instance, x, true);
  if (!violation.empty()) throw feasibility_error(violation);
  const double g = default_grid_width(instance.k(), instance.r);

  CutResult best;
  bool have_best = false;
  for (double rho : derand_rho_values(instance, x)) {
    Labeling labeling = assign_groups(instance, grid_round(x, g, rho));
    CutResult candidate =
        make_cut_result(instance, std::move(labeling), "lp-round-derand");
    if (!have_best || candidate.cut_value < best.cut_value) {
      best = std::move(candidate);
      have_best = true;
    }
  }
  internal_check(have_best, "no derandomized shift candidates");
  return best;
}

CutResult component_round(const Instance& instance,
                          const FractionalAssignment& x) {
  const std::string violation = assignment_violation(instance, x, true);
  if (!violation.empty()) throw feasibility_error(violation);
  if (instance.r == 0)
    return make_cut_result(instance, instance.initial, "component-round");

  const int n = instance.n();
  const int k = instance.k();
  const double threshold = component_grid_width(k, instance.r);

  // Union close endpoints; every surviving cut edge has distance >= g'.
  std::vector<int> parent(n);
  for (int v = 0; v < n; ++v) parent[v] = v;
  auto find = [&parent](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const Edge& edge : instance.graph.edges())
    if (distance(x, edge.u, edge.v) < threshold)
      parent[find(edge.u)] = find(edge.v);

  std::vector<std::vector<int>> members(n);
  for (int v = 0; v < n; ++v) members[find(v)].push_back(v);

  Labeling labeling{k, std::vector<int>(n, 0)};
  for (const std::vector<int>& component : members) {
    if (component.empty()) continue;
    int target = 0;
    for (int v : component)
      if (instance.is_terminal(v)) {
        internal_check(target == 0, "two terminals in one component");
        target = instance.initial.of[v];
      }
    if (target == 0) {
      std::vector<int> votes(k + 1, 0);
      for (int v : component) ++votes[instance.initial.of[v]];
      for (int j = 1; j <= k; ++j)
        if (votes[j] > votes[target]) target = j;
    }
    for (int v : component) labeling.of[v] = target;
  }
  return make_cut_result(instance, std::move(labeling), "component-round");
}

}  // namespace rmove
