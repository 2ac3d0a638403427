// Shared fixtures and independent brute-force oracles for the test suites.
// Nothing here calls the code paths it is used to check.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "tcnorm/chains.hpp"
#include "tcnorm/generator.hpp"
#include "tcnorm/graph.hpp"

namespace tcnorm::testing {

inline MetricGraph g1() { return MetricGraph({"a", "b"}, {{"a", "b", Rat(1)}}); }

inline MetricGraph p3() { return MetricGraph({"a", "b", "c"}, {{"a", "b", Rat(1)}, {"b", "c", Rat(2)}}); }

inline MetricGraph c4_unit() {
  return MetricGraph({"v0", "v1", "v2", "v3"},
                     {{"v0", "v1", Rat(1)}, {"v1", "v2", Rat(1)}, {"v2", "v3", Rat(1)}, {"v3", "v0", Rat(1)}});
}

inline MetricGraph k4_unit() {
  return MetricGraph({"a", "b", "c", "d"}, {{"a", "b", Rat(1)},
                                            {"a", "c", Rat(1)},
                                            {"a", "d", Rat(1)},
                                            {"b", "c", Rat(1)},
                                            {"b", "d", Rat(1)},
                                            {"c", "d", Rat(1)}});
}

// Unit triangle v1 v2 v3 with pendant edge v4-v1.
inline MetricGraph lollipop4() {
  return MetricGraph({"v1", "v2", "v3", "v4"},
                     {{"v1", "v2", Rat(1)}, {"v2", "v3", Rat(1)}, {"v3", "v1", Rat(1)}, {"v4", "v1", Rat(1)}});
}

inline MassFunction masses(const MetricGraph& g, const std::map<std::string, long>& values) {
  MassFunction f;
  for (const auto& [name, value] : values) f.set(g.vertex_index(name), Rat(value));
  return f;
}

// Exhaustive simple-path enumeration; the slow independent route to the
// shortest-path distance.
inline std::optional<Rat> brute_distance(const MetricGraph& g, int a, int b) {
  std::optional<Rat> best;
  std::vector<char> used(g.vertex_count(), 0);
  std::function<void(int, Rat)> walk = [&](int v, Rat cost) {
    if (v == b) {
      if (!best || cost < *best) best = cost;
      return;
    }
    for (const Incidence& inc : g.incident(v)) {
      if (used[inc.other]) continue;
      used[inc.other] = 1;
      walk(inc.other, cost + g.edge(inc.edge).length);
      used[inc.other] = 0;
    }
  };
  used[a] = 1;
  walk(a, Rat(0));
  return best;
}

// Deletion test: an edge is a bridge iff removing it disconnects the graph.
inline std::vector<int> brute_bridges(const MetricGraph& g) {
  std::vector<int> bridges;
  for (int skip = 0; skip < g.edge_count(); ++skip) {
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<int> todo{0};
    seen[0] = 1;
    int reached = 1;
    while (!todo.empty()) {
      int v = todo.back();
      todo.pop_back();
      for (const Incidence& inc : g.incident(v)) {
        if (inc.edge == skip || seen[inc.other]) continue;
        seen[inc.other] = 1;
        ++reached;
        todo.push_back(inc.other);
      }
    }
    if (reached != g.vertex_count()) bridges.push_back(skip);
  }
  return bridges;
}

// Direct evaluation of t -> sum w|a - t| at every breakpoint; smallest
// minimizer wins.
inline Rat brute_weighted_median(const std::vector<std::pair<Rat, Rat>>& points) {
  Rat best_value(0), best_point(0);
  bool have = false;
  for (const auto& [candidate, unused_weight] : points) {
    Rat value(0);
    for (const auto& [point, weight] : points) value += weight * rat_abs(point - candidate);
    if (!have || value < best_value || (value == best_value && candidate < best_point)) {
      have = true;
      best_value = value;
      best_point = candidate;
    }
  }
  return best_point;
}

// Random masses with a fixed number of zero entries possible; sum is zero.
inline MassFunction random_masses(const MetricGraph& g, int range, Rng& rng) {
  return gen_masses(g.vertex_count(), range, rng);
}

// Random connected graph within the acceptance-suite envelope.
inline MetricGraph random_small_graph(Rng& rng, int max_vertices = 7, int max_edges = 10) {
  int n = static_cast<int>(rng.range(2, max_vertices));
  long complete = static_cast<long>(n) * (n - 1) / 2;
  long cap = std::min<long>(max_edges, complete);
  int extra = static_cast<int>(rng.range(0, cap - (n - 1)));
  return gen_connected(n, extra, rng);
}

}  // namespace tcnorm::testing
