// Graph substrate: metric graphs with a fixed edge orientation, the derived
// shortest-path metric with deterministic path selection, bridges, spanning
// trees and fundamental cycles.
#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tcnorm/error.hpp"
#include "tcnorm/rational.hpp"

namespace tcnorm {

struct EdgeSpec {
  std::string u;  // tail, first endpoint listed
  std::string v;  // head
  Rat length;
};

struct Edge {
  int tail;
  int head;
  Rat length;
};

// Incidence record seen from one endpoint: `sign` is +1 when leaving the
// vertex follows the edge orientation (vertex is the tail), -1 otherwise.
struct Incidence {
  int edge;
  int other;
  int sign;
};

// Simple connected graph with positive rational edge lengths. Vertex
// identifiers are opaque strings; internal indices follow declaration order.
// The orientation (tail -> head) is fixed at construction; all flow signs
// are relative to it. Immutable after construction.
class MetricGraph {
 public:
  MetricGraph(std::vector<std::string> vertices, std::vector<EdgeSpec> edges);

  int vertex_count() const { return static_cast<int>(names_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::string& vertex_name(int v) const { return names_[v]; }
  const std::vector<std::string>& vertex_names() const { return names_; }
  int vertex_index(const std::string& name) const;  // throws UnknownVertex

  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Incidences sorted by (other endpoint, edge id); deterministic traversals
  // rely on this order.
  const std::vector<Incidence>& incident(int v) const { return adjacency_[v]; }

  // Edge id joining u and v in either orientation, or -1.
  int find_edge(int u, int v) const;

  bool is_tree() const { return edge_count() == vertex_count() - 1; }
  bool is_cycle() const;

 private:
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

inline MetricGraph build_graph(std::vector<std::string> vertices, std::vector<EdgeSpec> edges) {
  return MetricGraph(std::move(vertices), std::move(edges));
}

// All-pairs shortest-path distances plus one selected shortest edge path per
// pair. Among equal-length paths the lexicographically smallest vertex-name
// sequence wins; the selection for an unordered pair is made once, from the
// lexicographically smaller endpoint, so the two directions use the same
// path reversed.
class DistanceMatrix {
 public:
  const Rat& d(int a, int b) const { return dist_[index(a, b)]; }
  int size() const { return n_; }
  const std::string& vertex_name(int v) const { return names_[v]; }

  // Selected path as a vertex sequence a, ..., b.
  std::vector<int> path_vertices(int a, int b) const;

  friend DistanceMatrix shortest_path_metric(const MetricGraph& g);

 private:
  int index(int a, int b) const { return a * n_ + b; }

  int n_ = 0;
  std::vector<Rat> dist_;
  std::vector<int> next_;  // next vertex on the selected path, -1 on diagonal
  std::vector<std::string> names_;  // canonical walk direction compares names
};

DistanceMatrix shortest_path_metric(const MetricGraph& g);

// Edge ids whose deletion disconnects the graph, ascending.
std::vector<int> find_bridges(const MetricGraph& g);

// Spanning tree as a sorted set of edge ids.
struct SpanningTree {
  std::vector<int> edges;
};

// Kirchhoff matrix-tree count, exact.
Int spanning_tree_count(const MetricGraph& g);

// Visits every spanning tree exactly once (contraction/deletion order,
// deterministic). The visitor returns false to stop early.
void for_each_spanning_tree(const MetricGraph& g, const std::function<bool(const SpanningTree&)>& visit);

// Materialized enumeration; refuses when the Kirchhoff count exceeds `cap`.
std::vector<SpanningTree> enumerate_spanning_trees(const MetricGraph& g, const Int& cap = Int(1000000));

// {-1,0,+1} vector supported on one simple cycle; lies in ker(boundary).
struct CycleVector {
  std::vector<std::pair<int, int>> entries;  // (edge id, sign), sorted by edge id

  int sign_of(int edge) const;
};

// One fundamental cycle per non-tree edge, each with coefficient +1 on its
// own non-tree edge; list is ordered by non-tree edge id.
std::vector<CycleVector> fundamental_cycles(const MetricGraph& g, const SpanningTree& tree);

// Validates that `tree` is a spanning tree of g; throws NotSpanning.
void check_spanning(const MetricGraph& g, const SpanningTree& tree);

}  // namespace tcnorm
