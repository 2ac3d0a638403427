#include "tcnorm/graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace tcnorm {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::LoopEdge: return "LoopEdge";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::DuplicateVertex: return "DuplicateVertex";
    case Errc::UnknownVertex: return "UnknownVertex";
    case Errc::UnknownEdge: return "UnknownEdge";
    case Errc::NonpositiveLength: return "NonpositiveLength";
    case Errc::Disconnected: return "Disconnected";
    case Errc::TooManyTrees: return "TooManyTrees";
    case Errc::NotSpanning: return "NotSpanning";
    case Errc::MassNotZero: return "MassNotZero";
    case Errc::SameVertex: return "SameVertex";
    case Errc::NotATree: return "NotATree";
    case Errc::NotACycle: return "NotACycle";
    case Errc::NonOptimalInput: return "NonOptimalInput";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::NotAPlan: return "NotAPlan";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NonMetric: return "NonMetric";
    case Errc::CertificateGap: return "CertificateGap";
    case Errc::BadParams: return "BadParams";
    case Errc::ParseError: return "ParseError";
    case Errc::InternalCheck: return "InternalCheck";
  }
  return "UnknownError";
}

MetricGraph::MetricGraph(std::vector<std::string> vertices, std::vector<EdgeSpec> edges)
    : names_(std::move(vertices)) {
  if (names_.empty()) fail(Errc::BadParams, "graph needs at least one vertex");

  std::map<std::string, int> index;
  for (int v = 0; v < static_cast<int>(names_.size()); ++v) {
    if (!index.emplace(names_[v], v).second)
      fail(Errc::DuplicateVertex, "vertex '" + names_[v] + "' declared twice");
  }

  std::set<std::pair<int, int>> seen;
  edges_.reserve(edges.size());
  for (const EdgeSpec& spec : edges) {
    auto tail_it = index.find(spec.u);
    if (tail_it == index.end()) fail(Errc::UnknownVertex, "edge endpoint '" + spec.u + "' not declared");
    auto head_it = index.find(spec.v);
    if (head_it == index.end()) fail(Errc::UnknownVertex, "edge endpoint '" + spec.v + "' not declared");
    int tail = tail_it->second;
    int head = head_it->second;
    if (tail == head) fail(Errc::LoopEdge, "edge {" + spec.u + "," + spec.v + "} is a loop");
    if (!seen.insert(std::minmax(tail, head)).second)
      fail(Errc::DuplicateEdge, "edge {" + spec.u + "," + spec.v + "} duplicates an unordered pair");
    Rat length = spec.length;
    length.canonicalize();
    if (length <= 0)
      fail(Errc::NonpositiveLength, "edge {" + spec.u + "," + spec.v + "} has length " + rat_to_string(length));
    edges_.push_back(Edge{tail, head, length});
  }

  adjacency_.assign(names_.size(), {});
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    adjacency_[edges_[e].tail].push_back(Incidence{e, edges_[e].head, +1});
    adjacency_[edges_[e].head].push_back(Incidence{e, edges_[e].tail, -1});
  }
  for (auto& list : adjacency_)
    std::sort(list.begin(), list.end(), [](const Incidence& a, const Incidence& b) {
      return std::tie(a.other, a.edge) < std::tie(b.other, b.edge);
    });

  std::vector<char> reached(names_.size(), 0);
  std::queue<int> frontier;
  frontier.push(0);
  reached[0] = 1;
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop();
    for (const Incidence& inc : adjacency_[v])
      if (!reached[inc.other]) {
        reached[inc.other] = 1;
        frontier.push(inc.other);
      }
  }
  for (int v = 0; v < vertex_count(); ++v)
    if (!reached[v]) fail(Errc::Disconnected, "vertex '" + names_[v] + "' unreachable from '" + names_[0] + "'");
}

int MetricGraph::vertex_index(const std::string& name) const {
  for (int v = 0; v < vertex_count(); ++v)
    if (names_[v] == name) return v;
  fail(Errc::UnknownVertex, "vertex '" + name + "' not declared");
}

int MetricGraph::find_edge(int u, int v) const {
  for (const Incidence& inc : adjacency_[u])
    if (inc.other == v) return inc.edge;
  return -1;
}

bool MetricGraph::is_cycle() const {
  if (vertex_count() < 3 || edge_count() != vertex_count()) return false;
  for (int v = 0; v < vertex_count(); ++v)
    if (adjacency_[v].size() != 2) return false;
  return true;
}

DistanceMatrix shortest_path_metric(const MetricGraph& g) {
  const int n = g.vertex_count();
  DistanceMatrix m;
  m.n_ = n;
  m.dist_.assign(static_cast<size_t>(n) * n, Rat(0));
  m.next_.assign(static_cast<size_t>(n) * n, -1);
  m.names_ = g.vertex_names();

  // Dijkstra per source; linear extraction keeps arithmetic exact and simple.
  for (int s = 0; s < n; ++s) {
    std::vector<Rat> dist(n, Rat(0));
    std::vector<char> reached(n, 0), done(n, 0);
    reached[s] = 1;
    for (int round = 0; round < n; ++round) {
      int best = -1;
      for (int v = 0; v < n; ++v)
        if (reached[v] && !done[v] && (best == -1 || dist[v] < dist[best])) best = v;
      if (best == -1) break;
      done[best] = 1;
      for (const Incidence& inc : g.incident(best)) {
        Rat candidate = dist[best] + g.edge(inc.edge).length;
        if (!reached[inc.other] || candidate < dist[inc.other]) {
          reached[inc.other] = 1;
          dist[inc.other] = candidate;
        }
      }
    }
    for (int v = 0; v < n; ++v) m.dist_[m.index(s, v)] = dist[v];
  }

  // next_[a][b]: neighbor starting the lexicographically smallest shortest
  // vertex-name sequence from a to b. Greedy smallest-next is lexicographic
  // on whole sequences because any shortest suffix extends the prefix.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      int best = -1;
      for (const Incidence& inc : g.incident(a)) {
        if (g.edge(inc.edge).length + m.dist_[m.index(inc.other, b)] != m.dist_[m.index(a, b)]) continue;
        if (best == -1 || g.vertex_name(inc.other) < g.vertex_name(best)) best = inc.other;
      }
      if (best == -1) fail(Errc::InternalCheck, "no shortest-path successor found");
      m.next_[m.index(a, b)] = best;
    }
  return m;
}

std::vector<int> DistanceMatrix::path_vertices(int a, int b) const {
  if (a == b) return {a};
  std::vector<int> forward;
  // One selection per unordered pair, read from the smaller-named endpoint;
  // the other direction is the same path reversed.
  int from = a, to = b;
  bool flipped = names_[a] > names_[b];
  if (flipped) std::swap(from, to);
  for (int v = from; v != to; v = next_[index(v, to)]) forward.push_back(v);
  forward.push_back(to);
  if (flipped) std::reverse(forward.begin(), forward.end());
  return forward;
}

std::vector<int> find_bridges(const MetricGraph& g) {
  const int n = g.vertex_count();
  std::vector<int> discovery(n, -1), low(n, -1);
  std::vector<int> bridges;
  int clock = 0;

  struct Frame {
    int vertex;
    int parent_edge;
    size_t next_inc;
  };
  std::vector<Frame> stack;
  for (int root = 0; root < n; ++root) {
    if (discovery[root] != -1) continue;
    stack.push_back({root, -1, 0});
    discovery[root] = low[root] = clock++;
    while (!stack.empty()) {
      Frame& frame = stack.back();
      const auto& incs = g.incident(frame.vertex);
      if (frame.next_inc < incs.size()) {
        const Incidence& inc = incs[frame.next_inc++];
        if (inc.edge == frame.parent_edge) continue;
        if (discovery[inc.other] == -1) {
          discovery[inc.other] = low[inc.other] = clock++;
          stack.push_back({inc.other, inc.edge, 0});
        } else {
          low[frame.vertex] = std::min(low[frame.vertex], discovery[inc.other]);
        }
      } else {
        int child = frame.vertex;
        int edge = frame.parent_edge;
        stack.pop_back();
        if (!stack.empty()) {
          int parent = stack.back().vertex;
          low[parent] = std::min(low[parent], low[child]);
          if (low[child] > discovery[parent]) bridges.push_back(edge);
        }
      }
    }
  }
  std::sort(bridges.begin(), bridges.end());
  return bridges;
}

Int spanning_tree_count(const MetricGraph& g) {
  const int n = g.vertex_count();
  if (n == 1) return 1;
  // Kirchhoff: determinant of the Laplacian with row/column 0 removed.
  std::vector<std::vector<Rat>> a(n - 1, std::vector<Rat>(n - 1, Rat(0)));
  for (const Edge& e : g.edges()) {
    int u = e.tail, v = e.head;
    if (u > 0) a[u - 1][u - 1] += 1;
    if (v > 0) a[v - 1][v - 1] += 1;
    if (u > 0 && v > 0) {
      a[u - 1][v - 1] -= 1;
      a[v - 1][u - 1] -= 1;
    }
  }
  Rat det(1);
  for (int col = 0; col < n - 1; ++col) {
    int pivot = -1;
    for (int row = col; row < n - 1; ++row)
      if (a[row][col] != 0) {
        pivot = row;
        break;
      }
    if (pivot == -1) return 0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (int row = col + 1; row < n - 1; ++row) {
      if (a[row][col] == 0) continue;
      Rat factor = a[row][col] / a[col][col];
      for (int k = col; k < n - 1; ++k) a[row][k] -= factor * a[col][k];
    }
  }
  det = rat_abs(det);
  if (det.get_den() != 1) fail(Errc::InternalCheck, "matrix-tree determinant not integral");
  return det.get_num();
}

namespace {

struct MultiEdge {
  int id;  // original edge id
  int u;
  int v;
};

bool multigraph_connected(int label_space, const std::vector<int>& labels, const std::vector<MultiEdge>& edges) {
  if (labels.size() <= 1) return true;
  std::vector<std::vector<int>> adj(label_space);
  for (const MultiEdge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> seen(label_space, 0);
  std::vector<int> todo{labels[0]};
  seen[labels[0]] = 1;
  size_t count = 1;
  while (!todo.empty()) {
    int v = todo.back();
    todo.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        todo.push_back(w);
      }
  }
  return count == labels.size();
}

// Contraction/deletion enumeration. Trees containing the first edge are the
// trees of G/e; the rest are the trees of G-e (skipped when e is a bridge of
// the current multigraph). Each spanning tree is produced exactly once.
bool enumerate_rec(int n_vertices, std::vector<int> labels, std::vector<MultiEdge> edges, std::vector<int>& chosen,
                   const std::function<bool(const SpanningTree&)>& visit) {
  // Count distinct labels still live.
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  if (labels.size() == 1) {
    SpanningTree tree;
    tree.edges = chosen;
    std::sort(tree.edges.begin(), tree.edges.end());
    return visit(tree);
  }

  // Drop loops created by earlier contractions; pick the first real edge.
  size_t first = 0;
  while (first < edges.size() && edges[first].u == edges[first].v) ++first;
  if (first >= edges.size()) return true;  // disconnected remainder: no trees
  MultiEdge e = edges[first];

  std::vector<MultiEdge> rest(edges.begin() + first + 1, edges.end());

  // Branch 1: trees avoiding e (only when G-e stays connected).
  {
    std::vector<MultiEdge> live;
    for (const MultiEdge& m : rest)
      if (m.u != m.v) live.push_back(m);
    if (multigraph_connected(n_vertices, labels, live))
      if (!enumerate_rec(n_vertices, labels, rest, chosen, visit)) return false;
  }

  // Branch 2: trees through e; contract e by relabeling v -> u.
  std::vector<MultiEdge> contracted = rest;
  for (MultiEdge& m : contracted) {
    if (m.u == e.v) m.u = e.u;
    if (m.v == e.v) m.v = e.u;
  }
  std::vector<int> new_labels;
  for (int label : labels)
    if (label != e.v) new_labels.push_back(label);
  chosen.push_back(e.id);
  bool keep_going = enumerate_rec(n_vertices, new_labels, contracted, chosen, visit);
  chosen.pop_back();
  return keep_going;
}

}  // namespace

void for_each_spanning_tree(const MetricGraph& g, const std::function<bool(const SpanningTree&)>& visit) {
  std::vector<MultiEdge> edges;
  edges.reserve(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) edges.push_back(MultiEdge{e, g.edge(e).tail, g.edge(e).head});
  std::vector<int> labels(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) labels[v] = v;
  std::vector<int> chosen;
  enumerate_rec(g.vertex_count(), labels, edges, chosen, visit);
}

std::vector<SpanningTree> enumerate_spanning_trees(const MetricGraph& g, const Int& cap) {
  Int count = spanning_tree_count(g);
  if (count > cap)
    fail(Errc::TooManyTrees, "graph has " + count.get_str() + " spanning trees, cap is " + cap.get_str());
  std::vector<SpanningTree> trees;
  trees.reserve(count.fits_ulong_p() ? count.get_ui() : 0);
  for_each_spanning_tree(g, [&trees](const SpanningTree& t) {
    trees.push_back(t);
    return true;
  });
  if (Int(static_cast<long>(trees.size())) != count)
    fail(Errc::InternalCheck, "spanning-tree enumeration disagrees with matrix-tree count");
  return trees;
}

void check_spanning(const MetricGraph& g, const SpanningTree& tree) {
  const int n = g.vertex_count();
  if (static_cast<int>(tree.edges.size()) != n - 1)
    fail(Errc::NotSpanning, "tree edge count " + std::to_string(tree.edges.size()) + " != |V|-1");
  std::vector<int> parent(n);
  for (int v = 0; v < n; ++v) parent[v] = v;
  std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  for (int e : tree.edges) {
    if (e < 0 || e >= g.edge_count()) fail(Errc::NotSpanning, "edge id " + std::to_string(e) + " out of range");
    int a = find(g.edge(e).tail), b = find(g.edge(e).head);
    if (a == b) fail(Errc::NotSpanning, "tree edges contain a cycle");
    parent[a] = b;
  }
}

int CycleVector::sign_of(int edge) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), edge,
                             [](const std::pair<int, int>& entry, int e) { return entry.first < e; });
  return (it != entries.end() && it->first == edge) ? it->second : 0;
}

std::vector<CycleVector> fundamental_cycles(const MetricGraph& g, const SpanningTree& tree) {
  check_spanning(g, tree);
  const int n = g.vertex_count();

  std::vector<char> in_tree(g.edge_count(), 0);
  for (int e : tree.edges) in_tree[e] = 1;

  // Root the tree at 0, record parent vertex/edge and depth.
  std::vector<int> parent_vertex(n, -1), parent_edge(n, -1), depth(n, 0);
  std::vector<int> order{0};
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  for (size_t i = 0; i < order.size(); ++i) {
    int v = order[i];
    for (const Incidence& inc : g.incident(v)) {
      if (!in_tree[inc.edge] || seen[inc.other]) continue;
      seen[inc.other] = 1;
      parent_vertex[inc.other] = v;
      parent_edge[inc.other] = inc.edge;
      depth[inc.other] = depth[v] + 1;
      order.push_back(inc.other);
    }
  }

  std::vector<CycleVector> cycles;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (in_tree[e]) continue;
    CycleVector cycle;
    cycle.entries.emplace_back(e, +1);
    // Tree path from head back to tail, signs relative to travel direction.
    int x = g.edge(e).head, y = g.edge(e).tail;
    auto step_up = [&](int v, int direction) {
      int pe = parent_edge[v];
      // direction +1: traveling v -> parent; coherent when v is the tail.
      int sign = (g.edge(pe).tail == v) ? direction : -direction;
      cycle.entries.emplace_back(pe, sign);
      return parent_vertex[v];
    };
    while (depth[x] > depth[y]) x = step_up(x, +1);
    while (depth[y] > depth[x]) y = step_up(y, -1);
    while (x != y) {
      x = step_up(x, +1);
      y = step_up(y, -1);
    }
    std::sort(cycle.entries.begin(), cycle.entries.end());
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

}  // namespace tcnorm
