#include "tcnorm/solver.hpp"

#include <algorithm>
#include <map>

namespace tcnorm {

Rat weighted_median_linesearch(const std::vector<std::pair<Rat, Rat>>& breakpoints) {
  if (breakpoints.empty()) fail(Errc::EmptyInput, "weighted median of an empty list");
  std::vector<std::pair<Rat, Rat>> sorted = breakpoints;
  for (const auto& [point, weight] : sorted)
    if (weight <= 0) fail(Errc::BadParams, "weighted median needs positive weights");
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  Rat total(0);
  for (const auto& [point, weight] : sorted) total += weight;
  Rat half = total / 2;

  // Smallest breakpoint whose strictly-below weight is <= half <= its
  // up-to-and-including weight; ties therefore resolve toward smaller values.
  Rat below(0);
  size_t i = 0;
  while (i < sorted.size()) {
    Rat at = sorted[i].second;
    size_t j = i + 1;
    while (j < sorted.size() && sorted[j].first == sorted[i].first) at += sorted[j++].second;
    if (below <= half && half <= below + at) return sorted[i].first;
    below += at;
    i = j;
  }
  fail(Errc::InternalCheck, "weighted median condition never satisfied");
}

namespace {

void check_mass_vertices(const MetricGraph& g, const MassFunction& f) {
  for (const auto& [vertex, value] : f.entries())
    if (vertex < 0 || vertex >= g.vertex_count())
      fail(Errc::UnknownVertex, "mass entry on vertex id " + std::to_string(vertex));
}

// Rooted view of a spanning tree: parent vertex/edge arrays plus a traversal
// order with children after parents.
struct RootedTree {
  std::vector<int> parent_vertex;
  std::vector<int> parent_edge;
  std::vector<int> order;
};

RootedTree root_tree(const MetricGraph& g, const SpanningTree& tree, int root) {
  const int n = g.vertex_count();
  std::vector<char> in_tree(g.edge_count(), 0);
  for (int e : tree.edges) in_tree[e] = 1;

  RootedTree rooted;
  rooted.parent_vertex.assign(n, -1);
  rooted.parent_edge.assign(n, -1);
  rooted.order = {root};
  std::vector<char> seen(n, 0);
  seen[root] = 1;
  for (size_t i = 0; i < rooted.order.size(); ++i) {
    int v = rooted.order[i];
    for (const Incidence& inc : g.incident(v)) {
      if (!in_tree[inc.edge] || seen[inc.other]) continue;
      seen[inc.other] = 1;
      rooted.parent_vertex[inc.other] = v;
      rooted.parent_edge[inc.other] = inc.edge;
      rooted.order.push_back(inc.other);
    }
  }
  return rooted;
}

}  // namespace

EdgeFlow initial_tree_flow(const MetricGraph& g, const SpanningTree& tree, const MassFunction& f) {
  check_spanning(g, tree);
  check_mass_vertices(g, f);
  check_mass_balance(f);

  RootedTree rooted = root_tree(g, tree, 0);
  const int n = g.vertex_count();

  // Subtree mass below each vertex; children precede parents in reverse order.
  std::vector<Rat> subtree(n, Rat(0));
  for (int v = 0; v < n; ++v) subtree[v] = f.value(v);
  for (auto it = rooted.order.rbegin(); it != rooted.order.rend(); ++it)
    if (rooted.parent_vertex[*it] != -1) subtree[rooted.parent_vertex[*it]] += subtree[*it];

  // phi(e) = -f(S_e); S_e is the side of the head, i.e. the child subtree
  // when the head is the child, its complement otherwise (complement mass is
  // the negated subtree mass because f sums to zero).
  EdgeFlow flow;
  for (int child = 0; child < n; ++child) {
    int e = rooted.parent_edge[child];
    if (e == -1) continue;
    Rat mass_head_side = (g.edge(e).head == child) ? subtree[child] : Rat(-subtree[child]);
    flow.set(e, -mass_head_side);
  }
  return flow;
}

namespace {

struct ResidualArc {
  int from;
  int to;
  int edge;
  int dir;  // +1 pushes along the orientation, -1 against
};

std::vector<ResidualArc> residual_arcs(const MetricGraph& g) {
  std::vector<ResidualArc> arcs;
  arcs.reserve(2 * g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    arcs.push_back(ResidualArc{g.edge(e).tail, g.edge(e).head, e, +1});
    arcs.push_back(ResidualArc{g.edge(e).head, g.edge(e).tail, e, -1});
  }
  return arcs;
}

// Marginal cost of pushing an infinitesimal amount through the arc: the
// edge length, negated when the push shrinks |phi(edge)|.
Rat marginal_cost(const MetricGraph& g, const EdgeFlow& flow, const ResidualArc& arc) {
  const Rat& len = g.edge(arc.edge).length;
  Rat value = flow.value(arc.edge);
  bool reduces = (arc.dir > 0 && value < 0) || (arc.dir < 0 && value > 0);
  return reduces ? Rat(-len) : len;
}

// Negative-cycle search by levelled Bellman-Ford walks: dist_k[v] is the
// cheapest arc-walk of at most k arcs ending at v (all starts free). A strict
// improvement at level |V| certifies a negative cycle, and every cycle inside
// the improving walk is negative, so extraction cannot fail.
std::vector<ResidualArc> find_negative_cycle(const MetricGraph& g, const EdgeFlow& flow) {
  const int n = g.vertex_count();
  std::vector<ResidualArc> arcs = residual_arcs(g);
  std::vector<Rat> costs(arcs.size());
  for (size_t a = 0; a < arcs.size(); ++a) costs[a] = marginal_cost(g, flow, arcs[a]);

  std::vector<Rat> dist_prev(n, Rat(0)), dist_cur(n, Rat(0));
  std::vector<std::vector<int>> parent(n + 1, std::vector<int>(n, -1));

  int improved_vertex = -1;
  for (int level = 1; level <= n; ++level) {
    dist_cur = dist_prev;
    bool improved = false;
    for (size_t a = 0; a < arcs.size(); ++a) {
      Rat candidate = dist_prev[arcs[a].from] + costs[a];
      if (candidate < dist_cur[arcs[a].to]) {
        dist_cur[arcs[a].to] = candidate;
        parent[level][arcs[a].to] = static_cast<int>(a);
        improved = true;
      }
    }
    if (!improved) return {};  // distances stabilized: no negative cycle
    if (level == n) {
      for (int v = 0; v < n && improved_vertex == -1; ++v)
        if (parent[n][v] != -1 && dist_cur[v] < dist_prev[v]) improved_vertex = v;
    }
    std::swap(dist_prev, dist_cur);
  }
  if (improved_vertex == -1) return {};

  // Reconstruct the improving walk, then cut out the loop between two visits
  // of the same vertex.
  std::vector<int> walk_arcs;  // reversed: from improved_vertex back
  int vertex = improved_vertex;
  for (int level = n; level > 0;) {
    int a = parent[level][vertex];
    if (a == -1) {
      --level;
      continue;
    }
    walk_arcs.push_back(a);
    vertex = arcs[a].from;
    --level;
  }
  std::reverse(walk_arcs.begin(), walk_arcs.end());

  std::vector<int> last_seen(n, -1);
  int start = vertex;
  last_seen[start] = 0;
  int cycle_begin = -1, cycle_end = -1;
  for (size_t i = 0; i < walk_arcs.size(); ++i) {
    int to = arcs[walk_arcs[i]].to;
    if (last_seen[to] != -1) {
      cycle_begin = last_seen[to];
      cycle_end = static_cast<int>(i) + 1;
      break;
    }
    last_seen[to] = static_cast<int>(i) + 1;
  }
  if (cycle_begin == -1) fail(Errc::InternalCheck, "improving walk contains no repeated vertex");

  std::vector<ResidualArc> cycle;
  Rat cycle_cost(0);
  for (int i = cycle_begin; i < cycle_end; ++i) {
    cycle.push_back(arcs[walk_arcs[i]]);
    cycle_cost += costs[walk_arcs[i]];
  }
  if (cycle_cost >= 0) fail(Errc::InternalCheck, "extracted residual cycle is not negative");
  return cycle;
}

// Pushes flow around a negative residual cycle up to the smallest minimizer
// of the norm along that direction: the derivative starts negative and gains
// 2*length every time a shrinking edge crosses zero; stop at the first
// breakpoint where it turns nonnegative.
void cancel_cycle(const MetricGraph& g, EdgeFlow& flow, const std::vector<ResidualArc>& cycle) {
  Rat derivative(0);
  std::map<Rat, Rat> kink_gain;  // push amount at which an edge zeroes -> added slope
  for (const ResidualArc& arc : cycle) {
    Rat cost = marginal_cost(g, flow, arc);
    derivative += cost;
    if (cost < 0) kink_gain[rat_abs(flow.value(arc.edge))] += 2 * g.edge(arc.edge).length;
  }
  if (derivative >= 0) fail(Errc::InternalCheck, "cancel_cycle called on a non-improving cycle");

  Rat push(0);
  for (const auto& [at, gain] : kink_gain) {
    push = at;
    derivative += gain;
    if (derivative >= 0) break;
  }
  if (push <= 0) fail(Errc::InternalCheck, "cancel_cycle found no positive push");
  for (const ResidualArc& arc : cycle) flow.add(arc.edge, arc.dir > 0 ? push : Rat(-push));
}

// Some cycle within the support of the flow, as traversal-ordered arcs
// (edge, direction), or empty if the support is a forest.
std::vector<std::pair<int, int>> support_cycle(const MetricGraph& g, const EdgeFlow& flow) {
  const int n = g.vertex_count();
  std::vector<char> in_support(g.edge_count(), 0);
  for (const auto& [edge, value] : flow.entries()) in_support[edge] = 1;

  std::vector<int> parent_edge(n, -1), parent_vertex(n, -1);
  std::vector<int> state(n, 0);  // 0 unseen, 1 seen
  for (int root = 0; root < n; ++root) {
    if (state[root]) continue;
    std::vector<int> stack{root};
    state[root] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const Incidence& inc : g.incident(v)) {
        if (!in_support[inc.edge] || inc.edge == parent_edge[v]) continue;
        if (state[inc.other]) {
          // Found a cycle: walk both endpoints' parent chains to their join.
          std::vector<int> path_v{v}, path_o{inc.other};
          std::vector<char> on_v(n, 0);
          for (int x = v; x != -1; x = parent_vertex[x]) on_v[x] = 1;
          int join = inc.other;
          while (!on_v[join]) {
            path_o.push_back(parent_vertex[join]);
            join = parent_vertex[join];
          }
          while (path_v.back() != join) path_v.push_back(parent_vertex[path_v.back()]);

          std::vector<std::pair<int, int>> cycle;
          // join -> ... -> v along path_v reversed, then edge v->other,
          // then other -> ... -> join.
          for (auto it = path_v.rbegin(); it + 1 != path_v.rend(); ++it) {
            int child = *(it + 1);
            int e = parent_edge[child];
            cycle.emplace_back(e, g.edge(e).tail == *it ? +1 : -1);
          }
          cycle.emplace_back(inc.edge, g.edge(inc.edge).tail == v ? +1 : -1);
          for (size_t i = 0; i + 1 < path_o.size(); ++i) {
            int child = path_o[i];
            int e = parent_edge[child];
            cycle.emplace_back(e, g.edge(e).tail == child ? +1 : -1);
          }
          return cycle;
        }
        state[inc.other] = 1;
        parent_vertex[inc.other] = v;
        parent_edge[inc.other] = inc.edge;
        stack.push_back(inc.other);
      }
    }
  }
  return {};
}

}  // namespace

EdgeFlow cancel_negative_cycles(const MetricGraph& g, EdgeFlow flow, long* pivot_count) {
  for (const auto& [edge, value] : flow.entries())
    if (edge < 0 || edge >= g.edge_count())
      fail(Errc::UnknownEdge, "flow entry on edge id " + std::to_string(edge));
  long pivots = 0;
  while (true) {
    std::vector<ResidualArc> cycle = find_negative_cycle(g, flow);
    if (cycle.empty()) break;
    cancel_cycle(g, flow, cycle);
    ++pivots;
  }
  if (pivot_count) *pivot_count = pivots;
  return flow;
}

std::pair<EdgeFlow, SpanningTree> tree_support_extract(const MetricGraph& g, const EdgeFlow& flow) {
  for (const auto& [edge, value] : flow.entries())
    if (edge < 0 || edge >= g.edge_count())
      fail(Errc::UnknownEdge, "flow entry on edge id " + std::to_string(edge));

  EdgeFlow current = flow;
  while (true) {
    std::vector<std::pair<int, int>> cycle = support_cycle(g, current);
    if (cycle.empty()) break;

    // Minimize sum of len * |phi(e) + t*xi(e)| over the cycle: breakpoints
    // at t = -phi(e)*xi(e), weighted by the lengths.
    std::vector<std::pair<Rat, Rat>> breakpoints;
    Rat before(0);
    for (const auto& [edge, sign] : cycle) {
      breakpoints.emplace_back(Rat(-current.value(edge) * sign), g.edge(edge).length);
      before += g.edge(edge).length * rat_abs(current.value(edge));
    }
    Rat shift = weighted_median_linesearch(breakpoints);

    Rat after(0);
    for (const auto& [edge, sign] : cycle)
      after += g.edge(edge).length * rat_abs(current.value(edge) + shift * sign);
    if (after < before)
      fail(Errc::NonOptimalInput, "cycle shift improves the norm by " + rat_to_string(before - after));
    for (const auto& [edge, sign] : cycle) current.add(edge, shift * sign);
  }

  // Embed the (now acyclic) support in a spanning tree, filling with the
  // lowest-numbered edges that keep it acyclic.
  const int n = g.vertex_count();
  std::vector<int> comp(n);
  for (int v = 0; v < n; ++v) comp[v] = v;
  std::function<int(int)> find = [&](int v) { return comp[v] == v ? v : comp[v] = find(comp[v]); };
  SpanningTree tree;
  auto try_add = [&](int e) {
    int a = find(g.edge(e).tail), b = find(g.edge(e).head);
    if (a == b) return;
    comp[a] = b;
    tree.edges.push_back(e);
  };
  for (const auto& [edge, value] : current.entries()) try_add(edge);
  for (int e = 0; e < g.edge_count(); ++e) try_add(e);
  std::sort(tree.edges.begin(), tree.edges.end());
  check_spanning(g, tree);
  return {current, tree};
}

OptimalFlowResult minimize_l1_flow(const MetricGraph& g, const MassFunction& f) {
  check_mass_vertices(g, f);
  check_mass_balance(f);

  // BFS spanning tree from vertex 0 seeds a feasible flow.
  SpanningTree start;
  {
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<int> frontier{0};
    seen[0] = 1;
    for (size_t i = 0; i < frontier.size(); ++i)
      for (const Incidence& inc : g.incident(frontier[i])) {
        if (seen[inc.other]) continue;
        seen[inc.other] = 1;
        start.edges.push_back(inc.edge);
        frontier.push_back(inc.other);
      }
    std::sort(start.edges.begin(), start.edges.end());
  }

  OptimalFlowResult result;
  EdgeFlow flow = cancel_negative_cycles(g, initial_tree_flow(g, start, f), &result.pivot_count);

  auto [tree_flow, tree] = tree_support_extract(g, flow);
  result.flow = std::move(tree_flow);
  result.supporting_tree = std::move(tree);
  result.norm = l1_norm(g, result.flow);

  MassFunction boundary = boundary_apply(g, result.flow);
  if (!(boundary == mass_scale(Rat(-1), f)))
    fail(Errc::InternalCheck, "optimal flow boundary does not match -f");
  return result;
}

}  // namespace tcnorm
