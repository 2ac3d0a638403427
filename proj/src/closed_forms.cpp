#include "tcnorm/closed_forms.hpp"

#include <algorithm>
#include <set>

#include "tcnorm/solver.hpp"

namespace tcnorm {

namespace {

void check_tree(const MetricGraph& g) {
  if (!g.is_tree()) fail(Errc::NotATree, "graph has " + std::to_string(g.edge_count()) + " edges on " +
                                             std::to_string(g.vertex_count()) + " vertices");
}

void check_vertices(const MetricGraph& g, const MassFunction& f) {
  for (const auto& [vertex, value] : f.entries())
    if (vertex < 0 || vertex >= g.vertex_count())
      fail(Errc::UnknownVertex, "mass entry on vertex id " + std::to_string(vertex));
}

// Vertex set on the head's side after deleting edge `cut`.
std::vector<int> half_side(const MetricGraph& g, int cut) {
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<int> todo{g.edge(cut).head};
  seen[g.edge(cut).head] = 1;
  std::vector<int> side;
  while (!todo.empty()) {
    int v = todo.back();
    todo.pop_back();
    side.push_back(v);
    for (const Incidence& inc : g.incident(v)) {
      if (inc.edge == cut || seen[inc.other]) continue;
      seen[inc.other] = 1;
      todo.push_back(inc.other);
    }
  }
  return side;
}

}  // namespace

Rat tree_norm(const MetricGraph& g, const MassFunction& f, AdditionCounter* counter) {
  check_tree(g);
  check_vertices(g, f);
  check_mass_balance(f);

  // The formula as written: per edge, sum f over the half-tree at the head.
  Rat total(0);
  bool total_seeded = false;
  for (int e = 0; e < g.edge_count(); ++e) {
    std::vector<int> side = half_side(g, e);
    Rat side_mass(0);
    bool seeded = false;
    for (int v : side) {
      if (!seeded) {
        side_mass = f.value(v);
        seeded = true;
      } else {
        side_mass += f.value(v);
        if (counter) counter->tick();
      }
    }
    Rat term = rat_abs(side_mass) * g.edge(e).length;
    if (!total_seeded) {
      total = term;
      total_seeded = true;
    } else {
      total += term;
      if (counter) counter->tick();
    }
  }
  return total_seeded ? total : Rat(0);
}

Rat tree_norm_leaf_peel(const MetricGraph& g, const MassFunction& f, AdditionCounter& counter) {
  check_tree(g);
  check_vertices(g, f);
  check_mass_balance(f);
  const int n = g.vertex_count();
  if (g.edge_count() == 0) return 0;

  std::vector<Rat> mass(n, Rat(0));
  for (const auto& [vertex, value] : f.entries()) mass[vertex] = value;
  std::vector<int> degree(n, 0);
  std::vector<char> edge_gone(g.edge_count(), 0);
  for (const Edge& e : g.edges()) {
    ++degree[e.tail];
    ++degree[e.head];
  }
  std::set<int> leaves;
  for (int v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.insert(v);

  Rat total(0);
  bool total_seeded = false;
  auto accumulate = [&](const Rat& term) {
    if (!total_seeded) {
      total = term;
      total_seeded = true;
    } else {
      total += term;
      counter.tick();
    }
  };

  int edges_left = g.edge_count();
  while (edges_left > 1) {
    int v = *leaves.begin();
    leaves.erase(leaves.begin());
    int e = -1, u = -1;
    for (const Incidence& inc : g.incident(v))
      if (!edge_gone[inc.edge]) {
        e = inc.edge;
        u = inc.other;
        break;
      }
    accumulate(rat_abs(mass[v]) * g.edge(e).length);
    mass[u] += mass[v];
    counter.tick();
    edge_gone[e] = 1;
    --edges_left;
    if (--degree[u] == 1) leaves.insert(u);
  }

  // Base case: one edge left; both endpoint masses are opposite.
  for (int e = 0; e < g.edge_count(); ++e)
    if (!edge_gone[e]) {
      accumulate(rat_abs(mass[g.edge(e).tail]) * g.edge(e).length);
      break;
    }
  return total;
}

TransportPlan tree_optimal_plan(const MetricGraph& g, const MassFunction& f) {
  check_tree(g);
  check_vertices(g, f);
  check_mass_balance(f);
  SpanningTree whole;
  for (int e = 0; e < g.edge_count(); ++e) whole.edges.push_back(e);
  return flow_to_edge_plan(g, initial_tree_flow(g, whole, f));
}

CycleNormResult cycle_norm_with_flow(const MetricGraph& g, const MassFunction& f) {
  if (!g.is_cycle()) fail(Errc::NotACycle, "graph is not a single cycle");
  check_vertices(g, f);
  check_mass_balance(f);
  const int n = g.vertex_count();

  // Walk the cycle from vertex 0 toward its smaller-indexed neighbor.
  std::vector<int> order{0};
  std::vector<int> step_edge(n, -1);  // edge used to enter order[i] from order[i-1]; [0] closes the cycle
  int prev_edge = -1;
  while (static_cast<int>(order.size()) < n) {
    int v = order.back();
    for (const Incidence& inc : g.incident(v))
      if (inc.edge != prev_edge) {
        step_edge[order.size() % n] = inc.edge;
        prev_edge = inc.edge;
        order.push_back(inc.other);
        break;
      }
  }
  for (const Incidence& inc : g.incident(order.back()))
    if (inc.edge != prev_edge) step_edge[0] = inc.edge;

  // Any feasible flow along the travel direction is (partial sum) + c; the
  // norm is the weighted median value of the partial sums.
  std::vector<Rat> partial(n, Rat(0));
  for (int i = 1; i < n; ++i) partial[i] = partial[i - 1] + f.value(order[i - 1]);

  std::vector<std::pair<Rat, Rat>> breakpoints;
  for (int i = 0; i < n; ++i) breakpoints.emplace_back(partial[i], g.edge(step_edge[i]).length);
  Rat median = weighted_median_linesearch(breakpoints);

  CycleNormResult result;
  result.median = median;
  result.norm = 0;
  for (int i = 0; i < n; ++i) result.norm += g.edge(step_edge[i]).length * rat_abs(partial[i] - median);
  for (int i = 0; i < n; ++i) {
    int from = order[(i + n - 1) % n];
    Rat travel_value = partial[i] - median;
    result.flow.set(step_edge[i], g.edge(step_edge[i]).tail == from ? travel_value : Rat(-travel_value));
  }

  if (!(boundary_apply(g, result.flow) == mass_scale(Rat(-1), f)))
    fail(Errc::InternalCheck, "cycle flow boundary does not match -f");
  return result;
}

Rat cycle_norm(const MetricGraph& g, const MassFunction& f) { return cycle_norm_with_flow(g, f).norm; }

BridgeReduction bridge_reduce(const MetricGraph& g, const MassFunction& f) {
  check_vertices(g, f);
  check_mass_balance(f);

  BridgeReduction reduction;
  reduction.bridge_cost = 0;
  std::vector<int> bridges = find_bridges(g);
  std::vector<char> is_bridge(g.edge_count(), 0);
  for (int e : bridges) is_bridge[e] = 1;

  for (int e : bridges) {
    Rat side_mass(0);
    for (int v : half_side(g, e)) side_mass += f.value(v);
    reduction.bridge_flow.set(e, -side_mass);
    reduction.bridge_cost += rat_abs(side_mass) * g.edge(e).length;
  }

  // Residual mass: what the remaining (bridgeless) flow must transport.
  reduction.residual_mass = mass_add(f, boundary_apply(g, reduction.bridge_flow));

  // Components of the graph minus its bridges, in smallest-vertex order.
  const int n = g.vertex_count();
  std::vector<int> comp(n, -1);
  int comp_count = 0;
  for (int root = 0; root < n; ++root) {
    if (comp[root] != -1) continue;
    comp[root] = comp_count;
    std::vector<int> todo{root};
    while (!todo.empty()) {
      int v = todo.back();
      todo.pop_back();
      for (const Incidence& inc : g.incident(v)) {
        if (is_bridge[inc.edge] || comp[inc.other] != -1) continue;
        comp[inc.other] = comp_count;
        todo.push_back(inc.other);
      }
    }
    ++comp_count;
  }

  reduction.component_vertices.assign(comp_count, {});
  reduction.component_edges.assign(comp_count, {});
  for (int v = 0; v < n; ++v) reduction.component_vertices[comp[v]].push_back(v);
  for (int e = 0; e < g.edge_count(); ++e)
    if (!is_bridge[e]) reduction.component_edges[comp[g.edge(e).tail]].push_back(e);

  for (int c = 0; c < comp_count; ++c) {
    std::vector<int> local(n, -1);
    std::vector<std::string> names;
    for (size_t i = 0; i < reduction.component_vertices[c].size(); ++i) {
      local[reduction.component_vertices[c][i]] = static_cast<int>(i);
      names.push_back(g.vertex_name(reduction.component_vertices[c][i]));
    }
    std::vector<EdgeSpec> specs;
    for (int e : reduction.component_edges[c])
      specs.push_back(EdgeSpec{g.vertex_name(g.edge(e).tail), g.vertex_name(g.edge(e).head), g.edge(e).length});
    reduction.components.emplace_back(std::move(names), std::move(specs));

    MassFunction local_mass;
    for (int v : reduction.component_vertices[c]) local_mass.set(local[v], reduction.residual_mass.value(v));
    if (local_mass.total() != 0)
      fail(Errc::InternalCheck, "residual mass does not balance within a bridgeless component");
    reduction.component_masses.push_back(std::move(local_mass));
  }
  return reduction;
}

Rat bridge_reduced_norm(const MetricGraph& g, const MassFunction& f) {
  BridgeReduction reduction = bridge_reduce(g, f);
  Rat total = reduction.bridge_cost;
  for (size_t c = 0; c < reduction.components.size(); ++c) {
    if (reduction.components[c].edge_count() == 0) continue;
    total += minimize_l1_flow(reduction.components[c], reduction.component_masses[c]).norm;
  }
  return total;
}

}  // namespace tcnorm
