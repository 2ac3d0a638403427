#include "tcnorm/plans.hpp"

#include <algorithm>
#include <set>

#include "tcnorm/solver.hpp"

namespace tcnorm {

void TransportPlan::add(int source, int target, const Rat& mass) {
  if (source == target) fail(Errc::BadParams, "self-transport on vertex id " + std::to_string(source));
  Rat m = mass;
  m.canonicalize();
  if (m == 0) return;
  auto key = std::make_pair(source, target);
  auto it = masses_.find(key);
  if (it == masses_.end()) {
    if (m < 0) fail(Errc::InternalCheck, "plan entry driven negative");
    masses_[key] = m;
    return;
  }
  it->second += m;
  if (it->second < 0) fail(Errc::InternalCheck, "plan entry driven negative");
  if (it->second == 0) masses_.erase(it);
}

Rat TransportPlan::mass(int source, int target) const {
  auto it = masses_.find(std::make_pair(source, target));
  return it == masses_.end() ? Rat(0) : it->second;
}

Rat TransportPlan::total_mass() const {
  Rat sum(0);
  for (const auto& [pair, mass] : masses_) sum += mass;
  return sum;
}

MassFunction TransportPlan::boundary() const {
  MassFunction f;
  for (const auto& [pair, mass] : masses_) {
    f.add(pair.first, mass);
    f.add(pair.second, -mass);
  }
  return f;
}

Rat plan_cost(const DistanceMatrix& metric, const TransportPlan& plan) {
  Rat cost(0);
  for (const auto& [pair, mass] : plan.entries()) {
    if (pair.first < 0 || pair.first >= metric.size() || pair.second < 0 || pair.second >= metric.size())
      fail(Errc::UnknownVertex, "plan entry outside the metric's vertex range");
    cost += mass * metric.d(pair.first, pair.second);
  }
  return cost;
}

PlanCheck validate_plan(const MetricGraph& g, const TransportPlan& plan, const MassFunction& f) {
  PlanCheck check;
  check.valid = plan.boundary() == f;
  check.simultaneous = true;
  check.edge_supported = true;
  for (const auto& [pair, mass] : plan.entries()) {
    if (pair.first < 0 || pair.first >= g.vertex_count() || pair.second < 0 || pair.second >= g.vertex_count())
      fail(Errc::UnknownVertex, "plan entry outside the graph's vertex range");
    if (!(f.value(pair.first) > 0 && f.value(pair.second) < 0)) check.simultaneous = false;
    if (g.find_edge(pair.first, pair.second) == -1) check.edge_supported = false;
  }
  return check;
}

TransportPlan flow_to_edge_plan(const MetricGraph& g, const EdgeFlow& flow) {
  TransportPlan plan;
  for (const auto& [edge, value] : flow.entries()) {
    if (edge < 0 || edge >= g.edge_count())
      fail(Errc::UnknownEdge, "flow entry on edge id " + std::to_string(edge));
    if (value > 0)
      plan.add(g.edge(edge).tail, g.edge(edge).head, value);
    else
      plan.add(g.edge(edge).head, g.edge(edge).tail, -value);
  }
  return plan;
}

namespace {

// Smallest-identifier choice; vertex identifiers are names, not indices.
int min_by_name(const MetricGraph& g, const std::vector<int>& vertices) {
  int best = -1;
  for (int v : vertices)
    if (best == -1 || g.vertex_name(v) < g.vertex_name(best)) best = v;
  return best;
}

}  // namespace

TransportPlan purify_plan(const DistanceMatrix& metric, const TransportPlan& plan, const MassFunction& f) {
  if (!(plan.boundary() == f)) fail(Errc::NotAPlan, "plan does not transport the given mass function");

  TransportPlan current = plan;
  while (true) {
    // First bad pair in identifier order: one endpoint outside its side.
    std::pair<int, int> bad{-1, -1};
    bool y_side = false;
    auto names = [&](const std::pair<int, int>& p) {
      return std::make_pair(metric.vertex_name(p.first), metric.vertex_name(p.second));
    };
    for (const auto& [pair, mass] : current.entries()) {
      bool bad_target = !(f.value(pair.second) < 0);
      bool bad_source = !(f.value(pair.first) > 0);
      if (!bad_target && !bad_source) continue;
      if (bad.first == -1 || names(pair) < names(bad)) {
        bad = pair;
        y_side = bad_target;
      }
    }
    if (bad.first == -1) break;

    if (y_side) {
      // y receives mass but is not a sink: forward its surplus. Greedy pick
      // of the heaviest continuation consolidates mass quickly.
      int x = bad.first, y = bad.second;
      int z = -1;
      Rat best(0);
      for (const auto& [pair, mass] : current.entries()) {
        if (pair.first != y) continue;
        if (z == -1 || mass > best) {
          z = pair.second;
          best = mass;
        }
      }
      if (z == -1) fail(Errc::InternalCheck, "no continuation for a non-sink target");
      Rat m = std::min(current.mass(x, y), current.mass(y, z));
      current.add(x, y, -m);
      current.add(y, z, -m);
      if (z != x) current.add(x, z, m);
    } else {
      // x sends mass but is not a source: splice the incoming transport.
      int x = bad.first, y = bad.second;
      int w = -1;
      Rat best(0);
      for (const auto& [pair, mass] : current.entries()) {
        if (pair.second != x) continue;
        if (w == -1 || mass > best) {
          w = pair.first;
          best = mass;
        }
      }
      if (w == -1) fail(Errc::InternalCheck, "no feeder for a non-source origin");
      Rat m = std::min(current.mass(w, x), current.mass(x, y));
      current.add(w, x, -m);
      current.add(x, y, -m);
      if (w != y) current.add(w, y, m);
    }
  }
  return current;
}

namespace {

// Core of the minimal-transport construction: peel source-to-sink paths off
// a forest-supported flow with boundary -residual. Each round starts at the
// smallest-named surplus vertex, follows outgoing flow to the first deficit
// vertex (smallest-named next hop), and moves the bottleneck
// min(surplus, deficit, path flows).
TransportPlan decompose_flow_paths(const MetricGraph& g, EdgeFlow flow, MassFunction residual) {
  TransportPlan plan;
  while (!residual.is_zero()) {
    int a = min_by_name(g, residual.positives());
    if (a == -1) fail(Errc::InternalCheck, "unbalanced residual in path decomposition");

    std::vector<std::pair<int, int>> path;  // (edge, direction of travel)
    std::vector<int> visited{a};
    int v = a;
    while (!(v != a && residual.value(v) < 0)) {
      int next = -1, next_edge = 0, next_dir = 0;
      for (const Incidence& inc : g.incident(v)) {
        Rat value = flow.value(inc.edge);
        bool outgoing = (inc.sign > 0 && value > 0) || (inc.sign < 0 && value < 0);
        if (!outgoing) continue;
        if (next == -1 || g.vertex_name(inc.other) < g.vertex_name(next)) {
          next = inc.other;
          next_edge = inc.edge;
          next_dir = inc.sign;
        }
      }
      if (next == -1) fail(Errc::InternalCheck, "flow path stalls before reaching a sink");
      for (int seen : visited)
        if (seen == next) fail(Errc::InternalCheck, "flow path revisits a vertex");
      path.emplace_back(next_edge, next_dir);
      visited.push_back(next);
      v = next;
    }
    int b = v;

    Rat amount = residual.value(a);
    if (-residual.value(b) < amount) amount = -residual.value(b);
    for (const auto& [edge, dir] : path) {
      Rat magnitude = rat_abs(flow.value(edge));
      if (magnitude < amount) amount = magnitude;
    }
    if (amount <= 0) fail(Errc::InternalCheck, "nonpositive bottleneck in path decomposition");

    plan.add(a, b, amount);
    residual.add(a, -amount);
    residual.add(b, amount);
    for (const auto& [edge, dir] : path) flow.add(edge, dir > 0 ? Rat(-amount) : amount);
  }
  return plan;
}

}  // namespace

int flow_component_count(const MetricGraph& g, const EdgeFlow& flow, const MassFunction& f) {
  const int n = g.vertex_count();
  std::vector<int> comp(n);
  for (int v = 0; v < n; ++v) comp[v] = v;
  std::function<int(int)> find = [&](int v) { return comp[v] == v ? v : comp[v] = find(comp[v]); };
  for (const auto& [edge, value] : flow.entries()) comp[find(g.edge(edge).tail)] = find(g.edge(edge).head);
  std::vector<char> counted(n, 0);
  int count = 0;
  for (int v : f.support()) {
    int root = find(v);
    if (!counted[root]) {
      counted[root] = 1;
      ++count;
    }
  }
  return count;
}

bool plan_support_is_forest(const TransportPlan& plan) {
  std::map<int, int> comp;
  std::function<int(int)> find = [&](int v) { return comp[v] == v ? v : comp[v] = find(comp[v]); };
  std::set<std::pair<int, int>> undirected;
  for (const auto& [pair, mass] : plan.entries()) {
    auto edge = std::minmax(pair.first, pair.second);
    if (!undirected.insert(edge).second) return false;  // doubled pair is a 2-cycle
    comp.try_emplace(edge.first, edge.first);
    comp.try_emplace(edge.second, edge.second);
    int a = find(edge.first), b = find(edge.second);
    if (a == b) return false;
    comp[a] = b;
  }
  return true;
}

TransportPlan optimal_simultaneous_plan(const MetricGraph& g, const MassFunction& f) {
  check_mass_balance(f);
  if (f.is_zero()) return {};
  OptimalFlowResult optimal = minimize_l1_flow(g, f);
  return decompose_flow_paths(g, optimal.flow, f);
}

TransportPlan min_transport_plan_tree(const MetricGraph& g, const MassFunction& f) {
  if (!g.is_tree()) fail(Errc::NotATree, "minimal-transport construction needs a tree");
  check_mass_balance(f);
  if (f.is_zero()) return {};

  SpanningTree whole;
  for (int e = 0; e < g.edge_count(); ++e) whole.edges.push_back(e);
  EdgeFlow tree_flow = initial_tree_flow(g, whole, f);
  int components = flow_component_count(g, tree_flow, f);

  TransportPlan plan = decompose_flow_paths(g, tree_flow, f);

  if (plan.support_size() > f.support_size() - components)
    fail(Errc::InternalCheck, "transport-count bound |supp(P)| <= |supp(f)| - k violated");
  if (!plan_support_is_forest(plan)) fail(Errc::InternalCheck, "transport pair graph is not a forest");
  return plan;
}

}  // namespace tcnorm
