#include "tcnorm/chains.hpp"

#include "tcnorm/plans.hpp"

namespace tcnorm {

void MassFunction::set(int vertex, const Rat& value) {
  Rat v = value;
  v.canonicalize();  // inputs from the two-argument constructor may not be
  if (v == 0)
    values_.erase(vertex);
  else
    values_[vertex] = v;
}

void MassFunction::add(int vertex, const Rat& value) {
  Rat v = value;
  v.canonicalize();
  auto it = values_.find(vertex);
  if (it == values_.end()) {
    if (v != 0) values_[vertex] = v;
    return;
  }
  it->second += v;
  if (it->second == 0) values_.erase(it);
}

Rat MassFunction::value(int vertex) const {
  auto it = values_.find(vertex);
  return it == values_.end() ? Rat(0) : it->second;
}

Rat MassFunction::total() const {
  Rat sum(0);
  for (const auto& [vertex, value] : values_) sum += value;
  return sum;
}

std::vector<int> MassFunction::support() const {
  std::vector<int> out;
  out.reserve(values_.size());
  for (const auto& [vertex, value] : values_) out.push_back(vertex);
  return out;
}

std::vector<int> MassFunction::positives() const {
  std::vector<int> out;
  for (const auto& [vertex, value] : values_)
    if (value > 0) out.push_back(vertex);
  return out;
}

std::vector<int> MassFunction::negatives() const {
  std::vector<int> out;
  for (const auto& [vertex, value] : values_)
    if (value < 0) out.push_back(vertex);
  return out;
}

void EdgeFlow::set(int edge, const Rat& value) {
  Rat v = value;
  v.canonicalize();
  if (v == 0)
    values_.erase(edge);
  else
    values_[edge] = v;
}

void EdgeFlow::add(int edge, const Rat& value) {
  Rat v = value;
  v.canonicalize();
  auto it = values_.find(edge);
  if (it == values_.end()) {
    if (v != 0) values_[edge] = v;
    return;
  }
  it->second += v;
  if (it->second == 0) values_.erase(it);
}

Rat EdgeFlow::value(int edge) const {
  auto it = values_.find(edge);
  return it == values_.end() ? Rat(0) : it->second;
}

std::vector<int> EdgeFlow::support() const {
  std::vector<int> out;
  out.reserve(values_.size());
  for (const auto& [edge, value] : values_) out.push_back(edge);
  return out;
}

MassFunction boundary_apply(const MetricGraph& g, const EdgeFlow& flow) {
  MassFunction result;
  for (const auto& [edge, value] : flow.entries()) {
    if (edge < 0 || edge >= g.edge_count())
      fail(Errc::UnknownEdge, "flow entry on edge id " + std::to_string(edge));
    result.add(g.edge(edge).head, value);
    result.add(g.edge(edge).tail, -value);
  }
  return result;
}

EdgeFlow path_vector(const MetricGraph& g, const DistanceMatrix& metric, int a, int b) {
  if (a == b) fail(Errc::SameVertex, "path endpoints coincide at '" + g.vertex_name(a) + "'");
  EdgeFlow flow;
  std::vector<int> path = metric.path_vertices(a, b);
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    int e = g.find_edge(path[i], path[i + 1]);
    if (e < 0) fail(Errc::InternalCheck, "selected path leaves the graph");
    flow.add(e, g.edge(e).tail == path[i] ? Rat(1) : Rat(-1));
  }
  return flow;
}

EdgeFlow plan_to_flow(const MetricGraph& g, const DistanceMatrix& metric, const TransportPlan& plan) {
  EdgeFlow flow;
  for (const auto& [pair, mass] : plan.entries()) {
    if (pair.first < 0 || pair.first >= g.vertex_count() || pair.second < 0 || pair.second >= g.vertex_count())
      fail(Errc::UnknownVertex, "plan entry outside the graph's vertex range");
    std::vector<int> path = metric.path_vertices(pair.first, pair.second);
    for (size_t i = 0; i + 1 < path.size(); ++i) {
      int e = g.find_edge(path[i], path[i + 1]);
      flow.add(e, g.edge(e).tail == path[i] ? mass : Rat(-mass));
    }
  }
  return flow;
}

Rat l1_norm(const MetricGraph& g, const EdgeFlow& flow) {
  Rat sum(0);
  for (const auto& [edge, value] : flow.entries()) {
    if (edge < 0 || edge >= g.edge_count())
      fail(Errc::UnknownEdge, "flow entry on edge id " + std::to_string(edge));
    sum += g.edge(edge).length * rat_abs(value);
  }
  return sum;
}

EdgeFlow flow_add(const EdgeFlow& a, const EdgeFlow& b) {
  EdgeFlow out = a;
  for (const auto& [edge, value] : b.entries()) out.add(edge, value);
  return out;
}

EdgeFlow flow_scale(const Rat& factor, const EdgeFlow& flow) {
  EdgeFlow out;
  if (factor == 0) return out;
  for (const auto& [edge, value] : flow.entries()) out.set(edge, factor * value);
  return out;
}

EdgeFlow cycle_to_flow(const CycleVector& cycle) {
  EdgeFlow out;
  for (const auto& [edge, sign] : cycle.entries) out.set(edge, Rat(sign));
  return out;
}

MassFunction mass_add(const MassFunction& a, const MassFunction& b) {
  MassFunction out = a;
  for (const auto& [vertex, value] : b.entries()) out.add(vertex, value);
  return out;
}

MassFunction mass_scale(const Rat& factor, const MassFunction& f) {
  MassFunction out;
  if (factor == 0) return out;
  for (const auto& [vertex, value] : f.entries()) out.set(vertex, factor * value);
  return out;
}

void check_mass_balance(const MassFunction& f) {
  Rat total = f.total();
  if (total != 0) fail(Errc::MassNotZero, "mass function sums to " + rat_to_string(total));
}

}  // namespace tcnorm
