// Transportation plans: cost and validity, flow <-> edge-plan conversion,
// purification onto sources x sinks, and minimal-transport plans on trees.
#pragma once

#include <map>
#include <utility>

#include "tcnorm/chains.hpp"
#include "tcnorm/graph.hpp"

namespace tcnorm {

// Sparse nonnegative function on ordered vertex pairs; only strictly
// positive masses are stored and self-pairs are rejected.
class TransportPlan {
 public:
  TransportPlan() = default;

  void add(int source, int target, const Rat& mass);
  Rat mass(int source, int target) const;

  const std::map<std::pair<int, int>, Rat>& entries() const { return masses_; }
  bool empty() const { return masses_.empty(); }
  int support_size() const { return static_cast<int>(masses_.size()); }

  // Total transported mass, sum of all entries.
  Rat total_mass() const;

  // Net export per vertex: the mass function this plan transports.
  MassFunction boundary() const;

  bool operator==(const TransportPlan& other) const { return masses_ == other.masses_; }

 private:
  std::map<std::pair<int, int>, Rat> masses_;
};

// W(P) = sum of mass * distance over entries.
Rat plan_cost(const DistanceMatrix& metric, const TransportPlan& plan);

struct PlanCheck {
  bool valid = false;           // P transports exactly f
  bool simultaneous = false;    // support inside sources x sinks of f
  bool edge_supported = false;  // every pair is an edge of the graph
};

PlanCheck validate_plan(const MetricGraph& g, const TransportPlan& plan, const MassFunction& f);

// Edge-supported plan with the same flow and cost equal to the flow's norm:
// positive flow moves tail -> head, negative flow head -> tail.
TransportPlan flow_to_edge_plan(const MetricGraph& g, const EdgeFlow& flow);

// Reroutes x->y->z into x->z (and symmetrically) until the support lies in
// sources x sinks. Cost never increases; total transported mass strictly
// decreases at every step, which bounds the iteration count for rational
// input. Throws NotAPlan when P does not transport f.
TransportPlan purify_plan(const DistanceMatrix& metric, const TransportPlan& plan, const MassFunction& f);

// Optimal plan supported on sources x sinks: solve for an optimal
// tree-supported flow, then peel source-to-sink paths off it.
TransportPlan optimal_simultaneous_plan(const MetricGraph& g, const MassFunction& f);

// On a tree: optimal simultaneous plan using at most |supp(f)| - k
// transports, k the number of flow-support components meeting supp(f).
// Returns the empty plan for f = 0.
TransportPlan min_transport_plan_tree(const MetricGraph& g, const MassFunction& f);

// Number of connected components of (V, supp(flow)) containing a vertex of
// supp(f). This is the k in the transport-count bound.
int flow_component_count(const MetricGraph& g, const EdgeFlow& flow, const MassFunction& f);

// True when the undirected pair graph of the plan's support is acyclic.
bool plan_support_is_forest(const TransportPlan& plan);

}  // namespace tcnorm
