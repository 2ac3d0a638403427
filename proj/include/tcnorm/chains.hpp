// Mass functions on vertices, flows on oriented edges, the boundary operator
// and the plan -> flow map.
#pragma once

#include <map>
#include <vector>

#include "tcnorm/graph.hpp"
#include "tcnorm/rational.hpp"

namespace tcnorm {

class TransportPlan;

// Sparse rational function on vertices; zero entries are never stored, so
// the key set is exactly the support. Total sum zero is required by most
// operations and checked there, not here.
class MassFunction {
 public:
  MassFunction() = default;

  void set(int vertex, const Rat& value);
  void add(int vertex, const Rat& value);
  Rat value(int vertex) const;

  const std::map<int, Rat>& entries() const { return values_; }
  bool is_zero() const { return values_.empty(); }
  int support_size() const { return static_cast<int>(values_.size()); }

  Rat total() const;
  std::vector<int> support() const;
  std::vector<int> positives() const;
  std::vector<int> negatives() const;

  bool operator==(const MassFunction& other) const { return values_ == other.values_; }

 private:
  std::map<int, Rat> values_;
};

// Sparse rational function on edges, signs relative to the graph orientation.
class EdgeFlow {
 public:
  EdgeFlow() = default;

  void set(int edge, const Rat& value);
  void add(int edge, const Rat& value);
  Rat value(int edge) const;

  const std::map<int, Rat>& entries() const { return values_; }
  bool is_zero() const { return values_.empty(); }
  std::vector<int> support() const;

  bool operator==(const EdgeFlow& other) const { return values_ == other.values_; }

 private:
  std::map<int, Rat> values_;
};

// (boundary phi)(v) = sum of phi over edges with head v minus sum over edges
// with tail v. Result always sums to zero.
MassFunction boundary_apply(const MetricGraph& g, const EdgeFlow& flow);

// Characteristic vector of the selected shortest path from a to b: +1 on
// edges traversed with their orientation, -1 against. boundary = b - a.
EdgeFlow path_vector(const MetricGraph& g, const DistanceMatrix& metric, int a, int b);

// phi_P = sum over plan entries of mass * path_vector. Uses the metric's
// deterministic path selection, so overlap cancellation is reproducible.
EdgeFlow plan_to_flow(const MetricGraph& g, const DistanceMatrix& metric, const TransportPlan& plan);

// Length-weighted l1 norm of a flow.
Rat l1_norm(const MetricGraph& g, const EdgeFlow& flow);

EdgeFlow flow_add(const EdgeFlow& a, const EdgeFlow& b);
EdgeFlow flow_scale(const Rat& factor, const EdgeFlow& flow);
EdgeFlow cycle_to_flow(const CycleVector& cycle);

MassFunction mass_add(const MassFunction& a, const MassFunction& b);
MassFunction mass_scale(const Rat& factor, const MassFunction& f);

// Throws MassNotZero unless f sums to zero.
void check_mass_balance(const MassFunction& f);

}  // namespace tcnorm
