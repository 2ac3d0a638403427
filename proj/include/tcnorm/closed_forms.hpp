// Structure-exploiting fast paths: the exact tree formula, leaf peeling with
// an addition budget, the cycle formula via weighted median, and reduction
// of a general graph to its bridgeless components.
#pragma once

#include <vector>

#include "tcnorm/chains.hpp"
#include "tcnorm/graph.hpp"
#include "tcnorm/plans.hpp"

namespace tcnorm {

// Counts rational additions performed by an instrumented routine.
struct AdditionCounter {
  long additions = 0;

  void tick() { ++additions; }
};

// Sum over edges of |f(half-tree at the head)| * length, evaluated per edge
// by walking the half-tree. Optional counter records the additions spent.
Rat tree_norm(const MetricGraph& g, const MassFunction& f, AdditionCounter* counter = nullptr);

// Same value in at most 2|E|-1 additions: repeatedly merge a leaf's mass
// into its neighbor, accumulating |f(leaf)| * length.
Rat tree_norm_leaf_peel(const MetricGraph& g, const MassFunction& f, AdditionCounter& counter);

// The explicit edge-supported optimal plan on a tree: each edge carries
// |f(S_e)| toward the lighter side.
TransportPlan tree_optimal_plan(const MetricGraph& g, const MassFunction& f);

struct CycleNormResult {
  Rat norm;
  Rat median;      // minimizing shift over the partial sums
  EdgeFlow flow;   // an optimal flow realizing the norm
};

// Transportation norm on a single cycle: weighted median of the partial
// sums of f along the cycle, weighted by edge lengths.
Rat cycle_norm(const MetricGraph& g, const MassFunction& f);
CycleNormResult cycle_norm_with_flow(const MetricGraph& g, const MassFunction& f);

// Flow on bridges is forced by the cut condition; what remains is an
// independent problem per bridgeless component.
struct BridgeReduction {
  EdgeFlow bridge_flow;                  // the forced values, bridges only
  Rat bridge_cost;                       // sum over bridges of |f(S_e)| * length
  MassFunction residual_mass;            // f plus the boundary of the bridge flow
  std::vector<MetricGraph> components;   // bridgeless parts, at least one vertex each
  std::vector<std::vector<int>> component_vertices;  // parent vertex ids per component
  std::vector<std::vector<int>> component_edges;     // parent edge ids per component
  std::vector<MassFunction> component_masses;        // residual restricted, local ids
};

BridgeReduction bridge_reduce(const MetricGraph& g, const MassFunction& f);

// bridge_cost plus the solver norm of every component: the full norm.
Rat bridge_reduced_norm(const MetricGraph& g, const MassFunction& f);

}  // namespace tcnorm
