// Exact minimization of the length-weighted l1 norm over flows with a
// prescribed boundary, returning an optimal flow supported on a spanning
// tree. The norm it computes is the transportation cost of the boundary
// mass, by the quotient-norm identity.
#pragma once

#include <utility>
#include <vector>

#include "tcnorm/chains.hpp"
#include "tcnorm/graph.hpp"

namespace tcnorm {

struct OptimalFlowResult {
  EdgeFlow flow;
  Rat norm;
  SpanningTree supporting_tree;
  long pivot_count = 0;  // negative-cycle cancellations performed
};

// The unique flow supported on `tree` with boundary -f: on each tree edge,
// minus the mass of the half-tree containing the head.
EdgeFlow initial_tree_flow(const MetricGraph& g, const SpanningTree& tree, const MassFunction& f);

// Globally optimal flow with boundary -f. Starts from the BFS-tree flow,
// cancels negative residual cycles until none remain, then slides the flow
// onto a spanning tree without changing the norm.
OptimalFlowResult minimize_l1_flow(const MetricGraph& g, const MassFunction& f);

// The cancellation stage alone: repeatedly finds a negative residual cycle
// and pushes to the smallest minimizer along it. The result is l1-minimal
// in its coset but its support may still contain flat cycles.
EdgeFlow cancel_negative_cycles(const MetricGraph& g, EdgeFlow flow, long* pivot_count = nullptr);

// Given a flow that is l1-minimal in its coset modulo the cycle space,
// returns an equal-norm flow with acyclic support embedded in a spanning
// tree. Throws NonOptimalInput if a cycle line search strictly improves.
std::pair<EdgeFlow, SpanningTree> tree_support_extract(const MetricGraph& g, const EdgeFlow& flow);

// Minimizer of t -> sum of w_i * |a_i - t| over (breakpoint, weight) pairs:
// the smallest breakpoint whose one-sided weight sums straddle half the
// total. Weights must be positive.
Rat weighted_median_linesearch(const std::vector<std::pair<Rat, Rat>>& breakpoints);

}  // namespace tcnorm
