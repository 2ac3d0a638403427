// Independent ground truth: minimum over all spanning trees, Kantorovich
// dual certificates, exhaustive lattice plan search, and the reduction of a
// finite metric space to a complete graph on the support.
#pragma once

#include <utility>
#include <vector>

#include "tcnorm/chains.hpp"
#include "tcnorm/graph.hpp"
#include "tcnorm/plans.hpp"

namespace tcnorm {

// Exact norm as the minimum over all spanning trees of the unique tree
// flow's weighted l1 norm, with the first achieving tree in enumeration
// order. Refuses when the tree count exceeds `cap`.
std::pair<Rat, SpanningTree> oracle_norm_by_trees(const MetricGraph& g, const MassFunction& f,
                                                  const Int& cap = Int(1000000));

// 1-Lipschitz vertex potential whose pairing with f equals the norm.
struct DualCertificate {
  std::vector<Rat> potential;
  Rat value;
};

// Builds the certificate from residual shortest paths around an optimal
// flow; `claimed_norm` must be the solver norm. A mismatch (CertificateGap)
// or Lipschitz violation signals a solver bug, not bad input.
DualCertificate dual_certificate(const MetricGraph& g, const MassFunction& f, const Rat& claimed_norm);

// Finite metric space given by an explicit distance matrix; construction
// validates the metric axioms exactly.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace(std::vector<std::string> points, std::vector<std::vector<Rat>> distances);

  int size() const { return static_cast<int>(points_.size()); }
  const std::string& point_name(int i) const { return points_[i]; }
  const std::vector<std::string>& point_names() const { return points_; }
  const Rat& d(int a, int b) const { return distances_[a][b]; }

 private:
  std::vector<std::string> points_;
  std::vector<std::vector<Rat>> distances_;
};

// Exact minimum cost over integral plans on sources x sinks after scaling
// masses by `grid_denominator`; equals the norm for such masses by total
// unimodularity of the transportation polytope. Supports up to 4 support
// points and refuses oversized mass totals.
Rat exhaustive_plan_search(const FiniteMetricSpace& space, const MassFunction& f, long grid_denominator);

struct MetricSpaceResult {
  Rat norm;
  TransportPlan plan;  // indices into the metric space's points
};

// Norm on a finite metric space via the complete graph on supp(f): at most
// |supp(f)| - 1 transports are needed.
MetricSpaceResult metric_space_norm(const FiniteMetricSpace& space, const MassFunction& f);

}  // namespace tcnorm
