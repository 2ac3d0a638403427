#include "tcnorm/oracle.hpp"

#include <algorithm>

#include "tcnorm/solver.hpp"

namespace tcnorm {

std::pair<Rat, SpanningTree> oracle_norm_by_trees(const MetricGraph& g, const MassFunction& f, const Int& cap) {
  check_mass_balance(f);
  Int count = spanning_tree_count(g);
  if (count > cap)
    fail(Errc::TooManyTrees, "graph has " + count.get_str() + " spanning trees, cap is " + cap.get_str());

  bool have_best = false;
  Rat best_norm(0);
  SpanningTree best_tree;
  for_each_spanning_tree(g, [&](const SpanningTree& tree) {
    Rat norm = l1_norm(g, initial_tree_flow(g, tree, f));
    if (!have_best || norm < best_norm) {
      have_best = true;
      best_norm = norm;
      best_tree = tree;
    }
    return true;
  });
  if (!have_best) fail(Errc::InternalCheck, "no spanning tree enumerated on a connected graph");
  return {best_norm, best_tree};
}

DualCertificate dual_certificate(const MetricGraph& g, const MassFunction& f, const Rat& claimed_norm) {
  check_mass_balance(f);
  OptimalFlowResult optimal = minimize_l1_flow(g, f);

  // Shortest-path labels in the residual graph of the optimal flow. With no
  // negative residual cycle these stabilize, and every support edge is tight
  // with the matching sign, which makes the pairing telescope to the norm.
  const int n = g.vertex_count();
  std::vector<Rat> label(n, Rat(0));
  std::vector<char> reached(n, 0);
  reached[0] = 1;
  for (int round = 0; round < n; ++round) {
    bool changed = false;
    for (int e = 0; e < g.edge_count(); ++e) {
      const Edge& edge = g.edge(e);
      Rat value = optimal.flow.value(e);
      Rat forward_cost = value < 0 ? Rat(-edge.length) : edge.length;   // push tail -> head
      Rat backward_cost = value > 0 ? Rat(-edge.length) : edge.length;  // push head -> tail
      if (reached[edge.tail] && (!reached[edge.head] || label[edge.tail] + forward_cost < label[edge.head])) {
        label[edge.head] = label[edge.tail] + forward_cost;
        reached[edge.head] = 1;
        changed = true;
      }
      if (reached[edge.head] && (!reached[edge.tail] || label[edge.head] + backward_cost < label[edge.tail])) {
        label[edge.tail] = label[edge.head] + backward_cost;
        reached[edge.tail] = 1;
        changed = true;
      }
    }
    if (!changed) break;
    if (round == n - 1) fail(Errc::InternalCheck, "residual labels failed to stabilize at an optimum");
  }

  DualCertificate certificate;
  certificate.potential.reserve(n);
  for (int v = 0; v < n; ++v) certificate.potential.push_back(-label[v]);

  certificate.value = 0;
  for (const auto& [vertex, value] : f.entries()) certificate.value += value * certificate.potential[vertex];

  for (int e = 0; e < g.edge_count(); ++e) {
    Rat gap = rat_abs(certificate.potential[g.edge(e).head] - certificate.potential[g.edge(e).tail]);
    if (gap > g.edge(e).length) fail(Errc::InternalCheck, "certificate is not 1-Lipschitz across an edge");
  }
  if (certificate.value != claimed_norm)
    fail(Errc::CertificateGap, "certificate value " + rat_to_string(certificate.value) +
                                   " does not match claimed norm " + rat_to_string(claimed_norm));
  return certificate;
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> points, std::vector<std::vector<Rat>> distances)
    : points_(std::move(points)), distances_(std::move(distances)) {
  for (auto& row : distances_)
    for (Rat& value : row) value.canonicalize();
  const int n = static_cast<int>(points_.size());
  if (n == 0) fail(Errc::BadParams, "metric space needs at least one point");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (points_[i] == points_[j]) fail(Errc::DuplicateVertex, "point '" + points_[i] + "' declared twice");
  if (static_cast<int>(distances_.size()) != n) fail(Errc::NonMetric, "distance matrix row count mismatch");
  for (const auto& row : distances_)
    if (static_cast<int>(row.size()) != n) fail(Errc::NonMetric, "distance matrix column count mismatch");
  for (int i = 0; i < n; ++i) {
    if (distances_[i][i] != 0) fail(Errc::NonMetric, "nonzero distance on the diagonal at '" + points_[i] + "'");
    for (int j = 0; j < n; ++j) {
      if (i != j && distances_[i][j] <= 0)
        fail(Errc::NonMetric, "nonpositive distance between '" + points_[i] + "' and '" + points_[j] + "'");
      if (distances_[i][j] != distances_[j][i])
        fail(Errc::NonMetric, "asymmetric distances between '" + points_[i] + "' and '" + points_[j] + "'");
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (distances_[i][k] > distances_[i][j] + distances_[j][k])
          fail(Errc::NonMetric, "triangle inequality fails at ('" + points_[i] + "','" + points_[j] + "','" +
                                    points_[k] + "')");
}

namespace {

// All integer matrices with the given margins, cell by cell.
void enumerate_margin_matrices(const std::vector<long>& supply, const std::vector<long>& demand,
                               std::vector<long>& row_rem, std::vector<long>& col_rem, size_t cell,
                               std::vector<long>& cells, const std::function<void(const std::vector<long>&)>& emit) {
  const size_t cols = demand.size();
  if (cell == supply.size() * cols) {
    emit(cells);
    return;
  }
  size_t i = cell / cols, j = cell % cols;
  long upper = std::min(row_rem[i], col_rem[j]);
  bool last_in_row = (j == cols - 1);
  bool last_in_col = (i == supply.size() - 1);
  long lower = 0;
  if (last_in_row) lower = row_rem[i];
  if (last_in_col) lower = std::max(lower, col_rem[j]);
  if (last_in_row && row_rem[i] > upper) return;
  if (last_in_col && col_rem[j] > upper) return;
  for (long v = lower; v <= upper; ++v) {
    row_rem[i] -= v;
    col_rem[j] -= v;
    cells[cell] = v;
    enumerate_margin_matrices(supply, demand, row_rem, col_rem, cell + 1, cells, emit);
    row_rem[i] += v;
    col_rem[j] += v;
  }
}

}  // namespace

Rat exhaustive_plan_search(const FiniteMetricSpace& space, const MassFunction& f, long grid_denominator) {
  check_mass_balance(f);
  if (grid_denominator <= 0) fail(Errc::BadParams, "grid denominator must be positive");
  if (f.support_size() > 4)
    fail(Errc::TooLarge, "exhaustive search limited to 4 support points, got " +
                             std::to_string(f.support_size()));
  if (f.is_zero()) return 0;

  std::vector<int> sources, sinks;
  std::vector<long> supply, demand;
  long total = 0;
  for (const auto& [vertex, value] : f.entries()) {
    Rat scaled = value * grid_denominator;
    if (scaled.get_den() != 1)
      fail(Errc::BadParams, "mass at '" + space.point_name(vertex) + "' is not integral on the grid");
    if (!scaled.get_num().fits_slong_p()) fail(Errc::TooLarge, "scaled mass exceeds the search range");
    long units = scaled.get_num().get_si();
    if (units > 0) {
      sources.push_back(vertex);
      supply.push_back(units);
      total += units;
    } else {
      sinks.push_back(vertex);
      demand.push_back(-units);
    }
  }
  if (total > 1000) fail(Errc::TooLarge, "total of " + std::to_string(total) + " mass units to enumerate");

  Rat best(0);
  bool have_best = false;
  std::vector<long> row_rem = supply, col_rem = demand;
  std::vector<long> cells(sources.size() * sinks.size(), 0);
  enumerate_margin_matrices(supply, demand, row_rem, col_rem, 0, cells, [&](const std::vector<long>& m) {
    Rat cost(0);
    for (size_t i = 0; i < sources.size(); ++i)
      for (size_t j = 0; j < sinks.size(); ++j) cost += Rat(m[i * sinks.size() + j]) * space.d(sources[i], sinks[j]);
    cost /= grid_denominator;
    if (!have_best || cost < best) {
      have_best = true;
      best = cost;
    }
  });
  if (!have_best) fail(Errc::InternalCheck, "margin enumeration produced no plan");
  return best;
}

MetricSpaceResult metric_space_norm(const FiniteMetricSpace& space, const MassFunction& f) {
  check_mass_balance(f);
  for (const auto& [vertex, value] : f.entries())
    if (vertex < 0 || vertex >= space.size())
      fail(Errc::UnknownVertex, "mass entry on point id " + std::to_string(vertex));

  MetricSpaceResult result;
  result.norm = 0;
  if (f.is_zero()) return result;

  // Complete graph on the support; the metric axioms make the direct edge a
  // shortest path, so the graph norm equals the space norm.
  std::vector<int> support = f.support();
  std::vector<std::string> names;
  for (int v : support) names.push_back(space.point_name(v));
  std::vector<EdgeSpec> edges;
  for (size_t i = 0; i < support.size(); ++i)
    for (size_t j = i + 1; j < support.size(); ++j)
      edges.push_back(EdgeSpec{names[i], names[j], space.d(support[i], support[j])});
  MetricGraph complete(names, edges);

  MassFunction local;
  for (size_t i = 0; i < support.size(); ++i) local.set(static_cast<int>(i), f.value(support[i]));

  result.norm = minimize_l1_flow(complete, local).norm;
  TransportPlan local_plan = optimal_simultaneous_plan(complete, local);
  for (const auto& [pair, mass] : local_plan.entries())
    result.plan.add(support[pair.first], support[pair.second], mass);

  if (result.plan.support_size() > f.support_size() - 1)
    fail(Errc::InternalCheck, "metric-space plan uses more than |supp(f)|-1 transports");
  return result;
}

}  // namespace tcnorm
