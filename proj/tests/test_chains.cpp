#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tcnorm/chains.hpp"
#include "tcnorm/plans.hpp"
#include "test_util.hpp"

using namespace tcnorm;
using namespace tcnorm::testing;

TEST_CASE("boundary of basic flows") {
  MetricGraph path = p3();
  CHECK(boundary_apply(path, EdgeFlow{}).is_zero());

  EdgeFlow unit;
  unit.set(0, Rat(1));
  unit.set(1, Rat(1));
  MassFunction expected;  // delta_c - delta_a
  expected.set(path.vertex_index("c"), Rat(1));
  expected.set(path.vertex_index("a"), Rat(-1));
  CHECK(boundary_apply(path, unit) == expected);

  MetricGraph cycle = c4_unit();
  std::vector<CycleVector> cycles = fundamental_cycles(cycle, SpanningTree{{0, 1, 2}});
  REQUIRE(cycles.size() == 1);
  CHECK(boundary_apply(cycle, cycle_to_flow(cycles[0])).is_zero());
}

TEST_CASE("boundary rejects foreign edges") {
  EdgeFlow bad;
  bad.set(5, Rat(1));
  CHECK_THROWS_AS(boundary_apply(g1(), bad), Error);
}

TEST_CASE("path vectors on the fixtures") {
  MetricGraph single = g1();
  DistanceMatrix d1 = shortest_path_metric(single);
  EdgeFlow ab = path_vector(single, d1, 0, 1);
  CHECK(ab.value(0) == 1);

  MetricGraph path = p3();
  DistanceMatrix dp = shortest_path_metric(path);
  EdgeFlow ca = path_vector(path, dp, path.vertex_index("c"), path.vertex_index("a"));
  CHECK(ca.value(0) == -1);
  CHECK(ca.value(1) == -1);

  MetricGraph cycle = c4_unit();
  DistanceMatrix dc = shortest_path_metric(cycle);
  EdgeFlow v0v2 = path_vector(cycle, dc, 0, 2);
  CHECK(v0v2.value(0) == 1);  // selected route v0 v1 v2
  CHECK(v0v2.value(1) == 1);
  CHECK(v0v2.value(3) == 0);

  CHECK_THROWS_AS(path_vector(single, d1, 0, 0), Error);
}

TEST_CASE("path vector norm equals the distance and boundary is a dipole") {
  Rng rng(23);
  for (int round = 0; round < 25; ++round) {
    MetricGraph g = random_small_graph(rng);
    DistanceMatrix d = shortest_path_metric(g);
    int a = static_cast<int>(rng.below(g.vertex_count()));
    int b = static_cast<int>(rng.below(g.vertex_count()));
    if (a == b) continue;
    EdgeFlow eps = path_vector(g, d, a, b);
    CHECK(l1_norm(g, eps) == d.d(a, b));
    MassFunction dipole;
    dipole.set(b, Rat(1));
    dipole.set(a, Rat(-1));
    CHECK(boundary_apply(g, eps) == dipole);
    for (const auto& [edge, value] : eps.entries()) CHECK(rat_abs(value) == 1);
  }
}

TEST_CASE("plan to flow on the fixtures") {
  MetricGraph path = p3();
  DistanceMatrix dp = shortest_path_metric(path);
  TransportPlan ac;
  ac.add(path.vertex_index("a"), path.vertex_index("c"), Rat(1));
  EdgeFlow flow = plan_to_flow(path, dp, ac);
  CHECK(flow.value(0) == 1);
  CHECK(flow.value(1) == 1);

  MetricGraph single = g1();
  DistanceMatrix d1 = shortest_path_metric(single);
  TransportPlan round_trip;
  round_trip.add(0, 1, Rat(1));
  round_trip.add(1, 0, Rat(1));
  CHECK(plan_to_flow(single, d1, round_trip).is_zero());
}

TEST_CASE("opposed overlaps make the flow norm drop strictly below the cost") {
  MetricGraph cycle = c4_unit();
  DistanceMatrix d = shortest_path_metric(cycle);
  TransportPlan plan;
  plan.add(0, 2, Rat(1));
  plan.add(1, 3, Rat(1));
  EdgeFlow flow = plan_to_flow(cycle, d, plan);
  Rat cost = plan_cost(d, plan);
  CHECK(cost == 4);
  CHECK(l1_norm(cycle, flow) <= cost);
  CHECK(l1_norm(cycle, flow) == 2);  // the two selected routes share edge v0-v1 oppositely
}

TEST_CASE("l1 norm on explicit flows") {
  MetricGraph path = p3();
  CHECK(l1_norm(path, EdgeFlow{}) == 0);
  EdgeFlow f1;
  f1.set(0, Rat(1));
  f1.set(1, Rat(1));
  CHECK(l1_norm(path, f1) == 3);
  EdgeFlow f2;
  f2.set(0, Rat(-2));
  f2.set(1, Rat(1));
  CHECK(l1_norm(path, f2) == 4);
}

TEST_CASE("flow norm of a plan never exceeds its cost") {
  Rng rng(31);
  for (int round = 0; round < 40; ++round) {
    MetricGraph g = random_small_graph(rng);
    DistanceMatrix d = shortest_path_metric(g);
    TransportPlan plan;
    for (int k = 0; k < 4; ++k) {
      int a = static_cast<int>(rng.below(g.vertex_count()));
      int b = static_cast<int>(rng.below(g.vertex_count()));
      if (a != b) plan.add(a, b, Rat(rng.range(1, 5)));
    }
    CHECK(l1_norm(g, plan_to_flow(g, d, plan)) <= plan_cost(d, plan));
  }
}

TEST_CASE("boundary output always sums to zero and is linear") {
  Rng rng(37);
  for (int round = 0; round < 40; ++round) {
    MetricGraph g = random_small_graph(rng);
    EdgeFlow phi, psi;
    for (int e = 0; e < g.edge_count(); ++e) {
      phi.set(e, Rat(rng.range(-4, 4)));
      psi.set(e, Rat(rng.range(-4, 4)));
    }
    CHECK(boundary_apply(g, phi).total() == 0);

    Rat alpha(rng.range(-3, 3)), beta(rng.range(-3, 3));
    EdgeFlow combo = flow_add(flow_scale(alpha, phi), flow_scale(beta, psi));
    MassFunction lhs = boundary_apply(g, combo);
    MassFunction rhs = mass_add(mass_scale(alpha, boundary_apply(g, phi)), mass_scale(beta, boundary_apply(g, psi)));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("the boundary operator has rank |V| - 1") {
  Rng rng(41);
  for (int round = 0; round < 15; ++round) {
    MetricGraph g = random_small_graph(rng);
    const int n = g.vertex_count();
    // Columns are boundaries of edge indicators; eliminate over the rationals.
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(g.edge_count(), Rat(0)));
    for (int e = 0; e < g.edge_count(); ++e) {
      EdgeFlow indicator;
      indicator.set(e, Rat(1));
      MassFunction column = boundary_apply(g, indicator);
      for (const auto& [vertex, value] : column.entries()) m[vertex][e] = value;
    }
    int rank = 0;
    for (int col = 0; col < g.edge_count() && rank < n; ++col) {
      int pivot = -1;
      for (int row = rank; row < n; ++row)
        if (m[row][col] != 0) {
          pivot = row;
          break;
        }
      if (pivot == -1) continue;
      std::swap(m[pivot], m[rank]);
      for (int row = 0; row < n; ++row) {
        if (row == rank || m[row][col] == 0) continue;
        Rat factor = m[row][col] / m[rank][col];
        for (int k = col; k < g.edge_count(); ++k) m[row][k] -= factor * m[rank][k];
      }
      ++rank;
    }
    CHECK(rank == n - 1);
  }
}
