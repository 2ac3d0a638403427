// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Usage: acceptance <path-to-cli-binary>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <vector>

#include "tcnorm/closed_forms.hpp"
#include "tcnorm/generator.hpp"
#include "tcnorm/io.hpp"
#include "tcnorm/oracle.hpp"
#include "tcnorm/plans.hpp"
#include "tcnorm/solver.hpp"

using namespace tcnorm;

namespace {

int failures = 0;
std::map<int, std::string> report_lines;

void report(int criterion, const std::string& label, bool ok, const std::string& detail = "") {
  std::string line = "criterion " + std::to_string(criterion) + " (" + label + "): " + (ok ? "PASS" : "FAIL");
  if (!detail.empty()) line += " [" + detail + "]";
  report_lines[criterion] = line;
  if (!ok) ++failures;
}

// Integer masses within [-range, range] at every vertex, sum exactly zero:
// draw freely, then walk the imbalance back in unit steps.
MassFunction bounded_masses(int n, int range, Rng& rng) {
  std::vector<long> values(n);
  long sum = 0;
  for (int v = 0; v < n; ++v) {
    values[v] = rng.range(-range, range);
    sum += values[v];
  }
  for (int v = 0; sum != 0; v = (v + 1) % n) {
    if (sum > 0 && values[v] > -range) {
      --values[v];
      --sum;
    } else if (sum < 0 && values[v] < range) {
      ++values[v];
      ++sum;
    }
  }
  MassFunction f;
  for (int v = 0; v < n; ++v) f.set(v, Rat(values[v]));
  return f;
}

MassFunction nonzero_masses(int n, int range, Rng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    MassFunction f = bounded_masses(n, range, rng);
    if (!f.is_zero()) return f;
  }
  MassFunction f;
  f.set(0, Rat(1));
  f.set(n - 1, Rat(-1));
  return f;
}

MetricGraph small_graph(Rng& rng) {
  int n = static_cast<int>(rng.range(2, 7));
  long complete = static_cast<long>(n) * (n - 1) / 2;
  long cap = std::min<long>(10, complete);
  int extra = static_cast<int>(rng.range(0, cap - (n - 1)));
  return gen_connected(n, extra, rng);
}

struct CommandResult {
  int status;
  std::string output;
};

CommandResult run_command(const std::string& command) {
  CommandResult result{-1, ""};
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return result;
  char buffer[4096];
  size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.output.append(buffer, got);
  result.status = pclose(pipe);
  return result;
}

// --- criterion 1 + 4 + 7 share the random-graph suite ---------------------

void run_graph_suite(const std::string& cli_path) {
  (void)cli_path;
  const int cases = 500;
  Rng rng(10001);
  bool solver_vs_oracle = true, plans_ok = true, duals_ok = true;
  std::string c1_detail, c4_detail, c7_detail;

  auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < cases; ++i) {
    MetricGraph g = small_graph(rng);
    MassFunction f = bounded_masses(g.vertex_count(), 5, rng);

    OptimalFlowResult solved = minimize_l1_flow(g, f);
    if (solved.norm != oracle_norm_by_trees(g, f).first) {
      solver_vs_oracle = false;
      c1_detail = "mismatch at case " + std::to_string(i);
    }

    TransportPlan plan = optimal_simultaneous_plan(g, f);
    PlanCheck check = validate_plan(g, plan, f);
    DistanceMatrix d = shortest_path_metric(g);
    if (!check.valid || !check.simultaneous || plan_cost(d, plan) != solved.norm) {
      plans_ok = false;
      c4_detail = "plan defect at case " + std::to_string(i);
    }

    try {
      DualCertificate certificate = dual_certificate(g, f, solved.norm);
      if (certificate.value != solved.norm) {
        duals_ok = false;
        c7_detail = "value mismatch at case " + std::to_string(i);
      }
      for (int x = 0; x < g.vertex_count() && duals_ok; ++x)
        for (int y = 0; y < g.vertex_count(); ++y)
          if (rat_abs(certificate.potential[x] - certificate.potential[y]) > d.d(x, y)) {
            duals_ok = false;
            c7_detail = "Lipschitz violation at case " + std::to_string(i);
            break;
          }
    } catch (const Error& e) {
      duals_ok = false;
      c7_detail = e.what();
    }
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  bool in_time = elapsed.count() < 60000;
  report(1, "solver == spanning-tree oracle, 500 random graphs", solver_vs_oracle && in_time,
         c1_detail.empty() ? std::to_string(elapsed.count()) + " ms" : c1_detail);
  report(4, "optimal simultaneous plans: sources-to-sinks at the solver norm", plans_ok, c4_detail);
  report(7, "dual certificates tight and 1-Lipschitz", duals_ok, c7_detail);
}

// --- criterion 2: tree formula and leaf peeling ----------------------------

void run_tree_suite() {
  const int cases = 500;
  Rng rng(10002);
  bool ok = true;
  std::string detail;
  for (int i = 0; i < cases && ok; ++i) {
    MetricGraph g = gen_tree(static_cast<int>(rng.range(2, 12)), rng);
    MassFunction f = bounded_masses(g.vertex_count(), 5, rng);
    Rat direct = tree_norm(g, f);
    AdditionCounter counter;
    Rat peeled = tree_norm_leaf_peel(g, f, counter);
    Rat solved = minimize_l1_flow(g, f).norm;
    if (direct != peeled || direct != solved) {
      ok = false;
      detail = "norm mismatch at case " + std::to_string(i);
    }
    if (counter.additions > 2 * g.edge_count() - 1) {
      ok = false;
      detail = "addition budget exceeded at case " + std::to_string(i);
    }
  }
  report(2, "tree formula == leaf peel == solver, additions <= 2|E|-1", ok, detail);
}

// --- criterion 3: cycle formula --------------------------------------------

void run_cycle_suite() {
  const int cases = 500;
  Rng rng(10003);
  bool ok = true;
  std::string detail;
  for (int i = 0; i < cases && ok; ++i) {
    MetricGraph g = gen_cycle(static_cast<int>(rng.range(3, 12)), rng);
    MassFunction f = bounded_masses(g.vertex_count(), 5, rng);
    if (cycle_norm(g, f) != minimize_l1_flow(g, f).norm) {
      ok = false;
      detail = "weighted mismatch at case " + std::to_string(i);
    }
  }

  // Unit lengths: the formula collapses to distances from the smallest
  // median of the partial sums, computed here by direct sorting.
  Rng unit_rng(10013);
  for (int i = 0; i < 250 && ok; ++i) {
    int n = static_cast<int>(unit_rng.range(3, 12));
    std::vector<std::string> names;
    std::vector<EdgeSpec> edges;
    for (int v = 0; v < n; ++v) names.push_back("v" + std::to_string(v));
    for (int v = 0; v < n; ++v) edges.push_back(EdgeSpec{names[v], names[(v + 1) % n], Rat(1)});
    MetricGraph g(names, edges);
    MassFunction f = bounded_masses(n, 5, unit_rng);

    // Partial sums along declaration order; edge v_{i-1} -> v_i has unit
    // weight, so pairing is irrelevant and the multiset decides.
    std::vector<Rat> sums(n, Rat(0));
    for (int v = 1; v < n; ++v) sums[v] = sums[v - 1] + f.value(v - 1);
    std::vector<Rat> sorted = sums;
    std::sort(sorted.begin(), sorted.end());
    Rat median = sorted[(n - 1) / 2];
    Rat expected(0);
    for (const Rat& s : sums) expected += rat_abs(s - median);
    if (cycle_norm(g, f) != expected) {
      ok = false;
      detail = "unit-length median mismatch at case " + std::to_string(i);
    }
  }
  report(3, "cycle formula == solver; unit lengths hit the median form", ok, detail);
}

// --- criterion 5: minimal transports on trees -------------------------------

void run_min_transport_suite() {
  const int cases = 500;
  Rng rng(10005);
  bool ok = true;
  std::string detail;
  for (int i = 0; i < cases && ok; ++i) {
    MetricGraph g = gen_tree(static_cast<int>(rng.range(2, 12)), rng);
    MassFunction f = nonzero_masses(g.vertex_count(), 5, rng);

    SpanningTree whole;
    for (int e = 0; e < g.edge_count(); ++e) whole.edges.push_back(e);
    int k = flow_component_count(g, initial_tree_flow(g, whole, f), f);

    TransportPlan plan;
    try {
      plan = min_transport_plan_tree(g, f);
    } catch (const Error& e) {
      ok = false;
      detail = e.what();
      break;
    }
    PlanCheck check = validate_plan(g, plan, f);
    bool bounds = plan.support_size() <= f.support_size() - 1 && plan.support_size() <= f.support_size() - k;
    bool cost = plan_cost(shortest_path_metric(g), plan) == tree_norm(g, f);
    if (!check.valid || !check.simultaneous || !bounds || !cost || !plan_support_is_forest(plan)) {
      ok = false;
      detail = "defect at case " + std::to_string(i);
    }
  }
  report(5, "tree plans: |supp(P)| <= |supp(f)|-k, simultaneous, tree-norm cost, forest", ok, detail);
}

// --- criterion 6: bridge reduction ------------------------------------------

void run_bridge_suite() {
  const int target = 300;
  Rng rng(10006);
  bool ok = true;
  std::string detail;
  int done = 0;
  while (done < target && ok) {
    int n = static_cast<int>(rng.range(3, 9));
    MetricGraph g = gen_connected(n, static_cast<int>(rng.range(0, 2)), rng);
    if (find_bridges(g).empty()) continue;
    MassFunction f = bounded_masses(g.vertex_count(), 5, rng);

    BridgeReduction reduction = bridge_reduce(g, f);
    Rat total = reduction.bridge_cost;
    for (size_t c = 0; c < reduction.components.size(); ++c)
      if (reduction.components[c].edge_count() > 0)
        total += minimize_l1_flow(reduction.components[c], reduction.component_masses[c]).norm;
    if (total != minimize_l1_flow(g, f).norm) {
      ok = false;
      detail = "reconstruction mismatch at case " + std::to_string(done);
    }
    ++done;
  }
  report(6, "bridge cost + component norms == full norm, 300 bridged graphs", ok, detail);
}

// --- criterion 8: finite metric spaces --------------------------------------

void run_metric_space_suite() {
  const int cases = 200;
  Rng rng(10008);
  bool ok = true;
  std::string detail;
  for (int i = 0; i < cases && ok; ++i) {
    int n = static_cast<int>(rng.range(3, 4));
    std::vector<std::vector<Rat>> d(n, std::vector<Rat>(n, Rat(0)));
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        long num = rng.range(1, 9);
        long den = rng.range(1, 4);
        d[a][b] = d[b][a] = make_rat(num, den);
      }
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (a != b && d[a][b] > d[a][k] + d[k][b]) d[a][b] = d[b][a] = d[a][k] + d[k][b];
    std::vector<std::string> names;
    for (int p = 0; p < n; ++p) names.push_back("p" + std::to_string(p));
    FiniteMetricSpace space(names, d);

    MassFunction f = nonzero_masses(n, 3, rng);
    MetricSpaceResult result = metric_space_norm(space, f);
    if (result.norm != exhaustive_plan_search(space, f, 1) ||
        result.plan.support_size() > f.support_size() - 1) {
      ok = false;
      detail = "mismatch at case " + std::to_string(i);
    }
  }
  report(8, "metric-space norm == exhaustive lattice search, <= |supp(f)|-1 transports", ok, detail);
}

// --- criterion 9: CLI determinism -------------------------------------------

void run_cli_suite(const std::string& cli_path) {
  bool ok = true;
  std::string detail;

  for (const char* family : {"tree", "cycle", "random", "lollipop"}) {
    std::string command = std::string("'") + cli_path + "' gen --family " + family + " --n 8 --seed 99";
    CommandResult first = run_command(command);
    CommandResult second = run_command(command);
    if (first.status != 0 || second.status != 0 || first.output != second.output || first.output.empty()) {
      ok = false;
      detail = std::string("gen not reproducible for family ") + family;
    }
  }

  CommandResult bench = run_command(std::string("'") + cli_path +
                                    "' bench --families tree,cycle,random,lollipop --sizes 6,9 --seeds 5,6");
  if (bench.status != 0) {
    ok = false;
    detail = "bench exited nonzero";
  } else {
    std::istringstream lines(bench.output);
    std::string line;
    std::getline(lines, line);  // header
    std::map<std::string, std::string> norm_by_instance;
    int rows = 0;
    while (std::getline(lines, line)) {
      std::vector<std::string> cols;
      std::istringstream cells(line);
      std::string cell;
      while (std::getline(cells, cell, ',')) cols.push_back(cell);
      if (cols.size() != 7) continue;
      ++rows;
      auto [it, inserted] = norm_by_instance.emplace(cols[0], cols[4]);
      if (!inserted && it->second != cols[4]) {
        ok = false;
        detail = "norm strings diverge on " + cols[0];
      }
    }
    if (rows == 0) {
      ok = false;
      detail = "bench produced no rows";
    }
  }
  report(9, "CLI: seeded gen is byte-identical; bench norms agree per instance", ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-cli>\n";
    return 64;
  }
  run_graph_suite(argv[1]);
  run_tree_suite();
  run_cycle_suite();
  run_min_transport_suite();
  run_bridge_suite();
  run_metric_space_suite();
  run_cli_suite(argv[1]);
  for (const auto& [criterion, line] : report_lines) std::cout << line << std::endl;
  if (failures > 0) std::cout << failures << " criterion(s) failed" << std::endl;
  return failures == 0 ? 0 : 1;
}
