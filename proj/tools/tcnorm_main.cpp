// Command-line front end: norm, plan, certify, gen and bench subcommands
// over JSON instances.
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tcnorm/closed_forms.hpp"
#include "tcnorm/generator.hpp"
#include "tcnorm/io.hpp"
#include "tcnorm/oracle.hpp"
#include "tcnorm/solver.hpp"

namespace {

using namespace tcnorm;

constexpr int kExitValidation = 2;
constexpr int kExitCrossCheck = 3;

// Metric-space instances run through the complete graph on all points.
MetricGraph complete_graph(const FiniteMetricSpace& space) {
  std::vector<EdgeSpec> edges;
  for (int i = 0; i < space.size(); ++i)
    for (int j = i + 1; j < space.size(); ++j)
      edges.push_back(EdgeSpec{space.point_name(i), space.point_name(j), space.d(i, j)});
  return MetricGraph(space.point_names(), edges);
}

Rat norm_with_algo(const Instance& instance, const std::string& algo) {
  if (instance.space) {
    if (algo != "auto" && algo != "solver")
      fail(Errc::BadParams, "metric-space instances support only --algo auto|solver");
    return metric_space_norm(*instance.space, instance.masses).norm;
  }
  const MetricGraph& g = *instance.graph;
  const MassFunction& f = instance.masses;
  if (algo == "solver") return minimize_l1_flow(g, f).norm;
  if (algo == "tree") return tree_norm(g, f);
  if (algo == "cycle") return cycle_norm(g, f);
  if (algo == "bridge") return bridge_reduced_norm(g, f);
  if (algo == "oracle") return oracle_norm_by_trees(g, f).first;
  if (algo == "auto") {
    if (g.is_tree()) return tree_norm(g, f);
    if (g.is_cycle()) return cycle_norm(g, f);
    return bridge_reduced_norm(g, f);
  }
  fail(Errc::BadParams, "unknown algorithm '" + algo + "'");
}

int run_norm(const std::string& path, const std::string& algo) {
  std::cout << rat_to_string(norm_with_algo(load_instance(path), algo)) << "\n";
  return 0;
}

int run_plan(const std::string& path, bool min_transports) {
  Instance instance = load_instance(path);
  Json out;
  if (instance.space) {
    MetricSpaceResult result = metric_space_norm(*instance.space, instance.masses);
    out = plan_to_json(result.plan, instance.space->point_names());
  } else {
    TransportPlan plan = min_transports ? min_transport_plan_tree(*instance.graph, instance.masses)
                                        : optimal_simultaneous_plan(*instance.graph, instance.masses);
    out = plan_to_json(plan, instance.graph->vertex_names());
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_certify(const std::string& path) {
  Instance instance = load_instance(path);
  MetricGraph g = instance.space ? complete_graph(*instance.space) : *instance.graph;
  Rat norm = minimize_l1_flow(g, instance.masses).norm;
  DualCertificate certificate = dual_certificate(g, instance.masses, norm);
  std::cout << certificate_to_json(certificate, g.vertex_names()).dump(2) << "\n";
  return 0;
}

int run_gen(const GenParams& params, const std::string& out_path) {
  std::string text = generate_instance_text(params);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) fail(Errc::BadParams, "cannot write '" + out_path + "'");
    out << text;
  }
  return 0;
}

struct BenchRow {
  std::string instance;
  std::string algo;
  int vertices;
  int edges;
  std::string norm;
  long long micros;
  long counter;
};

template <typename Fn>
BenchRow timed_row(const std::string& id, const std::string& algo, const MetricGraph& g, Fn&& compute) {
  auto start = std::chrono::steady_clock::now();
  auto [norm, counter] = compute();
  auto stop = std::chrono::steady_clock::now();
  return BenchRow{id,
                  algo,
                  g.vertex_count(),
                  g.edge_count(),
                  rat_to_string(norm),
                  std::chrono::duration_cast<std::chrono::microseconds>(stop - start).count(),
                  counter};
}

int run_bench(const std::vector<std::string>& families, const std::vector<int>& sizes,
              const std::vector<std::uint64_t>& seeds, const std::string& out_path) {
  std::ostringstream csv;
  csv << "instance,algo,vertices,edges,norm,micros,counter\n";
  for (const std::string& family : families)
    for (int n : sizes)
      for (std::uint64_t seed : seeds) {
        GenParams params;
        params.family = family;
        params.n = n;
        params.seed = seed;
        Json parsed = Json::parse(generate_instance_text(params));
        Instance instance = parse_instance(parsed);
        const MetricGraph& g = *instance.graph;
        const MassFunction& f = instance.masses;
        std::string id = family + "-n" + std::to_string(n) + "-s" + std::to_string(seed);

        std::vector<BenchRow> rows;
        rows.push_back(timed_row(id, "solver", g, [&] {
          OptimalFlowResult result = minimize_l1_flow(g, f);
          return std::make_pair(result.norm, result.pivot_count);
        }));
        if (g.is_tree()) {
          rows.push_back(timed_row(id, "tree", g, [&] {
            AdditionCounter counter;
            Rat norm = tree_norm(g, f, &counter);
            return std::make_pair(norm, counter.additions);
          }));
          rows.push_back(timed_row(id, "leafpeel", g, [&] {
            AdditionCounter counter;
            Rat norm = tree_norm_leaf_peel(g, f, counter);
            return std::make_pair(norm, counter.additions);
          }));
        }
        if (g.is_cycle())
          rows.push_back(timed_row(id, "cycle", g, [&] { return std::make_pair(cycle_norm(g, f), 0L); }));
        if (!find_bridges(g).empty())
          rows.push_back(timed_row(id, "bridge", g, [&] { return std::make_pair(bridge_reduced_norm(g, f), 0L); }));
        if (spanning_tree_count(g) <= 1000)
          rows.push_back(timed_row(id, "oracle", g, [&] {
            return std::make_pair(oracle_norm_by_trees(g, f).first, 0L);
          }));

        for (const BenchRow& row : rows)
          if (row.norm != rows.front().norm)
            fail(Errc::InternalCheck, "algorithms disagree on " + id + ": " + row.algo + " got " + row.norm +
                                          ", solver got " + rows.front().norm);
        for (const BenchRow& row : rows)
          csv << row.instance << "," << row.algo << "," << row.vertices << "," << row.edges << "," << row.norm
              << "," << row.micros << "," << row.counter << "\n";
      }
  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) fail(Errc::BadParams, "cannot write '" + out_path + "'");
    out << csv.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact transportation-cost norms on metric graphs"};
  app.require_subcommand(1);

  std::string instance_path, algo = "auto", out_path;
  bool min_transports = false;
  GenParams gen_params;
  std::vector<std::string> families;
  std::vector<int> sizes{8, 12};
  std::vector<std::uint64_t> seeds{1};

  CLI::App* cmd_norm = app.add_subcommand("norm", "Print the transportation norm of an instance");
  cmd_norm->add_option("instance", instance_path, "Instance JSON file")->required();
  cmd_norm->add_option("--algo", algo, "auto|solver|tree|cycle|bridge|oracle")->capture_default_str();

  CLI::App* cmd_plan = app.add_subcommand("plan", "Print an optimal simultaneous transport plan");
  cmd_plan->add_option("instance", instance_path, "Instance JSON file")->required();
  cmd_plan->add_flag("--min-transports", min_transports, "Minimal-transport plan (trees only)");

  CLI::App* cmd_certify = app.add_subcommand("certify", "Print a dual optimality certificate");
  cmd_certify->add_option("instance", instance_path, "Instance JSON file")->required();

  CLI::App* cmd_gen = app.add_subcommand("gen", "Generate a random instance");
  cmd_gen->add_option("--family", gen_params.family, "tree|cycle|random|lollipop")->required();
  cmd_gen->add_option("--n", gen_params.n, "Vertex count")->required();
  cmd_gen->add_option("--seed", gen_params.seed, "RNG seed")->capture_default_str();
  cmd_gen->add_option("--mass-range", gen_params.mass_range, "Masses drawn from [-range, range]")
      ->capture_default_str();
  cmd_gen->add_option("-o,--output", out_path, "Write to file instead of stdout");

  CLI::App* cmd_bench = app.add_subcommand("bench", "Cross-algorithm benchmark as CSV");
  cmd_bench->add_option("--families", families, "Graph families to run")->delimiter(',');
  cmd_bench->add_option("--sizes", sizes, "Vertex counts")->delimiter(',')->capture_default_str();
  cmd_bench->add_option("--seeds", seeds, "RNG seeds")->delimiter(',')->capture_default_str();
  cmd_bench->add_option("-o,--output", out_path, "Write CSV to file instead of stdout");

  try {
    app.parse(argc, argv);
    if (cmd_norm->parsed()) return run_norm(instance_path, algo);
    if (cmd_plan->parsed()) return run_plan(instance_path, min_transports);
    if (cmd_certify->parsed()) return run_certify(instance_path);
    if (cmd_gen->parsed()) return run_gen(gen_params, out_path);
    if (cmd_bench->parsed()) return run_bench(families, sizes, seeds, out_path);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_internal() ? kExitCrossCheck : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCrossCheck;
  }
  return 0;
}
