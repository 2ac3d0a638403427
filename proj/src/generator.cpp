#include "tcnorm/generator.hpp"

#include <algorithm>
#include <set>

#include "tcnorm/io.hpp"

namespace tcnorm {

namespace {

std::vector<std::string> vertex_names(int n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (int v = 0; v < n; ++v) names.push_back("v" + std::to_string(v));
  return names;
}

}  // namespace

Rat gen_length(Rng& rng, long max_part) {
  long num = rng.range(1, max_part);  // sequenced: argument order is unspecified
  long den = rng.range(1, max_part);
  return make_rat(num, den);
}

MetricGraph gen_tree(int n, Rng& rng) {
  if (n < 2) fail(Errc::BadParams, "tree generation needs n >= 2");
  std::vector<std::string> names = vertex_names(n);
  std::vector<EdgeSpec> edges;
  for (int v = 1; v < n; ++v) {
    int parent = static_cast<int>(rng.below(v));
    edges.push_back(EdgeSpec{names[parent], names[v], gen_length(rng)});
  }
  return MetricGraph(std::move(names), std::move(edges));
}

MetricGraph gen_cycle(int n, Rng& rng) {
  if (n < 3) fail(Errc::BadParams, "cycle generation needs n >= 3");
  std::vector<std::string> names = vertex_names(n);
  std::vector<EdgeSpec> edges;
  for (int v = 0; v < n; ++v) edges.push_back(EdgeSpec{names[v], names[(v + 1) % n], gen_length(rng)});
  return MetricGraph(std::move(names), std::move(edges));
}

MetricGraph gen_lollipop(int n, Rng& rng) {
  if (n < 4) fail(Errc::BadParams, "lollipop generation needs n >= 4");
  int cycle_size = std::max(3, n / 2 + 1);
  std::vector<std::string> names = vertex_names(n);
  std::vector<EdgeSpec> edges;
  for (int v = 0; v < cycle_size; ++v)
    edges.push_back(EdgeSpec{names[v], names[(v + 1) % cycle_size], gen_length(rng)});
  for (int v = cycle_size; v < n; ++v)
    edges.push_back(EdgeSpec{names[v == cycle_size ? 0 : v - 1], names[v], gen_length(rng)});
  return MetricGraph(std::move(names), std::move(edges));
}

MetricGraph gen_connected(int n, int extra_edges, Rng& rng) {
  if (n < 2) fail(Errc::BadParams, "graph generation needs n >= 2");
  std::vector<std::string> names = vertex_names(n);
  std::vector<EdgeSpec> edges;
  std::set<std::pair<int, int>> used;
  for (int v = 1; v < n; ++v) {
    int parent = static_cast<int>(rng.below(v));
    used.insert(std::minmax(parent, v));
    edges.push_back(EdgeSpec{names[parent], names[v], gen_length(rng)});
  }
  long max_extra = static_cast<long>(n) * (n - 1) / 2 - (n - 1);
  long want = std::min<long>(extra_edges, max_extra);
  while (want > 0) {
    int a = static_cast<int>(rng.below(n));
    int b = static_cast<int>(rng.below(n));
    if (a == b) continue;
    if (!used.insert(std::minmax(a, b)).second) continue;
    edges.push_back(EdgeSpec{names[a], names[b], gen_length(rng)});
    --want;
  }
  return MetricGraph(std::move(names), std::move(edges));
}

MassFunction gen_masses(int n, int range, Rng& rng) {
  if (range < 0) fail(Errc::BadParams, "mass range must be nonnegative");
  MassFunction f;
  Rat running(0);
  for (int v = 0; v + 1 < n; ++v) {
    Rat mass(rng.range(-range, range));
    f.set(v, mass);
    running += mass;
  }
  f.set(n - 1, -running);
  return f;
}

std::string generate_instance_text(const GenParams& params) {
  if (params.n < 2) fail(Errc::BadParams, "instance generation needs n >= 2");
  Rng rng(params.seed);
  MetricGraph graph = [&]() -> MetricGraph {
    if (params.family == "tree") return gen_tree(params.n, rng);
    if (params.family == "cycle") return gen_cycle(params.n, rng);
    if (params.family == "lollipop") return gen_lollipop(params.n, rng);
    if (params.family == "random") return gen_connected(params.n, static_cast<int>(rng.below(params.n)), rng);
    fail(Errc::BadParams, "unknown family '" + params.family + "'");
  }();
  MassFunction masses = gen_masses(params.n, params.mass_range, rng);
  Json instance{{"graph", graph_to_json(graph)}, {"masses", masses_to_json(masses, graph.vertex_names())}};
  return instance.dump(2) + "\n";
}

}  // namespace tcnorm
