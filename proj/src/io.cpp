#include "tcnorm/io.hpp"

#include <algorithm>
#include <fstream>

namespace tcnorm {

namespace {

Rat rational_field(const Json& j, const std::string& where) {
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
  // Floating-point JSON numbers are rejected: their decimal intent is
  // ambiguous after binary parsing. Use a string like "1.25" or "5/4".
  fail(Errc::ParseError, where + ": expected an integer or a rational string");
}

}  // namespace

MetricGraph parse_graph(const Json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    fail(Errc::ParseError, "graph object needs 'vertices' and 'edges'");
  std::vector<std::string> vertices;
  for (const Json& v : j.at("vertices")) {
    if (!v.is_string()) fail(Errc::ParseError, "vertex identifiers must be strings");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<EdgeSpec> edges;
  for (const Json& e : j.at("edges")) {
    if (!e.is_object() || !e.contains("u") || !e.contains("v") || !e.contains("len"))
      fail(Errc::ParseError, "edge objects need 'u', 'v' and 'len'");
    edges.push_back(EdgeSpec{e.at("u").get<std::string>(), e.at("v").get<std::string>(),
                             rational_field(e.at("len"), "edge length")});
  }
  return MetricGraph(std::move(vertices), std::move(edges));
}

MassFunction parse_masses(const Json& j, const std::vector<std::string>& names) {
  if (!j.is_object()) fail(Errc::ParseError, "masses must be an object keyed by vertex");
  MassFunction f;
  for (const auto& [key, value] : j.items()) {
    auto it = std::find(names.begin(), names.end(), key);
    if (it == names.end()) fail(Errc::UnknownVertex, "mass on undeclared vertex '" + key + "'");
    f.set(static_cast<int>(it - names.begin()), rational_field(value, "mass of '" + key + "'"));
  }
  check_mass_balance(f);
  return f;
}

FiniteMetricSpace parse_metric_space(const Json& j) {
  if (!j.is_object() || !j.contains("points") || !j.contains("d"))
    fail(Errc::ParseError, "metric space object needs 'points' and 'd'");
  std::vector<std::string> points;
  for (const Json& p : j.at("points")) points.push_back(p.get<std::string>());
  std::vector<std::vector<Rat>> rows;
  for (const Json& row : j.at("d")) {
    std::vector<Rat> r;
    for (const Json& cell : row) r.push_back(rational_field(cell, "distance entry"));
    rows.push_back(std::move(r));
  }
  return FiniteMetricSpace(std::move(points), std::move(rows));
}

Instance parse_instance(const Json& j) {
  if (!j.is_object() || !j.contains("masses")) fail(Errc::ParseError, "instance needs 'masses'");
  Instance instance;
  if (j.contains("graph")) {
    instance.graph.emplace(parse_graph(j.at("graph")));
    instance.masses = parse_masses(j.at("masses"), instance.graph->vertex_names());
  } else if (j.contains("metric_space")) {
    instance.space.emplace(parse_metric_space(j.at("metric_space")));
    instance.masses = parse_masses(j.at("masses"), instance.space->point_names());
  } else {
    fail(Errc::ParseError, "instance needs 'graph' or 'metric_space'");
  }
  return instance;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    fail(Errc::ParseError, "invalid JSON in '" + path + "': " + e.what());
  }
  return parse_instance(j);
}

Json graph_to_json(const MetricGraph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges())
    edges.push_back(Json{{"u", g.vertex_name(e.tail)}, {"v", g.vertex_name(e.head)}, {"len", rat_to_string(e.length)}});
  return Json{{"vertices", g.vertex_names()}, {"edges", edges}};
}

Json masses_to_json(const MassFunction& f, const std::vector<std::string>& names) {
  Json j = Json::object();
  for (const auto& [vertex, value] : f.entries()) j[names[vertex]] = rat_to_string(value);
  return j;
}

Json plan_to_json(const TransportPlan& plan, const std::vector<std::string>& names) {
  std::vector<std::pair<std::pair<std::string, std::string>, Rat>> rows;
  for (const auto& [pair, mass] : plan.entries())
    rows.push_back({{names[pair.first], names[pair.second]}, mass});
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Json j = Json::array();
  for (const auto& [pair, mass] : rows)
    j.push_back(Json{{"from", pair.first}, {"to", pair.second}, {"mass", rat_to_string(mass)}});
  return j;
}

Json certificate_to_json(const DualCertificate& certificate, const std::vector<std::string>& names) {
  Json potential = Json::object();
  for (size_t v = 0; v < names.size(); ++v) potential[names[v]] = rat_to_string(certificate.potential[v]);
  return Json{{"value", rat_to_string(certificate.value)}, {"potential", potential}, {"lipschitz_ok", true}};
}

}  // namespace tcnorm
