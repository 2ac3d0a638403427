// JSON instance formats shared by the CLI: graphs, masses, metric spaces,
// plans and certificates. All numbers travel as exact rational strings.
#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "tcnorm/chains.hpp"
#include "tcnorm/graph.hpp"
#include "tcnorm/oracle.hpp"
#include "tcnorm/plans.hpp"

namespace tcnorm {

using Json = nlohmann::json;

// One solvable instance: either a metric graph or an explicit metric space,
// plus a zero-sum mass function over its vertices/points.
struct Instance {
  std::optional<MetricGraph> graph;
  std::optional<FiniteMetricSpace> space;
  MassFunction masses;
};

// {"vertices": [...], "edges": [{"u":..,"v":..,"len":..}]}; len is an
// integer or a rational/decimal string.
MetricGraph parse_graph(const Json& j);

// {"a": "1", "b": "-1"}; validates the zero sum.
MassFunction parse_masses(const Json& j, const std::vector<std::string>& names);

// {"points": [...], "d": [[...], ...]}
FiniteMetricSpace parse_metric_space(const Json& j);

// {"graph": {...}} or {"metric_space": {...}}, plus {"masses": {...}}.
Instance parse_instance(const Json& j);
Instance load_instance(const std::string& path);

Json graph_to_json(const MetricGraph& g);
Json masses_to_json(const MassFunction& f, const std::vector<std::string>& names);

// [{"from":..,"to":..,"mass":..}] sorted by (from, to) names.
Json plan_to_json(const TransportPlan& plan, const std::vector<std::string>& names);

Json certificate_to_json(const DualCertificate& certificate, const std::vector<std::string>& names);

}  // namespace tcnorm
