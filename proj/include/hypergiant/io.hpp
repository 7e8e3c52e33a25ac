#pragma once

#include <hypergiant/continuum.hpp>
#include <hypergiant/coupling.hpp>
#include <hypergiant/estimators.hpp>
#include <hypergiant/graph.hpp>
#include <hypergiant/kpkvb.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace hypergiant {

using Json = nlohmann::json;

/// Fixed CSV number format: 9 significant digits.
std::string csv_number(double v);

/// CSV document: a "# <config json>" line, the header, then the rows.
std::string csv_document(const Json& provenance, const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows);

/// "u v" per line, 0-based, after a "# <config json>" line.
std::string edge_list(const Graph& graph, const Json& provenance);

/// "x,y" CSV of half-plane points (continuum samples, strip images).
std::string points_csv(const std::vector<HalfPlanePoint>& points, const Json& provenance);

/// "id,r,theta" CSV of disk vertices.
std::string vertices_csv(const VertexSet& vertices, const Json& provenance);

/// Poincare-disk drawing in a 1000 x 1000 viewBox: a vertex at (r, theta)
/// is placed at Euclidean radius tanh(r / 2) (scaled to 480 px) and edges
/// are straight chords. The config is embedded in a <metadata> element.
std::string disk_svg(const VertexSet& vertices, const Graph& graph, const Json& provenance);

Json to_json(const ComponentSummary& summary);
Json to_json(const EdgeAgreementReport& report);
Json to_json(const ThetaEstimate& estimate);
Json to_json(const CEstimate& estimate);
Json to_json(const LambdaBracket& bracket);
Json to_json(const LlnRow& row);

/// {"event", "params", "p_hat", "ci", "replicas"} for one event rate.
Json event_estimate_json(const std::string& event, const Json& params, const Proportion& rate);

}  // namespace hypergiant
