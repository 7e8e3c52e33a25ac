#include <hypergiant/io.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace hypergiant {

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string comment_line(const Json& provenance) { return "# " + provenance.dump() + "\n"; }

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string csv_document(const Json& provenance, const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
    std::string out = comment_line(provenance);
    auto append_row = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    append_row(header);
    for (const auto& r : rows) append_row(r);
    return out;
}

std::string edge_list(const Graph& graph, const Json& provenance) {
    std::string out = comment_line(provenance);
    for (const auto& [u, v] : graph.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

std::string points_csv(const std::vector<HalfPlanePoint>& points, const Json& provenance) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(points.size());
    for (const auto& p : points) rows.push_back({csv_number(p.x), csv_number(p.y)});
    return csv_document(provenance, {"x", "y"}, rows);
}

std::string vertices_csv(const VertexSet& vertices, const Json& provenance) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(vertices.points.size());
    for (std::size_t i = 0; i < vertices.points.size(); ++i) {
        const auto& p = vertices.points[i];
        rows.push_back({std::to_string(i), csv_number(p.r), csv_number(p.theta)});
    }
    return csv_document(provenance, {"id", "r", "theta"}, rows);
}

std::string disk_svg(const VertexSet& vertices, const Graph& graph, const Json& provenance) {
    constexpr double kCenter = 500.0;
    constexpr double kScale = 480.0;
    std::vector<std::pair<double, double>> xy;
    xy.reserve(vertices.points.size());
    for (const auto& p : vertices.points) {
        const double rho = std::tanh(0.5 * p.r) * kScale;
        xy.emplace_back(kCenter + rho * std::cos(p.theta), kCenter - rho * std::sin(p.theta));
    }
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">\n";
    os << "<metadata>" << xml_escape(provenance.dump()) << "</metadata>\n";
    os << "<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
    os << "<circle cx=\"500\" cy=\"500\" r=\"480\" fill=\"none\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    os << "<g stroke=\"#1f4e8c\" stroke-opacity=\"0.35\" stroke-width=\"0.6\">\n";
    for (const auto& [u, v] : graph.edges()) {
        os << "<line x1=\"" << fixed2(xy[u].first) << "\" y1=\"" << fixed2(xy[u].second) << "\" x2=\""
           << fixed2(xy[v].first) << "\" y2=\"" << fixed2(xy[v].second) << "\"/>\n";
    }
    os << "</g>\n<g fill=\"#c0392b\">\n";
    for (const auto& [x, y] : xy)
        os << "<circle class=\"v\" cx=\"" << fixed2(x) << "\" cy=\"" << fixed2(y) << "\" r=\"2.5\"/>\n";
    os << "</g>\n</svg>\n";
    return os.str();
}

Json to_json(const ComponentSummary& summary) {
    return Json{{"sizes", summary.sizes}, {"c1_frac", summary.c1_frac}, {"c2_frac", summary.c2_frac}};
}

Json to_json(const EdgeAgreementReport& report) {
    return Json{{"total_pairs", report.total_pairs},
                {"agreements", report.agreements},
                {"gamma_only", report.gamma_only},
                {"g_only_outer", report.g_only_outer},
                {"g_only_inner", report.g_only_inner},
                {"vertex_count", report.vertex_count},
                {"gamma_only_rate", report.gamma_only_rate()}};
}

Json event_estimate_json(const std::string& event, const Json& params, const Proportion& rate) {
    return Json{{"event", event},
                {"params", params},
                {"p_hat", rate.p_hat},
                {"ci", {rate.ci_lo, rate.ci_hi}},
                {"replicas", rate.trials}};
}

Json to_json(const ThetaEstimate& e) {
    Json j{{"y", e.y},
           {"alpha", e.params.alpha},
           {"lambda", e.params.lambda},
           {"lower", e.lower},
           {"upper", e.upper},
           {"replicas", e.replicas},
           {"ci_half_width", e.ci_half_width},
           {"exact", e.exact}};
    if (!e.exact) {
        j["events"] = {
            event_estimate_json("T", {{"y", e.y}, {"h", e.h}, {"w", e.w}}, e.t_rate),
            event_estimate_json("U", {{"y", e.y}, {"n", e.n}, {"h", e.u_height}}, e.u_rate),
        };
    }
    return j;
}

Json to_json(const CEstimate& e) {
    Json grid = Json::array();
    for (const auto& [y, t] : e.grid) grid.push_back({y, t});
    return Json{{"alpha", e.alpha},
                {"nu", e.nu},
                {"value", e.value},
                {"uncertainty", e.uncertainty},
                {"tail_cutoff", e.tail_cutoff},
                {"error_budget", e.error_budget},
                {"exact", e.exact},
                {"grid", grid}};
}

Json to_json(const LambdaBracket& b) {
    Json probs = Json::array();
    for (const auto& [l, p] : b.crossing_probs) probs.push_back({l, p});
    return Json{{"lo", b.lo},
                {"hi", b.hi},
                {"nu_lo", kPi * b.lo},
                {"nu_hi", kPi * b.hi},
                {"nu_mid", b.nu_mid()},
                {"h_used", b.h_used},
                {"w_used", b.w_used},
                {"replicas", b.replicas},
                {"crossing_probs", probs},
                {"warnings", b.warnings}};
}

Json to_json(const LlnRow& r) {
    return Json{{"n", r.n},
                {"replicas", r.replicas},
                {"g_c1_mean", r.g_c1_mean},
                {"g_c1_sd", r.g_c1_sd},
                {"g_c2_mean", r.g_c2_mean},
                {"g_c2_sd", r.g_c2_sd},
                {"po_c1_mean", r.po_c1_mean},
                {"po_c1_sd", r.po_c1_sd},
                {"po_c2_mean", r.po_c2_mean},
                {"po_c2_sd", r.po_c2_sd}};
}

}  // namespace hypergiant
