#include <hypergiant/continuum.hpp>
#include <hypergiant/coupling.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hypergiant {

StripPoint psi(const PolarPoint& p, double radius) {
    if (!(p.r >= 0.0 && p.r <= radius)) throw std::domain_error("psi: radius outside [0, R]");
    return {0.5 * p.theta * std::exp(0.5 * radius), radius - p.r};
}

PolarPoint psi_inverse(const StripPoint& s, double radius) {
    if (!(s.y >= 0.0 && s.y <= radius)) throw std::domain_error("psi_inverse: y outside [0, R]");
    const double half = 0.5 * strip_circumference(radius);
    if (!(s.x > -half * (1.0 + 1e-15) && s.x <= half * (1.0 + 1e-15)))
        throw std::domain_error("psi_inverse: x outside the strip");
    return {radius - s.y, 2.0 * s.x * std::exp(-0.5 * radius)};
}

double strip_circumference(double radius) { return kPi * std::exp(0.5 * radius); }

StripIntensity strip_intensity(double alpha, double nu, double radius, double y) {
    if (!(alpha > 0.0 && nu > 0.0 && radius > 0.0)) throw std::domain_error("strip_intensity: bad parameters");
    if (!(y >= 0.0 && y <= radius)) throw std::domain_error("strip_intensity: y outside [0, R]");
    const double scale = nu * alpha / kPi;
    const double target = scale * std::exp(-alpha * y);
    const double denom = std::expm1(-alpha * radius);
    const double push = target * -std::expm1(-2.0 * alpha * (radius - y)) / (denom * denom);
    return {push, target, push / target};
}

double intensity_discrepancy(double alpha, double nu, double radius, std::size_t intervals) {
    intervals += intervals % 2;
    if (intervals == 0) intervals = 2;
    const double step = radius / static_cast<double>(intervals);
    auto diff = [&](double y) {
        const auto s = strip_intensity(alpha, nu, radius, std::min(y, radius));
        return std::abs(s.pushforward - s.target);
    };
    double sum = diff(0.0) + diff(radius);
    for (std::size_t k = 1; k < intervals; ++k) sum += (k % 2 == 1 ? 4.0 : 2.0) * diff(step * static_cast<double>(k));
    return strip_circumference(radius) * sum * step / 3.0;
}

std::vector<HalfPlanePoint> strip_images(const VertexSet& vertices) {
    const double radius = vertices.params.radius();
    std::vector<HalfPlanePoint> out;
    out.reserve(vertices.points.size());
    for (const auto& p : vertices.points) {
        const auto s = psi(p, radius);
        out.push_back({s.x, s.y});
    }
    return out;
}

Graph torus_graph(const VertexSet& vertices) {
    return gamma_graph_torus(strip_images(vertices), strip_circumference(vertices.params.radius()));
}

EdgeAgreementReport edge_agreement(const VertexSet& vertices) {
    return edge_agreement(vertices, build_graph(vertices), torus_graph(vertices));
}

EdgeAgreementReport edge_agreement(const VertexSet& vertices, const Graph& disk, const Graph& torus) {
    if (disk.vertex_count() != vertices.points.size() || torus.vertex_count() != vertices.points.size())
        throw std::invalid_argument("edge_agreement: graphs do not match the vertex set");
    const double outer = 1.5 * vertices.params.radius();
    EdgeAgreementReport report;
    report.vertex_count = vertices.points.size();
    const auto& a = disk.edges();
    const auto& b = torus.edges();
    std::size_t i = 0;
    std::size_t j = 0;
    auto disk_only = [&](const Edge& e) {
        if (vertices.points[e.first].r + vertices.points[e.second].r >= outer)
            ++report.g_only_outer;
        else
            ++report.g_only_inner;
    };
    // Both edge lists are sorted lexicographically.
    while (i < a.size() || j < b.size()) {
        ++report.total_pairs;
        if (j == b.size() || (i < a.size() && a[i] < b[j])) {
            disk_only(a[i++]);
        } else if (i == a.size() || b[j] < a[i]) {
            ++report.gamma_only;
            ++j;
        } else {
            ++report.agreements;
            ++i;
            ++j;
        }
    }
    return report;
}

}  // namespace hypergiant
