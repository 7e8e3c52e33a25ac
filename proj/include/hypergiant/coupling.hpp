#pragma once

#include <hypergiant/geometry.hpp>
#include <hypergiant/graph.hpp>
#include <hypergiant/kpkvb.hpp>

#include <cstddef>
#include <vector>

namespace hypergiant {

/// Image of a disk point on the strip (-(pi/2) e^{R/2}, (pi/2) e^{R/2}] x [0, R].
struct StripPoint {
    double x = 0.0;
    double y = 0.0;
};

/// (r, theta) -> (theta e^{R/2} / 2, R - r). Throws std::domain_error unless 0 <= r <= R.
StripPoint psi(const PolarPoint& p, double radius);

/// Inverse of psi. Throws std::domain_error outside the strip.
PolarPoint psi_inverse(const StripPoint& s, double radius);

/// Circumference pi e^{R/2} of the strip viewed as a torus in x.
double strip_circumference(double radius);

/// Density of the image of the disk vertices on the strip next to its
/// limiting target (nu alpha / pi) e^{-alpha y}.
struct StripIntensity {
    double pushforward = 0.0;
    double target = 0.0;
    double ratio = 0.0;  // pushforward / target
};

/// With N = nu e^{R/2}, the pushforward is f_V(R - y, .) * 2 e^{-R/2}, i.e.
/// (nu alpha / pi) sinh(alpha (R - y)) / (cosh(alpha R) - 1), evaluated as
/// (nu alpha / pi) e^{-alpha y} (1 - e^{-2 alpha (R - y)}) / (1 - e^{-alpha R})^2.
/// Throws std::domain_error unless 0 <= y <= R.
StripIntensity strip_intensity(double alpha, double nu, double radius, double y);

/// Integral of |pushforward - target| over the strip [0, R] heights and full
/// width, by composite Simpson with `intervals` subintervals (rounded up to even).
double intensity_discrepancy(double alpha, double nu, double radius, std::size_t intervals = 4096);

/// Images psi(X_i) of all vertices as half-plane points, in vertex order.
std::vector<HalfPlanePoint> strip_images(const VertexSet& vertices);

/// The torus graph on the strip images: |x_i - x_j|_c <= e^{(y_i + y_j)/2}.
Graph torus_graph(const VertexSet& vertices);

/// Edge comparison between the disk graph and the torus graph on the same
/// points. The candidate pairs are the union of both edge sets: any pair
/// outside it is non-adjacent in both models.
struct EdgeAgreementReport {
    std::size_t total_pairs = 0;   // |E_disk u E_torus|
    std::size_t agreements = 0;    // in both
    std::size_t gamma_only = 0;    // torus edges missing from the disk graph
    std::size_t g_only_outer = 0;  // disk-only edges with r_i + r_j >= 3R/2
    std::size_t g_only_inner = 0;  // remaining disk-only edges
    std::size_t vertex_count = 0;

    double gamma_only_rate() const {
        return total_pairs == 0 ? 0.0 : static_cast<double>(gamma_only) / static_cast<double>(total_pairs);
    }
};

EdgeAgreementReport edge_agreement(const VertexSet& vertices);
EdgeAgreementReport edge_agreement(const VertexSet& vertices, const Graph& disk, const Graph& torus);

}  // namespace hypergiant
