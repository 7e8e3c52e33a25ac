#pragma once

#include <hypergiant/geometry.hpp>
#include <hypergiant/graph.hpp>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace hypergiant {

/// Vertex positions of one disk-model instance. The list order is the
/// vertex labelling.
struct VertexSet {
    KpkvbParams params;
    std::vector<PolarPoint> points;
    std::uint64_t seed = 0;
    bool poissonized = false;
};

/// The pair of uniforms behind one vertex: the radial quantile and the angle.
struct UniformDraw {
    double u = 0.0;
    double theta = 0.0;
};

/// First `count` draws of the i.i.d. vertex stream for `seed`. Every sampler
/// below reads the same stream, so G uses X_1..X_N and G_Po uses X_1..X_Z.
std::vector<UniformDraw> draw_uniforms(std::uint64_t seed, std::size_t count);

/// Z ~ Poisson(N) for the Poissonized model, from its own stream.
std::int64_t poisson_vertex_count(std::int64_t n, std::uint64_t seed);

/// Maps shared uniforms to radii through the quantile function of `params`.
/// Reusing the same draws across parameter sets gives the quantile coupling.
VertexSet vertices_from_uniforms(const KpkvbParams& params, std::span<const UniformDraw> draws,
                                 std::uint64_t seed = 0);

VertexSet sample_vertices(const KpkvbParams& params, std::uint64_t seed);
VertexSet sample_vertices_poissonized(const KpkvbParams& params, std::uint64_t seed);

/// Exact disk adjacency (d <= R) with an angular-band index.
///
/// Vertices are bucketed into radial bands of height ln 2 in y = R - r and
/// sorted by angle inside each band. For a vertex p and band b, every
/// possible neighbor lies within threshold_angle(r_p, min r in b) of p, since
/// the threshold decreases in the second radius; that window is cut out by
/// binary search and each candidate is tested with disk_adjacent.
Graph build_graph(const VertexSet& vertices);

class EstimationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Hurwitz zeta function sum_{k>=0} (q + k)^{-s} for s > 1, q > 0.
double hurwitz_zeta(double s, double q);

/// Discrete power-law maximum-likelihood exponent over values >= xmin.
/// Throws EstimationError when fewer than `min_tail` values reach xmin.
double tail_exponent_mle(std::span<const std::size_t> values, std::size_t xmin, std::size_t min_tail = 100);

inline constexpr std::size_t kDefaultTailXmin = 10;

double degree_tail_exponent(const Graph& graph, std::size_t xmin = kDefaultTailXmin);

/// 2 alpha^2 nu / (pi (alpha - 1/2)^2): the limiting mean degree for alpha > 1/2.
double limiting_mean_degree(double alpha, double nu);

}  // namespace hypergiant
