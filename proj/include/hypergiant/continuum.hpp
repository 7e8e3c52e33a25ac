#pragma once

#include <hypergiant/geometry.hpp>
#include <hypergiant/graph.hpp>

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace hypergiant {

/// Intensity lambda e^{-alpha y} on the upper half-plane.
struct ContinuumParams {
    double alpha;
    double lambda;

    /// Throws std::domain_error unless both are positive and finite.
    ContinuumParams(double alpha, double lambda);

    double intensity(double y) const;
};

/// Truncation [-half_width, half_width] x [0, height] of the half-plane.
struct Window {
    double half_width;
    double height;

    Window(double half_width, double height);

    bool contains(double half_width_needed, double height_needed) const {
        return half_width >= half_width_needed && height >= height_needed;
    }
};

/// Closed axis-aligned rectangle.
struct Rect {
    double x_lo = 0.0;
    double x_hi = 0.0;
    double y_lo = 0.0;
    double y_hi = 0.0;

    bool contains(const HalfPlanePoint& p) const {
        return p.x >= x_lo && p.x <= x_hi && p.y >= y_lo && p.y <= y_hi;
    }
};

/// Expected number of points of P_{alpha,lambda} in `rect` (y clipped at 0).
double intensity_mass(const ContinuumParams& params, const Rect& rect);

struct ContinuumSample {
    std::vector<HalfPlanePoint> points;
    ContinuumParams params;
    Window window;
    std::uint64_t seed = 0;
};

/// mu = 2 W lambda (1 - e^{-alpha H}) / alpha.
double expected_count(const ContinuumParams& params, const Window& window);

/// Inhomogeneous Poisson sample on the window: Poisson(mu) points, x uniform,
/// y from the truncated exponential law alpha e^{-alpha y} / (1 - e^{-alpha H}).
ContinuumSample sample_continuum(const ContinuumParams& params, const Window& window, std::uint64_t seed);

/// Edge rule of Gamma(P): |x_i - x_j| < e^{(y_i + y_j) / 2}.
inline bool gamma_adjacent(const HalfPlanePoint& p, const HalfPlanePoint& q) {
    return std::abs(p.x - q.x) < std::exp(0.5 * (p.y + q.y));
}

/// Wrap-around distance on a circle of the given circumference.
double wrap_distance(double x1, double x2, double circumference);

/// Edge rule of the torus graph: |x_i - x_j|_c <= e^{(y_i + y_j) / 2}.
inline bool torus_adjacent(const HalfPlanePoint& p, const HalfPlanePoint& q, double circumference) {
    return wrap_distance(p.x, q.x, circumference) <= std::exp(0.5 * (p.y + q.y));
}

/// Exact Gamma(P). Points are split into rows of height ln 2 and sorted by x;
/// a point only scans |dx| < e^{(y + top of row)/2} in each row.
Graph gamma_graph(std::span<const HalfPlanePoint> points);
Graph gamma_graph(const ContinuumSample& sample);

/// Exact torus graph. Throws std::domain_error if some |x| > circumference / 2.
Graph gamma_graph_torus(std::span<const HalfPlanePoint> points, double circumference);
Graph gamma_graph_torus(const ContinuumSample& sample, double circumference);

/// A point of the auxiliary three-dimensional process behind the layered
/// coupling. The point belongs to the (alpha, lambda) slice iff
/// z < lambda e^{-alpha y}.
struct LayeredPoint {
    double x;
    double y;
    double z;

    bool in_slice(double alpha, double lambda) const { return z < lambda * std::exp(-alpha * y); }
    /// Smallest lambda at which the point joins the slice for this alpha.
    double activation(double alpha) const { return z * std::exp(alpha * y); }
};

/// Unit-intensity Poisson process Q on window x (0, z_cap), restricted to
/// the envelope z < z_cap e^{-alpha_min y}, which contains every slice with
/// alpha >= alpha_min and lambda <= z_cap.
///
/// Points are generated in chunks of s = z e^{alpha_min y}, each chunk from
/// its own seed stream, so a slice at lambda only needs chunks below lambda
/// and two LayeredSamples with the same seed agree on every common chunk.
class LayeredSample {
public:
    LayeredSample(Window window, double alpha_min, double z_cap, std::uint64_t seed, double chunk_width = 0.25);

    const Window& window() const { return window_; }
    double alpha_min() const { return alpha_min_; }
    double z_cap() const { return z_cap_; }
    std::uint64_t seed() const { return seed_; }

    /// Generates chunks until every point with s < s_max is present.
    void extend_to(double s_max);
    /// Largest s covered so far.
    double covered() const { return covered_; }
    /// Chunk width in s units.
    double chunk_width() const { return chunk_width_; }

    /// Points generated so far, chunk by chunk, each chunk sorted by s.
    const std::vector<LayeredPoint>& points() const { return points_; }

    /// Indices (into points()) of the (alpha, lambda) slice, ascending.
    /// Throws std::domain_error if alpha < alpha_min or lambda > z_cap.
    std::vector<std::size_t> slice_indices(double alpha, double lambda);
    ContinuumSample slice(double alpha, double lambda);

private:
    Window window_;
    double alpha_min_;
    double z_cap_;
    std::uint64_t seed_;
    double chunk_width_;
    std::size_t chunks_ = 0;
    double covered_ = 0.0;
    std::vector<LayeredPoint> points_;
};

struct LayeredSlices {
    std::vector<double> alphas;
    std::vector<double> lambdas;
    /// slices[a][l] is the (alphas[a], lambdas[l]) slice.
    std::vector<std::vector<ContinuumSample>> slices;
    std::vector<std::vector<std::vector<std::size_t>>> indices;
};

/// One shared Q, sliced at every requested (alpha, lambda) pair. Slices are
/// nested exactly: P_{a,l} is a subset of P_{a',l'} when a >= a' and l <= l'.
/// Throws std::domain_error when z_cap is below the largest lambda.
LayeredSlices sample_layered(std::span<const double> alphas, std::span<const double> lambdas, const Window& window,
                             double z_cap, std::uint64_t seed);

/// Dyadic box R_{i,j} = (i ln2, (i+1) ln2] x (j 2^{i-1}, (j+1) 2^{i-1}].
struct BoxIndex {
    int i = 0;
    std::int64_t j = 0;

    friend bool operator==(const BoxIndex&, const BoxIndex&) = default;
};

/// Row of the dissection containing height y; y = 0 belongs to row 0.
int box_row(double y);

BoxIndex box_index(const HalfPlanePoint& p);

/// Bounds of R_{i,j} as a closed rectangle (the box itself is half-open).
Rect box_rect(const BoxIndex& box);

/// E|R_{i,j} n P| = (lambda / alpha) 2^{i-1} (2^{-alpha i} - 2^{-alpha (i+1)}).
double expected_box_count(const ContinuumParams& params, int i);

/// The same quantity in the form (lambda / 2 alpha)(1 - 2^{-alpha}) 2^{i(1-alpha)}.
double expected_box_count_closed(const ContinuumParams& params, int i);

/// Expected degree of a planted point (0, y): 2 lambda e^{y/2} / (alpha - 1/2).
/// Throws std::domain_error for alpha <= 1/2, where it is infinite.
double expected_planted_degree(const ContinuumParams& params, double y);

/// Same integral truncated to heights [0, H].
double expected_planted_degree(const ContinuumParams& params, double y, double height);

/// Mean 2 ln(4 lambda) + 2 gamma of the Gumbel law dominating the height
/// increments of the rightmost exploration at alpha = 1.
double gumbel_increment_mean(double lambda);

/// CDF exp(-4 lambda e^{-x/2}) of that Gumbel law.
double gumbel_increment_cdf(double lambda, double x);

/// Poisson moment check of the Mecke formula for j = 1 and j = 2 on a
/// rectangle A inside the window.
struct MeckeReport {
    double mu = 0.0;              // intensity mass of A
    double mean_count = 0.0;      // empirical E|P n A|
    double count_sigma = 0.0;     // standard error of mean_count under Poisson(mu)
    double mean_pairs = 0.0;      // empirical E #ordered pairs in A
    double expected_pairs = 0.0;  // mu^2
    double pair_sigma = 0.0;      // standard error of mean_pairs
    std::size_t replicas = 0;
    bool pass = false;            // both within 4 sigma
};

MeckeReport mecke_check(const ContinuumParams& params, const Window& window, const Rect& region,
                        std::size_t replicas, std::uint64_t seed);

}  // namespace hypergiant
