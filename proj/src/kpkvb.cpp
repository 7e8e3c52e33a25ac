#include <hypergiant/kpkvb.hpp>
#include <hypergiant/rng.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

namespace hypergiant {

namespace {

constexpr std::uint64_t kPointStream = 1;
constexpr std::uint64_t kCountStream = 2;

struct BandEntry {
    double theta;
    double r;
    VertexId id;
};

struct Band {
    std::vector<BandEntry> entries;  // sorted by theta
    double min_r = 0.0;
};

template <typename Fn>
void for_each_in_arc(const Band& band, double lo, double hi, Fn&& fn) {
    auto first = std::lower_bound(band.entries.begin(), band.entries.end(), lo,
                                  [](const BandEntry& e, double t) { return e.theta < t; });
    for (auto it = first; it != band.entries.end() && it->theta <= hi; ++it) fn(*it);
}

}  // namespace

std::vector<UniformDraw> draw_uniforms(std::uint64_t seed, std::size_t count) {
    Rng rng(derive_seed(seed, {kPointStream}));
    std::vector<UniformDraw> draws(count);
    for (auto& d : draws) {
        d.u = rng.uniform01();
        d.theta = kPi - 2.0 * kPi * rng.uniform01();  // (-pi, pi]
    }
    return draws;
}

std::int64_t poisson_vertex_count(std::int64_t n, std::uint64_t seed) {
    Rng rng(derive_seed(seed, {kCountStream}));
    return rng.poisson(static_cast<double>(n));
}

VertexSet vertices_from_uniforms(const KpkvbParams& params, std::span<const UniformDraw> draws,
                                 std::uint64_t seed) {
    VertexSet vs{params, {}, seed, false};
    vs.points.reserve(draws.size());
    for (const auto& d : draws)
        vs.points.push_back({sample_radius(params.alpha(), params.radius(), d.u), d.theta});
    return vs;
}

VertexSet sample_vertices(const KpkvbParams& params, std::uint64_t seed) {
    const auto draws = draw_uniforms(seed, static_cast<std::size_t>(params.n()));
    return vertices_from_uniforms(params, draws, seed);
}

VertexSet sample_vertices_poissonized(const KpkvbParams& params, std::uint64_t seed) {
    const auto z = poisson_vertex_count(params.n(), seed);
    const auto draws = draw_uniforms(seed, static_cast<std::size_t>(z));
    auto vs = vertices_from_uniforms(params, draws, seed);
    vs.poissonized = true;
    return vs;
}

Graph build_graph(const VertexSet& vertices) {
    const double radius = vertices.params.radius();
    const auto& pts = vertices.points;
    const std::size_t band_count = static_cast<std::size_t>(std::floor(radius / kLn2)) + 1;

    std::vector<Band> bands(band_count);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double y = radius - pts[i].r;
        const auto b = std::min(band_count - 1, static_cast<std::size_t>(std::max(0.0, std::floor(y / kLn2))));
        bands[b].entries.push_back({pts[i].theta, pts[i].r, static_cast<VertexId>(i)});
    }
    for (auto& band : bands) {
        std::sort(band.entries.begin(), band.entries.end(),
                  [](const BandEntry& a, const BandEntry& b) { return a.theta < b.theta; });
        band.min_r = radius;
        for (const auto& e : band.entries) band.min_r = std::min(band.min_r, e.r);
    }

    std::vector<Edge> edges;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const PolarPoint& p = pts[i];
        auto consider = [&](const BandEntry& e) {
            if (e.id <= i) return;
            if (disk_adjacent(p, {e.r, e.theta}, radius)) edges.emplace_back(static_cast<VertexId>(i), e.id);
        };
        for (const auto& band : bands) {
            if (band.entries.empty()) continue;
            const double reach = threshold_angle(p.r, band.min_r, radius) * (1.0 + 1e-12) + 1e-15;
            if (reach >= kPi) {
                for (const auto& e : band.entries) consider(e);
                continue;
            }
            const double lo = p.theta - reach;
            const double hi = p.theta + reach;
            for_each_in_arc(band, std::max(lo, -kPi), std::min(hi, kPi), consider);
            if (lo < -kPi) for_each_in_arc(band, lo + 2.0 * kPi, kPi, consider);
            if (hi > kPi) for_each_in_arc(band, -kPi, hi - 2.0 * kPi, consider);
        }
    }
    return Graph(pts.size(), std::move(edges));
}

double hurwitz_zeta(double s, double q) {
    if (!(s > 1.0) || !(q > 0.0)) throw std::domain_error("hurwitz_zeta: requires s > 1, q > 0");
    // Euler-Maclaurin summation with the first M terms taken explicitly.
    constexpr int kDirect = 12;
    static constexpr std::array<double, 6> kBernoulli = {1.0 / 6.0,  -1.0 / 30.0, 1.0 / 42.0,
                                                         -1.0 / 30.0, 5.0 / 66.0,  -691.0 / 2730.0};
    double sum = 0.0;
    for (int k = 0; k < kDirect; ++k) sum += std::pow(q + k, -s);
    const double a = q + kDirect;
    sum += std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
    double rising = s;  // s (s+1) ... (s + 2j - 2)
    double factorial = 2.0;
    double power = std::pow(a, -s - 1.0);
    for (std::size_t j = 0; j < kBernoulli.size(); ++j) {
        sum += kBernoulli[j] / factorial * rising * power;
        const double m = 2.0 * static_cast<double>(j + 1);
        rising *= (s + m - 1.0) * (s + m);
        factorial *= (m + 1.0) * (m + 2.0);
        power /= a * a;
    }
    return sum;
}

double tail_exponent_mle(std::span<const std::size_t> values, std::size_t xmin, std::size_t min_tail) {
    if (xmin < 1) throw std::domain_error("tail_exponent_mle: xmin must be >= 1");
    double log_sum = 0.0;
    std::size_t n = 0;
    for (std::size_t v : values) {
        if (v >= xmin) {
            log_sum += std::log(static_cast<double>(v));
            ++n;
        }
    }
    if (n < min_tail) {
        throw EstimationError("tail_exponent_mle: only " + std::to_string(n) + " values >= xmin (need " +
                              std::to_string(min_tail) + ")");
    }
    const double q = static_cast<double>(xmin);
    const double dn = static_cast<double>(n);
    // The log-likelihood is concave in s, so golden-section search suffices.
    auto loglik = [&](double s) { return -s * log_sum - dn * std::log(hurwitz_zeta(s, q)); };
    double a = 1.0 + 1e-6;
    double b = 30.0;
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    double fc = loglik(c);
    double fd = loglik(d);
    while (b - a > 1e-10) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = loglik(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = loglik(d);
        }
    }
    return 0.5 * (a + b);
}

double degree_tail_exponent(const Graph& graph, std::size_t xmin) {
    const auto deg = graph.degrees();
    return tail_exponent_mle(deg, xmin);
}

double limiting_mean_degree(double alpha, double nu) {
    if (!(alpha > 0.5)) throw std::domain_error("limiting_mean_degree: requires alpha > 1/2");
    const double d = alpha - 0.5;
    return 2.0 * alpha * alpha * nu / (kPi * d * d);
}

}  // namespace hypergiant
