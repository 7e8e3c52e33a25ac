#include <hypergiant/continuum.hpp>
#include <hypergiant/rng.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hypergiant {

namespace {

struct RowEntry {
    double x;
    double y;
    VertexId id;
};

struct Row {
    std::vector<RowEntry> entries;  // sorted by x
    double max_y = 0.0;
};

std::vector<Row> build_rows(std::span<const HalfPlanePoint> points) {
    int rows = 0;
    for (const auto& p : points) rows = std::max(rows, box_row(p.y) + 1);
    std::vector<Row> out(static_cast<std::size_t>(rows));
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto& row = out[static_cast<std::size_t>(box_row(points[i].y))];
        row.entries.push_back({points[i].x, points[i].y, static_cast<VertexId>(i)});
        row.max_y = std::max(row.max_y, points[i].y);
    }
    for (auto& row : out) {
        std::sort(row.entries.begin(), row.entries.end(),
                  [](const RowEntry& a, const RowEntry& b) { return a.x < b.x; });
    }
    return out;
}

template <typename Fn>
void for_each_in_range(const Row& row, double lo, double hi, Fn&& fn) {
    auto it = std::lower_bound(row.entries.begin(), row.entries.end(), lo,
                               [](const RowEntry& e, double v) { return e.x < v; });
    for (; it != row.entries.end() && it->x <= hi; ++it) fn(*it);
}

void check_points(std::span<const HalfPlanePoint> points) {
    if (points.size() > std::numeric_limits<VertexId>::max())
        throw std::length_error("too many points for 32-bit vertex ids");
    for (const auto& p : points) {
        if (!(p.y >= 0.0) || !std::isfinite(p.x) || !std::isfinite(p.y))
            throw std::domain_error("point outside the closed upper half-plane");
    }
}

double truncated_exponential(Rng& rng, double alpha, double lo, double hi) {
    // Inverse CDF of alpha e^{-alpha y} restricted to [lo, hi).
    const double u = rng.uniform01();
    return lo - std::log1p(u * std::expm1(-alpha * (hi - lo))) / alpha;
}

}  // namespace

ContinuumParams::ContinuumParams(double alpha_, double lambda_) : alpha(alpha_), lambda(lambda_) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::domain_error("continuum: alpha must be positive");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::domain_error("continuum: lambda must be positive");
}

double ContinuumParams::intensity(double y) const { return lambda * std::exp(-alpha * y); }

Window::Window(double half_width_, double height_) : half_width(half_width_), height(height_) {
    if (!(half_width > 0.0) || !std::isfinite(half_width))
        throw std::domain_error("window: half width must be positive");
    if (!(height > 0.0) || !std::isfinite(height)) throw std::domain_error("window: height must be positive");
}

double intensity_mass(const ContinuumParams& params, const Rect& rect) {
    const double y0 = std::max(0.0, rect.y_lo);
    const double y1 = std::max(y0, rect.y_hi);
    const double width = std::max(0.0, rect.x_hi - rect.x_lo);
    return params.lambda * width * std::exp(-params.alpha * y0) * -std::expm1(-params.alpha * (y1 - y0)) /
           params.alpha;
}

double expected_count(const ContinuumParams& params, const Window& window) {
    return intensity_mass(params, {-window.half_width, window.half_width, 0.0, window.height});
}

ContinuumSample sample_continuum(const ContinuumParams& params, const Window& window, std::uint64_t seed) {
    Rng rng(derive_seed(seed, {3}));
    const double mu = expected_count(params, window);
    const auto count = rng.poisson(mu);
    ContinuumSample sample{{}, params, window, seed};
    sample.points.reserve(static_cast<std::size_t>(count));
    for (std::int64_t k = 0; k < count; ++k) {
        const double x = rng.uniform(-window.half_width, window.half_width);
        const double y = truncated_exponential(rng, params.alpha, 0.0, window.height);
        sample.points.push_back({x, y});
    }
    return sample;
}

double wrap_distance(double x1, double x2, double circumference) {
    const double d = std::fmod(std::abs(x1 - x2), circumference);
    return std::min(d, circumference - d);
}

Graph gamma_graph(std::span<const HalfPlanePoint> points) {
    check_points(points);
    const auto rows = build_rows(points);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        for (const auto& row : rows) {
            if (row.entries.empty()) continue;
            const double reach = std::exp(0.5 * (p.y + row.max_y));
            for_each_in_range(row, p.x - reach, p.x + reach, [&](const RowEntry& e) {
                if (e.id > i && gamma_adjacent(p, {e.x, e.y})) edges.emplace_back(static_cast<VertexId>(i), e.id);
            });
        }
    }
    return Graph(points.size(), std::move(edges));
}

Graph gamma_graph(const ContinuumSample& sample) { return gamma_graph(sample.points); }

Graph gamma_graph_torus(std::span<const HalfPlanePoint> points, double circumference) {
    if (!(circumference > 0.0)) throw std::domain_error("torus: circumference must be positive");
    check_points(points);
    const double half = 0.5 * circumference;
    for (const auto& p : points) {
        if (std::abs(p.x) > half * (1.0 + 1e-12)) throw std::domain_error("torus: point outside [-c/2, c/2]");
    }
    const auto rows = build_rows(points);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        auto consider = [&](const RowEntry& e) {
            if (e.id > i && torus_adjacent(p, {e.x, e.y}, circumference))
                edges.emplace_back(static_cast<VertexId>(i), e.id);
        };
        for (const auto& row : rows) {
            if (row.entries.empty()) continue;
            const double reach = std::exp(0.5 * (p.y + row.max_y));
            if (reach >= half) {
                for (const auto& e : row.entries) consider(e);
                continue;
            }
            const double lo = p.x - reach;
            const double hi = p.x + reach;
            for_each_in_range(row, std::max(lo, -half), std::min(hi, half), consider);
            if (lo < -half) for_each_in_range(row, lo + circumference, half, consider);
            if (hi > half) for_each_in_range(row, -half, hi - circumference, consider);
        }
    }
    return Graph(points.size(), std::move(edges));
}

Graph gamma_graph_torus(const ContinuumSample& sample, double circumference) {
    return gamma_graph_torus(sample.points, circumference);
}

LayeredSample::LayeredSample(Window window, double alpha_min, double z_cap, std::uint64_t seed, double chunk_width)
    : window_(window), alpha_min_(alpha_min), z_cap_(z_cap), seed_(seed), chunk_width_(chunk_width) {
    if (!(alpha_min > 0.0)) throw std::domain_error("layered sample: alpha_min must be positive");
    if (!(z_cap > 0.0) || !std::isfinite(z_cap)) throw std::domain_error("layered sample: z_cap must be positive");
    if (!(chunk_width > 0.0)) throw std::domain_error("layered sample: chunk width must be positive");
}

void LayeredSample::extend_to(double s_max) {
    s_max = std::min(s_max, z_cap_);
    // Points per unit of s under the envelope measure e^{-alpha_min y} dx dy.
    const double per_unit = 2.0 * window_.half_width * -std::expm1(-alpha_min_ * window_.height) / alpha_min_;
    while (covered_ < s_max) {
        const double lo = static_cast<double>(chunks_) * chunk_width_;
        const double hi = std::min(lo + chunk_width_, z_cap_);
        Rng rng(derive_seed(seed_, {4, chunks_}));
        const auto count = rng.poisson(per_unit * (hi - lo));
        std::vector<std::pair<double, LayeredPoint>> chunk;
        chunk.reserve(static_cast<std::size_t>(count));
        for (std::int64_t k = 0; k < count; ++k) {
            const double x = rng.uniform(-window_.half_width, window_.half_width);
            const double y = truncated_exponential(rng, alpha_min_, 0.0, window_.height);
            const double s = rng.uniform(lo, hi);
            chunk.push_back({s, {x, y, s * std::exp(-alpha_min_ * y)}});
        }
        std::sort(chunk.begin(), chunk.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& c : chunk) points_.push_back(c.second);
        ++chunks_;
        covered_ = hi;
    }
}

std::vector<std::size_t> LayeredSample::slice_indices(double alpha, double lambda) {
    if (alpha < alpha_min_)
        throw std::domain_error("layered slice: alpha " + std::to_string(alpha) + " below alpha_min");
    if (lambda > z_cap_) throw std::domain_error("layered slice: lambda " + std::to_string(lambda) + " above z_cap");
    if (!(lambda > 0.0)) throw std::domain_error("layered slice: lambda must be positive");
    extend_to(lambda);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (points_[i].in_slice(alpha, lambda)) out.push_back(i);
    }
    return out;
}

ContinuumSample LayeredSample::slice(double alpha, double lambda) {
    const auto idx = slice_indices(alpha, lambda);
    ContinuumSample sample{{}, ContinuumParams(alpha, lambda), window_, seed_};
    sample.points.reserve(idx.size());
    for (auto i : idx) sample.points.push_back({points_[i].x, points_[i].y});
    return sample;
}

LayeredSlices sample_layered(std::span<const double> alphas, std::span<const double> lambdas, const Window& window,
                             double z_cap, std::uint64_t seed) {
    if (alphas.empty() || lambdas.empty()) throw std::domain_error("sample_layered: empty parameter grid");
    const double alpha_min = *std::min_element(alphas.begin(), alphas.end());
    const double lambda_max = *std::max_element(lambdas.begin(), lambdas.end());
    if (z_cap < lambda_max) throw std::domain_error("sample_layered: z_cap is below the largest lambda");
    LayeredSample base(window, alpha_min, z_cap, seed);
    base.extend_to(lambda_max);
    LayeredSlices out;
    out.alphas.assign(alphas.begin(), alphas.end());
    out.lambdas.assign(lambdas.begin(), lambdas.end());
    for (double a : alphas) {
        auto& row = out.slices.emplace_back();
        auto& idx_row = out.indices.emplace_back();
        for (double l : lambdas) {
            row.push_back(base.slice(a, l));
            idx_row.push_back(base.slice_indices(a, l));
        }
    }
    return out;
}

int box_row(double y) {
    if (!(y >= 0.0)) throw std::domain_error("box_row: y must be non-negative");
    if (y <= kLn2) return 0;
    int i = static_cast<int>(std::ceil(y / kLn2)) - 1;
    while (i > 0 && y <= i * kLn2) --i;
    while (y > (i + 1) * kLn2) ++i;
    return i;
}

BoxIndex box_index(const HalfPlanePoint& p) {
    const int i = box_row(p.y);
    const double w = std::ldexp(1.0, i - 1);
    auto j = static_cast<std::int64_t>(std::ceil(p.x / w)) - 1;
    while (p.x <= static_cast<double>(j) * w) --j;
    while (p.x > static_cast<double>(j + 1) * w) ++j;
    return {i, j};
}

Rect box_rect(const BoxIndex& box) {
    const double w = std::ldexp(1.0, box.i - 1);
    return {static_cast<double>(box.j) * w, static_cast<double>(box.j + 1) * w, box.i * kLn2, (box.i + 1) * kLn2};
}

double expected_box_count(const ContinuumParams& params, int i) {
    if (i < 0) throw std::domain_error("expected_box_count: negative row");
    const double a = params.alpha;
    return params.lambda / a * std::ldexp(1.0, i - 1) * (std::exp2(-a * i) - std::exp2(-a * (i + 1)));
}

double expected_box_count_closed(const ContinuumParams& params, int i) {
    if (i < 0) throw std::domain_error("expected_box_count: negative row");
    const double a = params.alpha;
    return params.lambda / (2.0 * a) * (1.0 - std::exp2(-a)) * std::exp2(i * (1.0 - a));
}

double expected_planted_degree(const ContinuumParams& params, double y) {
    if (!(params.alpha > 0.5)) throw std::domain_error("expected_planted_degree: infinite for alpha <= 1/2");
    return 2.0 * params.lambda * std::exp(0.5 * y) / (params.alpha - 0.5);
}

double expected_planted_degree(const ContinuumParams& params, double y, double height) {
    const double b = params.alpha - 0.5;
    if (b == 0.0) return 2.0 * params.lambda * std::exp(0.5 * y) * height;
    return 2.0 * params.lambda * std::exp(0.5 * y) * -std::expm1(-b * height) / b;
}

double gumbel_increment_mean(double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("gumbel_increment_mean: lambda must be positive");
    return 2.0 * std::log(4.0 * lambda) + 2.0 * kEulerGamma;
}

double gumbel_increment_cdf(double lambda, double x) {
    if (!(lambda > 0.0)) throw std::domain_error("gumbel_increment_cdf: lambda must be positive");
    return std::exp(-4.0 * lambda * std::exp(-0.5 * x));
}

MeckeReport mecke_check(const ContinuumParams& params, const Window& window, const Rect& region,
                        std::size_t replicas, std::uint64_t seed) {
    if (replicas == 0) throw std::domain_error("mecke_check: need at least one replica");
    if (region.x_lo < -window.half_width || region.x_hi > window.half_width || region.y_lo < 0.0 ||
        region.y_hi > window.height) {
        throw std::domain_error("mecke_check: region must lie inside the window");
    }
    MeckeReport report;
    report.replicas = replicas;
    report.mu = intensity_mass(params, region);
    double count_sum = 0.0;
    double pair_sum = 0.0;
    for (std::size_t r = 0; r < replicas; ++r) {
        const auto sample = sample_continuum(params, window, derive_seed(seed, {r}));
        double k = 0.0;
        for (const auto& p : sample.points) k += region.contains(p) ? 1.0 : 0.0;
        count_sum += k;
        pair_sum += k * (k - 1.0);
    }
    const double n = static_cast<double>(replicas);
    const double mu = report.mu;
    report.mean_count = count_sum / n;
    report.count_sigma = std::sqrt(mu / n);
    report.mean_pairs = pair_sum / n;
    report.expected_pairs = mu * mu;
    // Var K(K-1) = 4 mu^3 + 2 mu^2 for K ~ Poisson(mu).
    report.pair_sigma = std::sqrt((4.0 * mu * mu * mu + 2.0 * mu * mu) / n);
    report.pass = std::abs(report.mean_count - mu) <= 4.0 * report.count_sigma &&
                  std::abs(report.mean_pairs - report.expected_pairs) <= 4.0 * report.pair_sigma;
    return report;
}

}  // namespace hypergiant
