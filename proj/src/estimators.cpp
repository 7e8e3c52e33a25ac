#include <hypergiant/estimators.hpp>
#include <hypergiant/events.hpp>
#include <hypergiant/graph.hpp>
#include <hypergiant/kpkvb.hpp>
#include <hypergiant/parallel.hpp>
#include <hypergiant/point_source.hpp>
#include <hypergiant/rng.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hypergiant {

namespace {

constexpr std::uint64_t kThetaStream = 11;
constexpr std::uint64_t kBracketStream = 12;
constexpr std::uint64_t kLlnStream = 13;

std::size_t count_true(const std::vector<char>& v) {
    return static_cast<std::size_t>(std::count(v.begin(), v.end(), 1));
}

std::pair<double, double> envelope_of(const ContinuumParams& params, const ThetaConfig& config) {
    if (!config.envelope) return {params.alpha, params.lambda};
    const auto env = *config.envelope;
    if (params.alpha < env.first || params.lambda > env.second)
        throw std::domain_error("estimate_theta: parameters outside the layered envelope");
    return env;
}

// Height of the containment event: its box [-e^{h_U}, e^{h_U}] x [0, h_U]
// covers the box of T, so T and U never hold together.
double u_height(double h, double w) { return std::max(2.0 * h, h + std::log(std::max(w, 1.0))); }

Window theta_window(double h, double w) {
    const double hu = u_height(h, w);
    return Window(std::exp(hu), hu);
}

std::vector<char> t_indicators(double y, const ContinuumParams& params, const ThetaConfig& config, double w,
                               std::uint64_t seed) {
    const auto env = envelope_of(params, config);
    const Window window = theta_window(config.h, w);
    std::vector<char> t(config.replicas, 0);
    parallel_for(config.replicas, [&](std::size_t r) {
        const LazyPoissonField field(window, env.first, env.second, derive_seed(seed, {kThetaStream, r}));
        const FieldSlice slice(field, params.alpha, params.lambda);
        t[r] = event_T(y, config.h, w, slice) ? 1 : 0;
    });
    return t;
}

}  // namespace

Proportion wilson(std::size_t successes, std::size_t trials, double z) {
    if (trials == 0) throw std::domain_error("wilson: no trials");
    if (successes > trials) throw std::domain_error("wilson: more successes than trials");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {successes, trials, p, std::max(0.0, center - half), std::min(1.0, center + half)};
}

ThetaEstimate estimate_theta(double y, const ContinuumParams& params, const ThetaConfig& config, std::uint64_t seed,
                             ThetaIndicators* indicators) {
    ThetaEstimate est;
    est.y = y;
    est.params = params;
    est.h = config.h;
    est.n = config.n;
    if (params.alpha <= 0.5) {
        est.lower = est.upper = 1.0;
        est.exact = true;
        return est;
    }
    if (config.replicas < kMinReplicas)
        throw std::domain_error("estimate_theta: at least " + std::to_string(kMinReplicas) + " replicas required");
    if (!(config.h >= config.n && config.n >= y && y >= 0.0))
        throw std::domain_error("estimate_theta: requires h >= n >= y >= 0");
    const double w = config.w > 0.0 ? config.w : calibrate_w(y, params, config, seed);
    est.w = w;
    est.u_height = u_height(config.h, w);
    const auto env = envelope_of(params, config);
    const Window window = theta_window(config.h, w);

    std::vector<char> t(config.replicas, 0);
    std::vector<char> u(config.replicas, 0);
    parallel_for(config.replicas, [&](std::size_t r) {
        const LazyPoissonField field(window, env.first, env.second, derive_seed(seed, {kThetaStream, r}));
        const FieldSlice slice(field, params.alpha, params.lambda);
        t[r] = event_T(y, config.h, w, slice) ? 1 : 0;
        u[r] = event_U(y, config.n, est.u_height, slice) ? 1 : 0;
    });
    est.replicas = config.replicas;
    est.t_rate = wilson(count_true(t), config.replicas);
    est.u_rate = wilson(count_true(u), config.replicas);
    est.lower = est.t_rate.p_hat;
    est.upper = 1.0 - est.u_rate.p_hat;
    est.ci_half_width = std::max(est.t_rate.half_width(), est.u_rate.half_width());
    if (indicators) {
        indicators->t = std::move(t);
        indicators->u = std::move(u);
    }
    return est;
}

double calibrate_w(double y, const ContinuumParams& params, const ThetaConfig& config, std::uint64_t seed) {
    if (config.replicas < kMinReplicas)
        throw std::domain_error("calibrate_w: at least " + std::to_string(kMinReplicas) + " replicas required");
    double w = 1.0;
    auto prev = wilson(count_true(t_indicators(y, params, config, w, seed)), config.replicas);
    while (w < 64.0) {
        const auto next = wilson(count_true(t_indicators(y, params, config, 2.0 * w, seed)), config.replicas);
        if (std::abs(next.p_hat - prev.p_hat) < next.half_width()) return w;
        w *= 2.0;
        prev = next;
    }
    return w;
}

CEstimate c_of(double alpha, double nu, const CConfig& config, std::uint64_t seed) {
    if (!(alpha > 0.0) || !(nu > 0.0)) throw std::domain_error("c_of: alpha and nu must be positive");
    if (!(config.error_budget > 0.0 && config.error_budget < 2.0))
        throw std::domain_error("c_of: error budget must lie in (0, 2)");
    CEstimate est;
    est.alpha = alpha;
    est.nu = nu;
    est.error_budget = config.error_budget;
    if (alpha > 1.0 || alpha <= 0.5) {
        est.value = alpha > 1.0 ? 0.0 : 1.0;
        est.exact = true;
        return est;
    }
    if (config.nodes < 2) throw std::domain_error("c_of: need at least two quadrature nodes");
    const ContinuumParams params(alpha, nu * alpha / kPi);
    est.tail_cutoff = std::log(2.0 / config.error_budget) / alpha;

    const double step = est.tail_cutoff / static_cast<double>(config.nodes - 1);
    double value = 0.0;
    double spread = 0.0;
    for (std::size_t k = 0; k < config.nodes; ++k) {
        const double y = step * static_cast<double>(k);
        const auto theta = estimate_theta(y, params, config.theta, seed);
        const double weight = (k == 0 || k + 1 == config.nodes ? 0.5 : 1.0) * step * alpha * std::exp(-alpha * y);
        value += weight * theta.midpoint();
        spread += weight * (0.5 * std::max(0.0, theta.upper - theta.lower) + theta.ci_half_width);
        est.grid.emplace_back(y, theta.midpoint());
    }
    est.value = std::clamp(value, 0.0, 1.0);
    est.uncertainty = std::exp(-alpha * est.tail_cutoff) + spread;
    return est;
}

double LambdaBracket::nu_mid() const { return kPi * mid(); }

LambdaBracket bracket_lambda_c(const BracketConfig& config, std::uint64_t seed) {
    if (!(config.tol > 0.0)) throw std::domain_error("bracket_lambda_c: tol must be positive");
    if (!(config.w >= 1.0) || !(config.h > 0.0)) throw std::domain_error("bracket_lambda_c: requires w >= 1, h > 0");
    if (config.replicas < kMinReplicas)
        throw std::domain_error("bracket_lambda_c: at least " + std::to_string(kMinReplicas) + " replicas required");
    if (!(config.initial_lo > 0.0 && config.initial_lo < config.initial_hi))
        throw std::domain_error("bracket_lambda_c: initial interval must satisfy 0 < lo < hi");

    constexpr double kLevelCap = 1024.0;
    const Window window(config.w * std::exp(config.h), config.h);
    const std::size_t n = config.replicas;
    std::vector<double> levels(n);
    parallel_for(n, [&](std::size_t r) {
        LayeredSample sample(window, 1.0, kLevelCap, derive_seed(seed, {kBracketStream, r}));
        levels[r] = crossing_level(sample, config.w, config.h, kLevelCap);
    });

    LambdaBracket out;
    out.h_used = config.h;
    out.w_used = config.w;
    out.replicas = n;
    auto prob = [&](double lambda) {
        std::size_t hits = 0;
        for (double l : levels) hits += l < lambda ? 1 : 0;
        const double p = static_cast<double>(hits) / static_cast<double>(n);
        out.crossing_probs.emplace_back(lambda, p);
        return p;
    };

    double lo = config.initial_lo;
    double hi = config.initial_hi;
    while (prob(lo) > 0.5) {
        out.warnings.push_back("crossing probability at lambda=" + std::to_string(lo) + " exceeds 1/2; halving lo");
        lo *= 0.5;
        if (lo < 1e-6) throw std::runtime_error("bracket_lambda_c: no lower end found");
    }
    while (prob(hi) <= 0.5) {
        out.warnings.push_back("crossing probability at lambda=" + std::to_string(hi) + " is at most 1/2; doubling hi");
        hi *= 2.0;
        if (hi > kLevelCap) throw std::runtime_error("bracket_lambda_c: no upper end found");
    }
    // Invariant: P(lo) <= 1/2 < P(hi).
    while (hi - lo > config.tol) {
        const double mid = 0.5 * (lo + hi);
        if (prob(mid) > 0.5)
            hi = mid;
        else
            lo = mid;
    }
    out.lo = lo;
    out.hi = hi;

    // Direct check of every replica at both ends on the materialized slices.
    std::vector<char> bad(n, 0);
    parallel_for(n, [&](std::size_t r) {
        LayeredSample sample(window, 1.0, kLevelCap, derive_seed(seed, {kBracketStream, r}));
        const bool at_lo = event_C(config.w, config.h, sample.slice(1.0, lo));
        const bool at_hi = event_C(config.w, config.h, sample.slice(1.0, hi));
        const bool consistent = at_lo == (levels[r] < lo) && at_hi == (levels[r] < hi) && (!at_lo || at_hi);
        bad[r] = consistent ? 0 : 1;
    });
    const auto violations = count_true(bad);
    if (violations > 0) {
        throw std::logic_error("bracket_lambda_c: " + std::to_string(violations) +
                               " replicas with non-monotone or inconsistent crossing indicators");
    }
    return out;
}

std::pair<double, double> mean_sd(const std::vector<double>& values) {
    if (values.empty()) return {0.0, 0.0};
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0))};
}

std::vector<LlnRow> lln_experiment(double alpha, double nu, const std::vector<std::int64_t>& n_list,
                                   std::size_t replicas, std::uint64_t seed) {
    if (n_list.empty()) throw std::domain_error("lln_experiment: empty N list");
    for (std::size_t k = 1; k < n_list.size(); ++k) {
        if (n_list[k] <= n_list[k - 1]) throw std::domain_error("lln_experiment: N list must be increasing");
    }
    if (replicas == 0) throw std::domain_error("lln_experiment: need at least one replica");
    std::vector<LlnRow> rows;
    for (std::size_t k = 0; k < n_list.size(); ++k) {
        const KpkvbParams params(n_list[k], alpha, nu);
        const double n = static_cast<double>(params.n());
        std::vector<double> g1(replicas), g2(replicas), p1(replicas), p2(replicas);
        parallel_for(replicas, [&](std::size_t r) {
            const auto s = derive_seed(seed, {kLlnStream, k, r});
            const auto g = components(build_graph(sample_vertices(params, s)));
            const auto po = components(build_graph(sample_vertices_poissonized(params, s)));
            g1[r] = static_cast<double>(g.largest()) / n;
            g2[r] = static_cast<double>(g.second()) / n;
            p1[r] = static_cast<double>(po.largest()) / n;
            p2[r] = static_cast<double>(po.second()) / n;
        });
        LlnRow row;
        row.n = params.n();
        row.replicas = replicas;
        std::tie(row.g_c1_mean, row.g_c1_sd) = mean_sd(g1);
        std::tie(row.g_c2_mean, row.g_c2_sd) = mean_sd(g2);
        std::tie(row.po_c1_mean, row.po_c1_sd) = mean_sd(p1);
        std::tie(row.po_c2_mean, row.po_c2_sd) = mean_sd(p2);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace hypergiant
