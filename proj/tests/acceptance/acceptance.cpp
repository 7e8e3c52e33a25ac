// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <hypergiant/continuum.hpp>
#include <hypergiant/coupling.hpp>
#include <hypergiant/estimators.hpp>
#include <hypergiant/invariants.hpp>
#include <hypergiant/kpkvb.hpp>
#include <hypergiant/rng.hpp>

#include <oracles/oracles.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace hypergiant;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// 1. Accelerated adjacency equals the quadratic scan.
Outcome oracle_equivalence() {
    Rng rng(101);
    int disk_bad = 0, gamma_bad = 0, torus_bad = 0;
    for (int t = 0; t < 100; ++t) {
        const auto n = static_cast<std::int64_t>(100 + rng.bits() % 1901);
        const auto v = sample_vertices(KpkvbParams(n, rng.uniform(0.55, 1.5), rng.uniform(0.5, 3.0)), 1000 + t);
        if (build_graph(v).edges() != oracle::disk_edges(v.points, v.params.radius())) ++disk_bad;
    }
    for (int t = 0; t < 200; ++t) {
        const ContinuumParams params(rng.uniform(0.55, 1.5), rng.uniform(0.2, 3.0));
        const double height = rng.uniform(2.0, 12.0);
        const double target = rng.uniform(100.0, 1800.0);
        const double half_width = target * params.alpha / (2.0 * params.lambda * -std::expm1(-params.alpha * height));
        auto sample = sample_continuum(params, Window(half_width, height), 2000 + t);
        if (sample.points.size() > 2000) sample.points.resize(2000);
        if (t < 100) {
            if (gamma_graph(sample).edges() != oracle::gamma_edges(sample.points)) ++gamma_bad;
        } else {
            const double c = 2.0 * half_width;
            if (gamma_graph_torus(sample, c).edges() != oracle::torus_edges(sample.points, c)) ++torus_bad;
        }
    }
    return {disk_bad + gamma_bad + torus_bad == 0,
            fmt("mismatches disk=%d/100 gamma=%d/100 torus=%d/100", disk_bad, gamma_bad, torus_bad)};
}

// 2. Crossing and above-segment properties of Gamma.
Outcome cross_properties() {
    const auto triples = check_cross_triples(201, 100000);
    const auto quads = check_cross_quadruples(202, 100000);
    return {triples.passed() && quads.passed() && triples.trials == 100000 && quads.trials == 100000,
            fmt("triples %zu/%zu violations, quadruples %zu/%zu violations", triples.violations, triples.trials,
                quads.violations, quads.trials)};
}

// 3. Dyadic box adjacency containment.
Outcome box_adjacency() {
    const auto res = check_box_adjacency(301, 1000000);
    return {res.passed() && res.trials == 1000000, fmt("%zu violations in %zu pairs", res.violations, res.trials)};
}

// 4. Mean degree against the limit.
Outcome mean_degree() {
    const double limit = limiting_mean_degree(1.0, 2.0);
    const double frozen = 16.0 / kPi;
    const auto g = build_graph(sample_vertices(KpkvbParams(100000, 1.0, 2.0), 401));
    const double mean = g.mean_degree();
    const bool ok = std::abs(limit - frozen) < 1e-12 && std::abs(mean - limit) <= 0.1 * limit;
    return {ok, fmt("mean degree %.4f, limit %.4f, relative error %.4f", mean, limit, std::abs(mean - limit) / limit)};
}

// 5. Degree tail exponent 2 alpha + 1.
Outcome tail_exponent() {
    bool ok = true;
    std::string detail;
    for (double alpha : {0.75, 1.0}) {
        const auto g = build_graph(sample_vertices(KpkvbParams(200000, alpha, 2.0), 501));
        const double est = degree_tail_exponent(g, 10);
        const double target = 2.0 * alpha + 1.0;
        ok = ok && std::abs(est - target) <= 0.3;
        detail += fmt("alpha=%.2f: %.3f vs %.1f; ", alpha, est, target);
    }
    return {ok, detail};
}

std::vector<double> column(const std::vector<LlnRow>& rows, double LlnRow::*field) {
    std::vector<double> out;
    for (const auto& r : rows) out.push_back(r.*field);
    return out;
}

// 6. Above alpha = 1 the largest component fraction vanishes.
Outcome subcritical_lln() {
    const auto rows = lln_experiment(1.5, 5.0, {1000, 10000, 50000}, 20, 601);
    const auto c1 = column(rows, &LlnRow::g_c1_mean);
    const bool ok = c1[0] > c1[1] && c1[1] > c1[2] && c1[2] < 0.2;
    return {ok, fmt("mean c1_frac %.4f > %.4f > %.4f, final < 0.2", c1[0], c1[1], c1[2])};
}

// 7. Below alpha = 1/2 the largest component takes almost everything.
Outcome dense_lln() {
    const auto rows = lln_experiment(0.45, 1.0, {50000}, 10, 701);
    return {rows[0].g_c1_mean >= 0.9, fmt("mean c1_frac %.4f (sd %.4f) over %zu replicas", rows[0].g_c1_mean,
                                          rows[0].g_c1_sd, rows[0].replicas)};
}

// 8. Small lambda at alpha = 1: the containment event bounds theta.
Outcome subcritical_theta() {
    ThetaConfig cfg;
    cfg.h = 60.0;
    cfg.n = 50.0;
    cfg.w = 1.0;
    cfg.replicas = 500;
    const auto e = estimate_theta(0.0, ContinuumParams(1.0, 0.05), cfg, 801);
    return {!e.exact && e.replicas == 500 && e.upper <= 0.1,
            fmt("lower %.4f, upper %.4f (P(U) CI [%.4f, %.4f])", e.lower, e.upper, e.u_rate.ci_lo, e.u_rate.ci_hi)};
}

bool overlap_within(const LambdaBracket& a, const LambdaBracket& b, double tol) {
    return std::max(a.lo, b.lo) <= std::min(a.hi, b.hi) + tol;
}

// 9. Critical intensity bracket at alpha = 1.
Outcome lambda_bracket() {
    const double lower_limit = std::exp(-0.5772156649015329) / 4.0;
    const double q = (15.0 - std::sqrt(225.0 - 28.0)) / 14.0;
    const double upper_limit = -4.0 * std::log(q);
    BracketConfig cfg;
    cfg.w = 2.0;
    cfg.tol = 0.5;
    cfg.replicas = 1001;
    std::vector<LambdaBracket> b;
    for (std::uint64_t seed : {901u, 902u}) {
        for (double h : {4.0, 8.0}) {
            cfg.h = h;
            b.push_back(bracket_lambda_c(cfg, seed));
        }
    }
    bool ok = lower_limit > 0.1 && upper_limit < 11.0;
    std::string detail;
    for (const auto& x : b) {
        ok = ok && x.lo > 0.1 && x.hi < 11.0 && x.hi - x.lo <= cfg.tol && x.warnings.empty();
        detail += fmt("h=%g [%.4f, %.4f] ", x.h_used, x.lo, x.hi);
    }
    const bool doubling = std::abs(b[0].mid() - b[1].mid()) <= cfg.tol && std::abs(b[2].mid() - b[3].mid()) <= cfg.tol;
    const bool seeds = overlap_within(b[0], b[2], cfg.tol) && overlap_within(b[1], b[3], cfg.tol);
    detail += fmt("| limits (%.4f, %.4f), doubling stable %d, seeds agree %d", lower_limit, upper_limit, doubling, seeds);
    return {ok && doubling && seeds, detail};
}

// 10. Monotone coupling of the event indicators and of c(alpha, nu).
Outcome coupled_monotonicity() {
    ThetaConfig cfg;
    cfg.h = 5.0;
    cfg.n = 4.0;
    cfg.w = 2.0;
    cfg.replicas = 1000;
    cfg.envelope = std::pair{0.8, 2.0};
    std::size_t violations = 0;
    std::vector<ThetaIndicators> runs;
    for (double lambda : {0.25, 0.5, 1.0, 2.0}) {
        runs.emplace_back();
        estimate_theta(0.0, ContinuumParams(0.8, lambda), cfg, 1001, &runs.back());
    }
    for (std::size_t k = 1; k < runs.size(); ++k)
        for (std::size_t r = 0; r < cfg.replicas; ++r)
            if (runs[k - 1].t[r] > runs[k].t[r]) ++violations;

    const std::vector<double> alphas{0.6, 0.75, 0.9};
    const std::vector<double> nus{1.0, 2.0, 4.0};
    CConfig cc;
    cc.theta.replicas = 200;
    cc.theta.envelope = std::pair{alphas.front(), nus.back() * alphas.back() / kPi};
    std::vector<std::vector<CEstimate>> grid(alphas.size());
    for (std::size_t a = 0; a < alphas.size(); ++a)
        for (double nu : nus) grid[a].push_back(c_of(alphas[a], nu, cc, 1002));
    std::size_t grid_bad = 0;
    std::string values;
    for (std::size_t a = 0; a < alphas.size(); ++a) {
        for (std::size_t v = 0; v < nus.size(); ++v) {
            const auto& e = grid[a][v];
            values += fmt("%.3f ", e.value);
            if (a + 1 < alphas.size()) {
                const auto& next = grid[a + 1][v];
                if (next.value > e.value + e.uncertainty + next.uncertainty) ++grid_bad;
            }
            if (v + 1 < nus.size()) {
                const auto& next = grid[a][v + 1];
                if (next.value < e.value - e.uncertainty - next.uncertainty) ++grid_bad;
            }
        }
    }
    return {violations == 0 && grid_bad == 0,
            fmt("T indicator violations %zu over %zu coupled replicas; c grid [%s] violations %zu", violations,
                cfg.replicas, values.c_str(), grid_bad)};
}

// 11. Disk graph against torus graph on the same points.
Outcome coupling_fidelity() {
    const auto rep = edge_agreement(sample_vertices_poissonized(KpkvbParams(10000, 0.8, 1.0), 1101));
    const std::vector<std::pair<std::int64_t, std::size_t>> plan{{1000, 3000}, {10000, 300}, {100000, 20}};
    std::vector<double> mean;
    std::vector<double> se;
    for (std::size_t k = 0; k < plan.size(); ++k) {
        std::vector<double> rates;
        for (std::size_t r = 0; r < plan[k].second; ++r) {
            const auto x = edge_agreement(
                sample_vertices_poissonized(KpkvbParams(plan[k].first, 0.8, 1.0), derive_seed(1102, {k, r})));
            rates.push_back(x.total_pairs == 0 ? 0.0 : double(x.g_only_outer) / double(x.total_pairs));
        }
        const auto [m, s] = mean_sd(rates);
        mean.push_back(m);
        se.push_back(s / std::sqrt(double(rates.size())));
    }
    bool trend = true;
    for (std::size_t k = 1; k < mean.size(); ++k)
        trend = trend && mean[k] <= mean[k - 1] + 2.0 * std::hypot(se[k], se[k - 1]);
    return {rep.gamma_only_rate() < 1e-3 && trend,
            fmt("gamma_only rate %.2e; outer rate %.2e (se %.1e), %.2e (se %.1e), %.2e (se %.1e)",
                rep.gamma_only_rate(), mean[0], se[0], mean[1], se[1], mean[2], se[2])};
}

// 12. Poissonized vertex count and G vs G_Po.
Outcome poissonization() {
    std::size_t above = 0;
    for (std::uint64_t k = 0; k < 10000; ++k)
        if (poisson_vertex_count(10000, derive_seed(1201, {k})) >= 10000) ++above;
    const double p = above / 1e4;
    bool agree = true;
    std::string detail = fmt("P(Z >= N) = %.4f; ", p);
    for (const auto& [alpha, nu] : {std::pair{0.8, 1.0}, std::pair{1.5, 5.0}}) {
        for (const auto& row : lln_experiment(alpha, nu, {1000, 10000}, 20, 1202)) {
            const double spread = row.g_c1_sd + row.po_c1_sd;
            const double spread2 = row.g_c2_sd + row.po_c2_sd;
            agree = agree && std::abs(row.g_c1_mean - row.po_c1_mean) <= spread &&
                    std::abs(row.g_c2_mean - row.po_c2_mean) <= spread2;
            detail += fmt("a=%.1f N=%lld c1 %.4f/%.4f; ", alpha, static_cast<long long>(row.n), row.g_c1_mean,
                          row.po_c1_mean);
        }
    }
    return {std::abs(p - 0.5) <= 0.02 && agree, detail};
}

// 13. First and second moments of rectangle counts.
Outcome mecke_moments() {
    const ContinuumParams params(1.0, 1.0);
    const Window window(10.0, 8.0);
    const std::vector<Rect> regions{{-1.0, 1.0, 0.0, 1.0}, {2.0, 5.0, 0.5, 3.0}, {-10.0, 10.0, 0.0, 8.0}, {-3.0, 0.0, 2.0, 6.0}};
    bool ok = true;
    std::string detail;
    for (std::size_t k = 0; k < regions.size(); ++k) {
        const auto rep = mecke_check(params, window, regions[k], 4000, 1301 + k);
        ok = ok && rep.pass;
        detail += fmt("[mu %.3f count %.3f pairs %.3f/%.3f] ", rep.mu, rep.mean_count, rep.mean_pairs, rep.expected_pairs);
    }
    // Disjoint rectangles: E[K_A K_B] = mu_A mu_B.
    const Rect a = regions[0];
    const Rect b = regions[1];
    const double mu_a = intensity_mass(params, a);
    const double mu_b = intensity_mass(params, b);
    const std::size_t reps = 4000;
    double sum = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
        const auto s = sample_continuum(params, window, derive_seed(1310, {r}));
        double ka = 0.0, kb = 0.0;
        for (const auto& p : s.points) {
            ka += a.contains(p);
            kb += b.contains(p);
        }
        sum += ka * kb;
    }
    const double var = mu_a * mu_b * (1.0 + mu_a + mu_b);
    const double sigma = std::sqrt(var / double(reps));
    const bool cross = std::abs(sum / double(reps) - mu_a * mu_b) <= 4.0 * sigma;
    detail += fmt("cross %.4f vs %.4f", sum / double(reps), mu_a * mu_b);
    return {ok && cross, detail};
}

// 14. Elementary inequalities on dense grids.
Outcome appendix_bounds() {
    const auto res = check_appendix_bounds(1000001);
    return {res.passed(), fmt("%zu violations over %zu grid checks", res.violations, res.trials)};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// 15. Repeated seeded CLI runs are byte-identical.
Outcome determinism() {
    const std::string bin = HYPERGIANT_CLI_PATH;
    const std::vector<std::string> commands{
        "generate --n 2000 --alpha 0.8 --nu 1 --seed 3",
        "generate --n 500 --alpha 0.7 --nu 2 --seed 4 --format svg",
        "generate --model continuum --alpha 1 --lambda 1 --halfwidth 20 --height 6 --seed 5",
        "components --n 5000 --alpha 1.2 --nu 2 --seed 6 --format json",
        "lln --alpha 1 --nu 2 --nlist 500,2000 --replicas 4 --seed 7",
        "theta --alpha 0.8 --lambda 0.7 --h 5 --ubound 4 --replicas 60 --seed 8",
        "couple-check --n 3000 --alpha 0.8 --nu 1 --seed 9",
        "lambdac --h 3 --replicas 31 --tol 1 --seed 10",
    };
    const auto dir = std::filesystem::temp_directory_path() / "hypergiant_acceptance";
    std::filesystem::create_directories(dir);
    std::size_t same = 0;
    for (std::size_t k = 0; k < commands.size(); ++k) {
        std::string outputs[2];
        for (int run = 0; run < 2; ++run) {
            const auto path = dir / ("run" + std::to_string(k) + "_" + std::to_string(run));
            const std::string threads = run == 0 ? "HYPERGIANT_THREADS=1 " : "HYPERGIANT_THREADS=4 ";
            const std::string cmd = threads + bin + " " + commands[k] + " --out " + path.string();
            if (std::system(cmd.c_str()) != 0) return {false, "command failed: " + commands[k]};
            outputs[run] = slurp(path);
        }
        if (!outputs[0].empty() && outputs[0] == outputs[1]) ++same;
    }
    std::filesystem::remove_all(dir);
    return {same == commands.size(), fmt("%zu/%zu commands byte-identical across runs", same, commands.size())};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"oracle-equivalence", oracle_equivalence},
        {"cross-properties", cross_properties},
        {"box-adjacency", box_adjacency},
        {"mean-degree", mean_degree},
        {"tail-exponent", tail_exponent},
        {"lln-vanishing-giant", subcritical_lln},
        {"lln-dense-giant", dense_lln},
        {"subcritical-theta", subcritical_theta},
        {"lambda-c-bracket", lambda_bracket},
        {"coupled-monotonicity", coupled_monotonicity},
        {"coupling-fidelity", coupling_fidelity},
        {"poissonization", poissonization},
        {"mecke-moments", mecke_moments},
        {"appendix-bounds", appendix_bounds},
        {"determinism", determinism},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failures;
        std::printf("%s %2zu %-22s %8.1fs  %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), secs,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
