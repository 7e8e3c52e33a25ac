#include <gtest/gtest.h>

#include <hypergiant/continuum.hpp>
#include <hypergiant/coupling.hpp>
#include <hypergiant/invariants.hpp>
#include <hypergiant/rng.hpp>

#include <oracles/oracles.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace hypergiant;

TEST(Psi, Examples) {
    const double radius = 12.0;
    const auto origin = psi({radius, 0.0}, radius);
    EXPECT_EQ(origin.x, 0.0);
    EXPECT_EQ(origin.y, 0.0);
    const auto edge = psi({radius - 1.0, kPi}, radius);
    EXPECT_NEAR(edge.x, kPi * std::exp(radius / 2.0) / 2.0, 1e-9);
    EXPECT_NEAR(edge.y, 1.0, 1e-15);
    EXPECT_NEAR(strip_circumference(radius), kPi * std::exp(6.0), 1e-9);
    EXPECT_THROW(psi({radius + 1.0, 0.0}, radius), std::domain_error);
    EXPECT_THROW(psi_inverse({0.0, -1.0}, radius), std::domain_error);
    EXPECT_THROW(psi_inverse({strip_circumference(radius), 1.0}, radius), std::domain_error);
}

TEST(Psi, Roundtrip) {
    const auto res = check_psi_roundtrip(1, 100000);
    EXPECT_TRUE(res.passed()) << res.violations;
}

TEST(Psi, AngleLawMapsToUniformWidth) {
    const auto v = sample_vertices(KpkvbParams(100000, 0.8, 1.0), 4);
    const double c = strip_circumference(v.params.radius());
    std::vector<double> xs;
    for (const auto& p : strip_images(v)) xs.push_back(p.x);
    EXPECT_LT(oracle::ks_statistic(xs, [c](double x) { return x / c + 0.5; }), 0.01);
}

TEST(Psi, RadialLawMapsToSinhDensity) {
    const double alpha = 0.8;
    const auto v = sample_vertices(KpkvbParams(100000, alpha, 1.0), 5);
    const double radius = v.params.radius();
    // CDF of y = R - r under the density proportional to sinh(alpha (R - y)).
    auto cdf = [&](double y) {
        return (std::cosh(alpha * radius) - std::cosh(alpha * (radius - y))) / (std::cosh(alpha * radius) - 1.0);
    };
    const int bins = 20;
    std::vector<double> edges{0.0};
    for (int b = 1; b < bins; ++b) edges.push_back(4.0 * b / bins);
    edges.push_back(radius);
    std::vector<double> observed(bins, 0.0);
    for (const auto& p : strip_images(v)) {
        const auto it = std::upper_bound(edges.begin(), edges.end(), p.y);
        observed[static_cast<std::size_t>(std::min<long>(bins - 1, it - edges.begin() - 1))] += 1.0;
    }
    double chi2 = 0.0;
    for (int b = 0; b < bins; ++b) {
        const double expected = 1e5 * (cdf(edges[b + 1]) - cdf(edges[b]));
        chi2 += (observed[b] - expected) * (observed[b] - expected) / expected;
    }
    EXPECT_LT(chi2, 43.82);  // chi-square, 19 degrees of freedom, 0.999 quantile
}

TEST(StripIntensity, Ratio) {
    const auto at0 = strip_intensity(0.8, 1.0, 30.0, 0.0);
    EXPECT_NEAR(at0.ratio, 1.0, 1e-3);
    EXPECT_NEAR(at0.target, 0.8 / kPi, 1e-15);
    EXPECT_NEAR(strip_intensity(0.8, 1.0, 30.0, 30.0).ratio, 0.0, 1e-12);
    EXPECT_THROW(strip_intensity(0.8, 1.0, 30.0, 31.0), std::domain_error);
    // Closed form before simplification.
    const double a = 0.8;
    const double r = 10.0;
    const double y = 3.0;
    const double direct = 1.0 * a / kPi * std::sinh(a * (r - y)) / (std::cosh(a * r) - 1.0);
    EXPECT_NEAR(strip_intensity(a, 1.0, r, y).pushforward, direct, 1e-14);
}

TEST(StripIntensity, DiscrepancyDecays) {
    const double d10 = intensity_discrepancy(0.8, 1.0, 10.0);
    const double d20 = intensity_discrepancy(0.8, 1.0, 20.0);
    const double d30 = intensity_discrepancy(0.8, 1.0, 30.0);
    EXPECT_GT(d10, d20);
    EXPECT_GT(d20, d30);
    // Scaled by e^{R(1/2 - alpha)} the discrepancy stays bounded.
    for (auto [r, d] : {std::pair{10.0, d10}, std::pair{20.0, d20}, std::pair{30.0, d30}})
        EXPECT_LT(d / std::exp(r * (0.5 - 0.8)), 5.0);
}

TEST(TorusIdentity, AngleForm) {
    Rng rng(8);
    std::size_t checked = 0;
    for (int t = 0; t < 100000; ++t) {
        const double radius = rng.uniform(5.0, 25.0);
        const PolarPoint a{rng.uniform(0.0, radius), rng.uniform(-kPi, kPi)};
        const double gap = std::exp(-0.5 * radius) * rng.uniform(0.0, 40.0);
        const PolarPoint b{rng.uniform(0.0, radius), normalize_angle(a.theta + gap)};
        const auto sa = psi(a, radius);
        const auto sb = psi(b, radius);
        const double bound = 2.0 * std::exp(-0.5 * radius + 0.5 * (sa.y + sb.y));
        const double g = angle_gap(a.theta, b.theta);
        if (std::abs(g - bound) <= 1e-9 * bound) continue;
        ++checked;
        ASSERT_EQ(torus_adjacent({sa.x, sa.y}, {sb.x, sb.y}, strip_circumference(radius)), g <= bound);
    }
    EXPECT_GT(checked, 99000u);
}

TEST(EdgeAgreement, MatchesBruteForce) {
    Rng rng(9);
    for (int t = 0; t < 20; ++t) {
        const auto n = static_cast<std::int64_t>(100 + rng.bits() % 1900);
        const auto v = sample_vertices_poissonized(KpkvbParams(n, rng.uniform(0.55, 1.5), rng.uniform(0.5, 3.0)), t);
        const double radius = v.params.radius();
        const auto disk = oracle::disk_edges(v.points, radius);
        std::vector<HalfPlanePoint> img;
        for (const auto& p : v.points) {
            const auto s = psi(p, radius);
            img.push_back({s.x, s.y});
        }
        const auto torus = oracle::torus_edges(img, strip_circumference(radius));
        std::size_t both = 0, gamma_only = 0, outer = 0, inner = 0;
        std::vector<Edge> all;
        std::set_union(disk.begin(), disk.end(), torus.begin(), torus.end(), std::back_inserter(all));
        for (const auto& e : all) {
            const bool in_disk = std::binary_search(disk.begin(), disk.end(), e);
            const bool in_torus = std::binary_search(torus.begin(), torus.end(), e);
            if (in_disk && in_torus) {
                ++both;
            } else if (in_torus) {
                ++gamma_only;
            } else if (v.points[e.first].r + v.points[e.second].r >= 1.5 * radius) {
                ++outer;
            } else {
                ++inner;
            }
        }
        const auto rep = edge_agreement(v);
        EXPECT_EQ(rep.total_pairs, all.size());
        EXPECT_EQ(rep.agreements, both);
        EXPECT_EQ(rep.gamma_only, gamma_only);
        EXPECT_EQ(rep.g_only_outer, outer);
        EXPECT_EQ(rep.g_only_inner, inner);
        EXPECT_EQ(rep.vertex_count, v.points.size());
        EXPECT_EQ(torus_graph(v).edges(), torus);
    }
}

TEST(EdgeAgreement, CloseRadiiAlwaysAdjacent) {
    Rng rng(10);
    for (int t = 0; t < 20000; ++t) {
        const double radius = rng.uniform(2.0, 30.0);
        const double r1 = rng.uniform(0.0, radius);
        const PolarPoint a{r1, rng.uniform(-kPi, kPi)};
        const PolarPoint b{rng.uniform(0.0, radius - r1), rng.uniform(-kPi, kPi)};
        ASSERT_TRUE(disk_adjacent(a, b, radius));
    }
}

TEST(EdgeAgreement, GammaOnlyRare) {
    const auto rep = edge_agreement(sample_vertices_poissonized(KpkvbParams(10000, 0.8, 1.0), 2));
    EXPECT_LT(rep.gamma_only_rate(), 1e-3);
    EXPECT_LE(rep.agreements + rep.gamma_only + rep.g_only_outer + rep.g_only_inner, rep.total_pairs);
}
