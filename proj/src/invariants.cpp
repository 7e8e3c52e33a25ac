#include <hypergiant/continuum.hpp>
#include <hypergiant/coupling.hpp>
#include <hypergiant/invariants.hpp>
#include <hypergiant/rng.hpp>

#include <algorithm>
#include <cmath>

namespace hypergiant {

namespace {

double orient(const HalfPlanePoint& a, const HalfPlanePoint& b, const HalfPlanePoint& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// Random edge: q placed within the threshold of p.
std::pair<HalfPlanePoint, HalfPlanePoint> random_edge(Rng& rng) {
    const HalfPlanePoint p{rng.uniform(-10.0, 10.0), rng.uniform(0.0, 6.0)};
    const double yq = rng.uniform(0.0, 6.0);
    const double t = std::exp(0.5 * (p.y + yq));
    const double dx = (rng.uniform01() * 2.0 - 1.0) * t;
    return {p, {p.x + dx, yq}};
}

}  // namespace

bool above_segment(const HalfPlanePoint& p, const HalfPlanePoint& a, const HalfPlanePoint& b) {
    const double lo = std::min(a.x, b.x);
    const double hi = std::max(a.x, b.x);
    if (!(p.x >= lo && p.x <= hi) || lo == hi) return false;
    const double t = (p.x - a.x) / (b.x - a.x);
    return p.y > a.y + t * (b.y - a.y);
}

bool segments_cross(const HalfPlanePoint& a, const HalfPlanePoint& b, const HalfPlanePoint& c,
                    const HalfPlanePoint& d) {
    const double d1 = orient(a, b, c);
    const double d2 = orient(a, b, d);
    const double d3 = orient(c, d, a);
    const double d4 = orient(c, d, b);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

InvariantResult check_cross_triples(std::uint64_t seed, std::size_t trials) {
    Rng rng(derive_seed(seed, {101}));
    InvariantResult res{"cross lemma (i): point above an edge", 0, 0};
    while (res.trials < trials) {
        const auto [pi, pj] = random_edge(rng);
        if (!gamma_adjacent(pi, pj)) continue;
        const double xk = rng.uniform(std::min(pi.x, pj.x), std::max(pi.x, pj.x));
        const double t = pi.x == pj.x ? 0.0 : (xk - pi.x) / (pj.x - pi.x);
        const HalfPlanePoint pk{xk, pi.y + t * (pj.y - pi.y) + rng.uniform(0.0, 6.0)};
        if (!above_segment(pk, pi, pj)) continue;
        ++res.trials;
        if (!gamma_adjacent(pk, pi) && !gamma_adjacent(pk, pj)) ++res.violations;
    }
    return res;
}

InvariantResult check_cross_quadruples(std::uint64_t seed, std::size_t trials) {
    Rng rng(derive_seed(seed, {102}));
    InvariantResult res{"cross lemma (ii): crossing edges", 0, 0};
    while (res.trials < trials) {
        const auto [pi, pj] = random_edge(rng);
        const auto [pk, pl] = random_edge(rng);
        if (!gamma_adjacent(pi, pj) || !gamma_adjacent(pk, pl) || !segments_cross(pi, pj, pk, pl)) continue;
        ++res.trials;
        const bool cross_edge = gamma_adjacent(pi, pk) || gamma_adjacent(pi, pl) || gamma_adjacent(pj, pk) ||
                                gamma_adjacent(pj, pl);
        if (!cross_edge) ++res.violations;
    }
    return res;
}

InvariantResult check_box_adjacency(std::uint64_t seed, std::size_t trials) {
    Rng rng(derive_seed(seed, {103}));
    InvariantResult res{"box dissection: neighboring boxes are adjacent", 0, 0};
    auto point_in = [&](const BoxIndex& b) {
        const Rect r = box_rect(b);
        const double y_lo = b.i == 0 ? 0.0 : r.y_lo;
        // Half-open (lo, hi] in both coordinates.
        return HalfPlanePoint{r.x_lo + (r.x_hi - r.x_lo) * rng.uniform01_open_low(),
                              y_lo + (r.y_hi - y_lo) * rng.uniform01_open_low()};
    };
    while (res.trials < trials) {
        const int i = static_cast<int>(rng.bits() % 25);
        const auto j = static_cast<std::int64_t>(rng.bits() % 2001) - 1000;
        std::vector<BoxIndex> nbrs{{i + 1, j >= 0 ? j / 2 : -((-j + 1) / 2)}, {i, j - 1}, {i, j + 1}};
        if (i >= 1) {
            nbrs.push_back({i - 1, 2 * j});
            nbrs.push_back({i - 1, 2 * j + 1});
        }
        const BoxIndex q_box = nbrs[rng.bits() % nbrs.size()];
        const auto p = point_in({i, j});
        const auto q = point_in(q_box);
        ++res.trials;
        if (!gamma_adjacent(p, q)) ++res.violations;
    }
    return res;
}

InvariantResult check_appendix_bounds(std::size_t grid_points) {
    InvariantResult res{"elementary inequalities on a grid", 0, 0};
    for (std::size_t k = 0; k <= grid_points; ++k) {
        const double x = static_cast<double>(k) / static_cast<double>(grid_points);
        const double xs = 2.0 * x - 1.0;
        res.trials += 3;
        if (!arccos_bound_holds(x)) ++res.violations;
        if (!cos_bound_holds(x)) ++res.violations;
        if (!sqrt_bound_holds(xs)) ++res.violations;
    }
    return res;
}

InvariantResult check_gamma_symmetries(std::uint64_t seed, std::size_t trials) {
    Rng rng(derive_seed(seed, {104}));
    InvariantResult res{"Gamma edges: translation and reflection", 0, 0};
    for (std::size_t t = 0; t < trials; ++t) {
        std::vector<HalfPlanePoint> pts(200);
        // Dyadic coordinates keep the integer shift exact.
        for (auto& p : pts) {
            p.x = std::ldexp(std::floor(rng.uniform(-40.0, 40.0) * 1048576.0), -20);
            p.y = rng.uniform(0.0, 5.0);
        }
        const auto base = gamma_graph(pts).edges();
        const double shift = std::floor(rng.uniform(-1000.0, 1000.0));
        auto moved = pts;
        for (auto& p : moved) p.x += shift;
        auto mirrored = pts;
        for (auto& p : mirrored) p.x = -p.x;
        ++res.trials;
        if (gamma_graph(moved).edges() != base || gamma_graph(mirrored).edges() != base) ++res.violations;
    }
    return res;
}

InvariantResult check_threshold_monotone(std::uint64_t seed, std::size_t trials) {
    Rng rng(derive_seed(seed, {105}));
    InvariantResult res{"threshold angle: symmetric and nonincreasing", 0, 0};
    for (std::size_t t = 0; t < trials; ++t) {
        const double radius = rng.uniform(1.0, 40.0);
        const double r1 = rng.uniform(0.0, radius);
        double r2 = rng.uniform(0.0, radius);
        double r3 = rng.uniform(0.0, radius);
        if (r2 > r3) std::swap(r2, r3);
        ++res.trials;
        const double a = threshold_angle(r1, r2, radius);
        const double b = threshold_angle(r2, r1, radius);
        const double c = threshold_angle(r1, r3, radius);
        if (a != b || c > a * (1.0 + 1e-12)) ++res.violations;
    }
    return res;
}

InvariantResult check_disk_rule(std::uint64_t seed, std::size_t trials) {
    Rng rng(derive_seed(seed, {106}));
    InvariantResult res{"disk adjacency matches the distance rule", 0, 0};
    while (res.trials < trials) {
        const double radius = rng.uniform(2.0, 25.0);
        const PolarPoint a{rng.uniform(0.0, radius), rng.uniform(-kPi, kPi)};
        const PolarPoint b{rng.uniform(0.0, radius), rng.uniform(-kPi, kPi)};
        const double d = hyperbolic_distance(a, b);
        if (std::abs(d - radius) < 1e-6 * radius) continue;
        ++res.trials;
        if (disk_adjacent(a, b, radius) != (d <= radius)) ++res.violations;
    }
    return res;
}

InvariantResult check_psi_roundtrip(std::uint64_t seed, std::size_t trials) {
    Rng rng(derive_seed(seed, {107}));
    InvariantResult res{"psi roundtrip", 0, 0};
    for (std::size_t t = 0; t < trials; ++t) {
        const double radius = rng.uniform(1.0, 40.0);
        const PolarPoint p{rng.uniform(0.0, radius), kPi - 2.0 * kPi * rng.uniform01()};
        const auto back = psi_inverse(psi(p, radius), radius);
        ++res.trials;
        if (std::abs(back.r - p.r) > 1e-12 * std::max(1.0, radius) || std::abs(back.theta - p.theta) > 1e-12)
            ++res.violations;
    }
    return res;
}

InvariantResult check_layered_nesting(std::uint64_t seed, std::size_t trials) {
    InvariantResult res{"layered slices are nested", 0, 0};
    const double alphas[] = {0.6, 0.8, 1.0};
    const double lambdas[] = {0.5, 1.0, 2.0};
    for (std::size_t t = 0; t < trials; ++t) {
        const auto layered = sample_layered(alphas, lambdas, Window(30.0, 6.0), 2.0, derive_seed(seed, {108, t}));
        for (std::size_t a = 0; a < 3; ++a) {
            for (std::size_t l = 0; l < 3; ++l) {
                const auto& inner = layered.indices[a][l];
                auto contained = [&](const std::vector<std::size_t>& outer) {
                    return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
                };
                ++res.trials;
                if (a > 0 && !contained(layered.indices[a - 1][l])) ++res.violations;
                if (l + 1 < 3 && !contained(layered.indices[a][l + 1])) ++res.violations;
            }
        }
    }
    return res;
}

std::vector<InvariantResult> run_selftest(std::uint64_t seed) {
    return {
        check_cross_triples(seed, 20000),
        check_cross_quadruples(seed, 20000),
        check_box_adjacency(seed, 100000),
        check_appendix_bounds(10000),
        check_gamma_symmetries(seed, 20),
        check_threshold_monotone(seed, 20000),
        check_disk_rule(seed, 20000),
        check_psi_roundtrip(seed, 20000),
        check_layered_nesting(seed, 5),
    };
}

}  // namespace hypergiant
