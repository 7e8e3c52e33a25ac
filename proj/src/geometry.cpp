#include <hypergiant/geometry.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hypergiant {

namespace {

std::atomic<std::uint64_t> g_clamp_events{0};

constexpr double kClampReportThreshold = 1e-9;

double clamp_with_diagnostic(double v, double lo, double hi) {
    if (v < lo) {
        if (lo - v > kClampReportThreshold) g_clamp_events.fetch_add(1, std::memory_order_relaxed);
        return lo;
    }
    if (v > hi) {
        if (v - hi > kClampReportThreshold) g_clamp_events.fetch_add(1, std::memory_order_relaxed);
        return hi;
    }
    return v;
}

// a <= b up to a few ulps of the larger magnitude.
bool leq_slack(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1.0});
    return a <= b + 8.0 * std::numeric_limits<double>::epsilon() * scale;
}

void require_domain(bool ok, const char* what) {
    if (!ok) throw std::domain_error(what);
}

}  // namespace

KpkvbParams::KpkvbParams(std::int64_t n, double alpha, double nu)
    : n_(n), alpha_(alpha), nu_(nu), radius_(0.0) {
    require_domain(n > 0, "KpkvbParams: N must be positive");
    require_domain(alpha > 0.0 && std::isfinite(alpha), "KpkvbParams: alpha must be positive");
    require_domain(nu > 0.0 && std::isfinite(nu), "KpkvbParams: nu must be positive");
    radius_ = radius_R(n, nu);
}

double radius_R(std::int64_t n, double nu) {
    require_domain(nu > 0.0, "radius_R: nu must be positive");
    if (static_cast<double>(n) <= nu) {
        throw std::domain_error("radius_R: N <= nu gives a non-positive radius (N=" + std::to_string(n) +
                                ", nu=" + std::to_string(nu) + ")");
    }
    return 2.0 * std::log(static_cast<double>(n) / nu);
}

double normalize_angle(double theta) {
    double t = std::remainder(theta, 2.0 * kPi);  // [-pi, pi]
    if (t <= -kPi) t += 2.0 * kPi;
    return t;
}

double angle_gap(double t1, double t2) {
    const double d = std::abs(t1 - t2);
    const double wrapped = std::fmod(d, 2.0 * kPi);
    return std::min(wrapped, 2.0 * kPi - wrapped);
}

double sample_radius(double alpha, double radius, double u) {
    require_domain(alpha > 0.0 && radius > 0.0, "sample_radius: alpha and R must be positive");
    require_domain(u >= 0.0 && u <= 1.0, "sample_radius: u must lie in [0, 1]");
    if (u == 0.0) return 0.0;
    if (u == 1.0) return radius;
    const double a = alpha * radius;
    double r;
    if (a < 700.0) {
        const double s = std::sinh(0.5 * a);
        r = std::acosh(1.0 + u * 2.0 * s * s) / alpha;
    } else {
        // log(u (cosh a - 1)) with cosh a - 1 = (e^a / 2)(1 - e^{-a})^2
        const double log_excess = std::log(u) + a - kLn2 + 2.0 * std::log1p(-std::exp(-a));
        if (log_excess < 700.0) {
            r = std::acosh(1.0 + std::exp(log_excess)) / alpha;
        } else {
            r = (kLn2 + log_excess) / alpha;
        }
    }
    return std::clamp(r, 0.0, radius);
}

double radial_cdf(double alpha, double radius, double r) {
    require_domain(alpha > 0.0 && radius > 0.0, "radial_cdf: alpha and R must be positive");
    if (r <= 0.0) return 0.0;
    if (r >= radius) return 1.0;
    double ratio;
    if (0.5 * alpha * radius < 350.0) {
        ratio = std::sinh(0.5 * alpha * r) / std::sinh(0.5 * alpha * radius);
    } else {
        ratio = std::exp(0.5 * alpha * (r - radius)) * std::expm1(-alpha * r) / std::expm1(-alpha * radius);
    }
    return ratio * ratio;
}

double hyperbolic_distance(const PolarPoint& a, const PolarPoint& b) {
    const double half_gap = 0.5 * angle_gap(a.theta, b.theta);
    const double s = std::sin(half_gap);
    const double arg = std::cosh(a.r - b.r) + 2.0 * s * s * std::sinh(a.r) * std::sinh(b.r);
    return std::acosh(clamp_with_diagnostic(arg, 1.0, std::numeric_limits<double>::infinity()));
}

double threshold_angle(double r1, double r2, double radius) {
    require_domain(r1 >= 0.0 && r2 >= 0.0, "threshold_angle: negative radius");
    require_domain(r1 <= radius && r2 <= radius, "threshold_angle: radius exceeds R");
    if (r1 == 0.0 || r2 == 0.0) return kPi;
    const double lo = std::min(r1, r2);
    const double hi = std::max(r1, r2);
    const double s = lo + hi;
    if (s <= radius) return kPi;
    // x / 2 = e^{R-s} (1 - e^{d-R})(1 - e^{-d-R}) / ((1 - e^{-2 lo})(1 - e^{-2 hi})), d = hi - lo
    const double d = hi - lo;
    const double ratio = std::expm1(d - radius) * std::expm1(-d - radius) / (std::expm1(-2.0 * lo) * std::expm1(-2.0 * hi));
    const double root = std::exp(0.5 * (radius - s)) * std::sqrt(ratio);
    return 2.0 * std::asin(clamp_with_diagnostic(root, 0.0, 1.0));
}

bool disk_adjacent(const PolarPoint& a, const PolarPoint& b, double radius) {
    return angle_gap(a.theta, b.theta) <= threshold_angle(a.r, b.r, radius);
}

double delta_scaled(double r1, double r2, double radius) {
    require_domain(r1 > 0.0 && r2 > 0.0 && r1 <= radius && r2 <= radius,
                   "delta_scaled: radii must lie in (0, R]");
    require_domain(r1 + r2 >= radius, "delta_scaled: requires r1 + r2 >= R");
    return 0.5 * std::exp(0.5 * radius) * threshold_angle(r1, r2, radius);
}

std::uint64_t clamp_events() { return g_clamp_events.load(std::memory_order_relaxed); }

void reset_clamp_events() { g_clamp_events.store(0, std::memory_order_relaxed); }

bool arccos_bound_holds(double x) {
    require_domain(x >= 0.0 && x <= 1.0, "arccos bound: x must lie in [0, 1]");
    const double lower = std::sqrt(2.0 * x);
    const double upper = lower + 1000.0 * std::pow(x, 1.5);
    // acos(1 - x) = 2 asin(sqrt(x / 2)) avoids the rounding of 1 - x.
    const double value = 2.0 * std::asin(std::sqrt(0.5 * x));
    return leq_slack(lower, value) && leq_slack(value, upper);
}

bool sqrt_bound_holds(double x) {
    require_domain(x >= -1.0 && x <= 1.0, "sqrt bound: x must lie in [-1, 1]");
    const double value = std::sqrt(1.0 + x);
    return leq_slack(1.0 + 0.5 * x - 100.0 * x * x, value) && leq_slack(value, 1.0 + 0.5 * x);
}

bool cos_bound_holds(double x) {
    require_domain(x >= 0.0 && x <= 1.0, "cos bound: x must lie in [0, 1]");
    // Compare cos(x) - 1 = -2 sin^2(x/2) against the polynomial offsets.
    const double s = std::sin(0.5 * x);
    const double value = -2.0 * s * s;
    const double x2 = x * x;
    return leq_slack(-0.5 * x2, value) && leq_slack(value, -0.5 * x2 + x2 * x2 / 24.0);
}

AppendixBounds appendix_bounds_check(double x) {
    require_domain(x >= 0.0 && x <= 1.0, "appendix_bounds_check: x must lie in [0, 1]");
    return {arccos_bound_holds(x), sqrt_bound_holds(x), cos_bound_holds(x)};
}

}  // namespace hypergiant
