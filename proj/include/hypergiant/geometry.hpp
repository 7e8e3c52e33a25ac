#pragma once

#include <cstdint>
#include <numbers>

namespace hypergiant {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kLn2 = std::numbers::ln2;
inline constexpr double kEulerGamma = std::numbers::egamma;

/// Parameters of the disk model G(N; alpha, nu).
///
/// The disk radius is derived as R = 2 ln(N / nu). Construction rejects
/// N <= nu (which would give R <= 0) and non-positive alpha or nu with
/// std::domain_error.
class KpkvbParams {
public:
    KpkvbParams(std::int64_t n, double alpha, double nu);

    std::int64_t n() const { return n_; }
    double alpha() const { return alpha_; }
    double nu() const { return nu_; }
    double radius() const { return radius_; }

private:
    std::int64_t n_;
    double alpha_;
    double nu_;
    double radius_;
};

/// A vertex of the disk model in native polar coordinates.
/// Angles live in (-pi, pi].
struct PolarPoint {
    double r = 0.0;
    double theta = 0.0;

    friend bool operator==(const PolarPoint&, const PolarPoint&) = default;
};

/// A point of the upper half-plane R x [0, inf).
struct HalfPlanePoint {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const HalfPlanePoint&, const HalfPlanePoint&) = default;
};

/// R = 2 ln(N / nu). Throws std::domain_error when N <= nu.
double radius_R(std::int64_t n, double nu);

/// Maps an angle to (-pi, pi].
double normalize_angle(double theta);

/// Relative angle |t1 - t2| measured on the circle, in [0, pi].
double angle_gap(double t1, double t2);

/// Inverse of the radial CDF F(r) = (cosh(alpha r) - 1) / (cosh(alpha R) - 1).
///
/// Returns r = arccosh(1 + u (cosh(alpha R) - 1)) / alpha, which lies in
/// [0, R] and is nondecreasing in u. Evaluated in log space when cosh(alpha R)
/// would overflow. Throws std::domain_error for u outside [0, 1] or
/// non-positive alpha, R.
double sample_radius(double alpha, double radius, double u);

/// The radial CDF itself; inverse of sample_radius.
double radial_cdf(double alpha, double radius, double r);

/// Hyperbolic distance via the cosine rule, written in the cancellation-free
/// form cosh(r1 - r2) + 2 sin^2(gap / 2) sinh r1 sinh r2.
double hyperbolic_distance(const PolarPoint& a, const PolarPoint& b);

/// Largest relative angle at which points at radii r1, r2 are within
/// distance R of each other.
///
/// Returns pi when r1 + r2 <= R or when either radius is zero. Otherwise the
/// arccos argument is evaluated as 1 - x with
/// x = (cosh R - cosh(r1 - r2)) / (sinh r1 sinh r2), and the angle is
/// 2 asin(sqrt(x / 2)). sqrt(x / 2) is assembled from expm1 factors times
/// e^{(R - r1 - r2)/2}, so nothing overflows or underflows for large R.
/// Throws std::domain_error for negative radii or radii above R.
double threshold_angle(double r1, double r2, double radius);

/// Adjacency in the disk model: d(a, b) <= R, decided on angles.
bool disk_adjacent(const PolarPoint& a, const PolarPoint& b, double radius);

/// (1/2) e^{R/2} threshold_angle(r1, r2, R): the threshold in strip units.
/// Requires r1 + r2 >= R and r1, r2 in (0, R]; throws std::domain_error
/// otherwise.
double delta_scaled(double r1, double r2, double radius);

/// Number of times an arccos/arccosh argument had to be clamped by more
/// than 1e-9 since the last reset. Process-wide, thread-safe.
std::uint64_t clamp_events();
void reset_clamp_events();

/// Elementary inequalities used by the asymptotic expansion of the
/// threshold angle. Each predicate throws std::domain_error outside its
/// domain. Comparisons allow a few ulps of rounding slack because the two
/// sides agree to within x^4/24 or less near zero.
bool arccos_bound_holds(double x);   // sqrt(2x) <= acos(1-x) <= sqrt(2x) + 1000 x^{3/2}, x in [0,1]
bool sqrt_bound_holds(double x);     // 1 + x/2 - 100x^2 <= sqrt(1+x) <= 1 + x/2, x in [-1,1]
bool cos_bound_holds(double x);      // 1 - x^2/2 <= cos x <= 1 - x^2/2 + x^4/24, x in [0,1]

struct AppendixBounds {
    bool arccos_bound = false;
    bool sqrt_bound = false;
    bool cos_bound = false;

    bool all() const { return arccos_bound && sqrt_bound && cos_bound; }
};

/// All three predicates at a common x in [0, 1].
AppendixBounds appendix_bounds_check(double x);

}  // namespace hypergiant
