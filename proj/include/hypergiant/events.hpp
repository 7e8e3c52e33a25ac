#pragma once

#include <hypergiant/continuum.hpp>
#include <hypergiant/point_source.hpp>

#include <cstdint>
#include <limits>
#include <vector>

namespace hypergiant {

/// T(y; h, w): a path from the planted point (0, y) to some point with
/// y-coordinate in [h, 2h], all of whose points lie in [-w e^h, w e^h] x [0, 2h].
///
/// Best-first search on height, scanning neighbor rows from the top so the
/// search stops at the first point reaching h.
/// Throws std::domain_error unless 0 <= y <= 2h and the window covers the box.
bool event_T(double y, double h, double w, const PointSource& source);
bool event_T(double y, double h, double w, const ContinuumSample& sample);

/// U(y; n, h): the component of (0, y) in the graph restricted to
/// [-e^h, e^h] x [0, h] lies in [-n, n] x [0, n] and has at most n vertices
/// (the planted point included). Stops as soon as either bound fails.
/// Throws std::domain_error unless h >= n >= y >= 0 and the window covers the box.
bool event_U(double y, double n, double h, const PointSource& source);
bool event_U(double y, double n, double h, const ContinuumSample& sample);

/// C_{w,h}: a path from a point of [-w e^h, -(w-1) e^h] x [0, h] to a point of
/// [(w-1) e^h, w e^h] x [0, h] through points of [-w e^h, w e^h] x [0, h].
/// Throws std::domain_error for w < 1 or a window not covering the box.
bool event_C(double w, double h, const PointSource& source);
bool event_C(double w, double h, const ContinuumSample& sample);

/// Smallest slice level at which C_{w,h} holds in the layered sample, with
/// the slice exponent fixed to sample.alpha_min(): C_{w,h} holds on the
/// (alpha_min, lambda) slice iff the result is < lambda.
///
/// Points are activated in order of their level and merged with union-find
/// into a dynamic row/cell grid; chunks are generated only as far as needed.
/// Returns +infinity if the flanks stay disconnected up to lambda_max.
/// Throws std::domain_error if the sample window differs from the event box.
double crossing_level(LayeredSample& sample, double w, double h, double lambda_max);

/// Number of Gamma-neighbors of the planted point (0, y) in the source.
std::size_t planted_degree(double y, const PointSource& source);

/// Rightmost exploration started at (0, y0): at each step, collect the points
/// in the right half-ball of (x_i, y_i) and the left half-ball of (-x_i, y_i),
/// then move to (max |x|, max y) over that set. Stops when the set is empty or
/// after max_steps steps. Points with x exactly 0 are treated as lying at the
/// smallest positive double.
std::vector<HalfPlanePoint> explore_rightmost(double y0, const PointSource& source,
                                              std::size_t max_steps = 1000000);
std::vector<HalfPlanePoint> explore_rightmost(double y0, std::span<const HalfPlanePoint> points);

}  // namespace hypergiant
