#pragma once

#include <hypergiant/geometry.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace hypergiant {

/// Outcome of a randomized structural check.
struct InvariantResult {
    std::string name;
    std::size_t trials = 0;
    std::size_t violations = 0;

    bool passed() const { return violations == 0 && trials > 0; }
};

/// Segment test: is p strictly above the segment [a, b] (vertical line through p
/// meets the segment below p)?
bool above_segment(const HalfPlanePoint& p, const HalfPlanePoint& a, const HalfPlanePoint& b);

/// Proper crossing of the open segments [a, b] and [c, d].
bool segments_cross(const HalfPlanePoint& a, const HalfPlanePoint& b, const HalfPlanePoint& c,
                    const HalfPlanePoint& d);

/// Edge p_i p_j plus a third point above the segment: p_k p_i or p_k p_j is an edge.
InvariantResult check_cross_triples(std::uint64_t seed, std::size_t trials);

/// Two crossing edges force one of the four cross edges.
InvariantResult check_cross_quadruples(std::uint64_t seed, std::size_t trials);

/// A point of R_{i,j} is adjacent to every point of the five neighboring boxes.
InvariantResult check_box_adjacency(std::uint64_t seed, std::size_t trials);

/// The three elementary inequalities on a uniform grid of [0, 1] (and [-1, 1]).
InvariantResult check_appendix_bounds(std::size_t grid_points);

/// Gamma edge set under integer translation and under x -> -x.
InvariantResult check_gamma_symmetries(std::uint64_t seed, std::size_t trials);

/// threshold_angle is symmetric and nonincreasing in each radius.
InvariantResult check_threshold_monotone(std::uint64_t seed, std::size_t trials);

/// disk_adjacent agrees with hyperbolic_distance <= R away from ties.
InvariantResult check_disk_rule(std::uint64_t seed, std::size_t trials);

/// psi_inverse(psi(p)) = p to 1e-12.
InvariantResult check_psi_roundtrip(std::uint64_t seed, std::size_t trials);

/// Layered slices are nested in alpha and lambda.
InvariantResult check_layered_nesting(std::uint64_t seed, std::size_t trials);

/// The suite behind the `selftest` command.
std::vector<InvariantResult> run_selftest(std::uint64_t seed);

}  // namespace hypergiant
