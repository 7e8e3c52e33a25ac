#pragma once

#include <hypergiant/continuum.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hypergiant {

/// Binomial proportion with its Wilson score interval.
struct Proportion {
    std::size_t successes = 0;
    std::size_t trials = 0;
    double p_hat = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;

    double half_width() const { return 0.5 * (ci_hi - ci_lo); }
};

/// Wilson interval at normal quantile z (1.96 for 95%).
Proportion wilson(std::size_t successes, std::size_t trials, double z = 1.96);

/// Minimum replica count accepted by the Monte Carlo estimators.
inline constexpr std::size_t kMinReplicas = 30;

/// Window and event parameters of the theta sandwich. w = 0 asks for a
/// calibration run (see calibrate_w).
struct ThetaConfig {
    double h = 10.0;
    double w = 2.0;
    double n = 10.0;
    std::size_t replicas = 500;
    /// Envelope (alpha, lambda) of the shared layered field. Estimates made
    /// with the same envelope and seed are coupled: the event indicators of
    /// every replica are monotone in alpha and lambda. Defaults to the
    /// estimated parameters themselves.
    std::optional<std::pair<double, double>> envelope;
};

struct ThetaEstimate {
    double y = 0.0;
    ContinuumParams params{1.0, 1.0};
    double lower = 0.0;  // P(T)
    double upper = 1.0;  // 1 - P(U)
    std::size_t replicas = 0;
    double ci_half_width = 0.0;
    bool exact = false;  // alpha <= 1/2: theta = 1 without simulation
    Proportion t_rate;
    Proportion u_rate;
    double h = 0.0;
    double w = 0.0;
    double n = 0.0;
    double u_height = 0.0;  // height of the containment event

    double midpoint() const { return 0.5 * (lower + upper); }
};

/// Per-replica event indicators behind a theta estimate.
struct ThetaIndicators {
    std::vector<char> t;
    std::vector<char> u;
};

/// Sandwich estimate of theta(y; alpha, lambda): lower = P(T(y; h, w)),
/// upper = 1 - P(U(y; n, h_U)) with h_U = max(2h, h + ln w), both from the
/// same lazily generated field per replica. The box of U contains the box of
/// T, so T and U are disjoint and lower <= upper on every call. Replica r
/// uses seed stream r.
/// Returns exactly 1 for alpha <= 1/2. Throws std::domain_error for fewer
/// than kMinReplicas replicas or when y, n, h violate the event preconditions.
ThetaEstimate estimate_theta(double y, const ContinuumParams& params, const ThetaConfig& config, std::uint64_t seed,
                             ThetaIndicators* indicators = nullptr);

/// Doubles w from 1 until P(T) moves by less than the CI half-width; returns
/// the last w (capped at 64).
double calibrate_w(double y, const ContinuumParams& params, const ThetaConfig& config, std::uint64_t seed);

struct CConfig {
    std::size_t nodes = 16;
    double error_budget = 0.1;
    ThetaConfig theta;
};

struct CEstimate {
    double alpha = 0.0;
    double nu = 0.0;
    double value = 0.0;
    std::vector<std::pair<double, double>> grid;  // (y, theta midpoint)
    double tail_cutoff = 0.0;                     // K with e^{-alpha K} = error_budget / 2
    double error_budget = 0.0;
    /// Tail mass plus the weighted sandwich half-gap and CI half-widths.
    double uncertainty = 0.0;
    bool exact = false;
};

/// c(alpha, nu) = int_0^inf theta(y; alpha, nu alpha / pi) alpha e^{-alpha y} dy.
/// Exactly 0 for alpha > 1 and exactly 1 for alpha <= 1/2; otherwise the
/// composite trapezoid rule over `nodes` equally spaced heights on [0, K]
/// applied to theta sandwich midpoints.
CEstimate c_of(double alpha, double nu, const CConfig& config, std::uint64_t seed);

struct LambdaBracket {
    double lo = 0.0;
    double hi = 0.0;
    double h_used = 0.0;
    double w_used = 0.0;
    std::size_t replicas = 0;
    std::vector<std::pair<double, double>> crossing_probs;  // (lambda, P(C)) in evaluation order
    std::vector<std::string> warnings;

    double mid() const { return 0.5 * (lo + hi); }
    double nu_mid() const;
};

struct BracketConfig {
    double h = 5.0;
    double w = 2.0;
    std::size_t replicas = 201;
    double tol = 0.25;
    double initial_lo = 0.1;
    double initial_hi = 11.0;
};

/// Bisection in lambda of P(C_{w,h}) at alpha = 1 against 1/2.
///
/// Each replica carries one layered sample on the event box, so the crossing
/// indicator of replica r at lambda is [crossing_level_r < lambda], monotone
/// in lambda by construction. At the final lo and hi the indicators are
/// recomputed directly with event_C on the materialized slices; any
/// disagreement or non-monotone replica throws std::logic_error.
/// If the initial interval does not straddle 1/2 it is widened (halving lo,
/// doubling hi) and a warning is recorded.
LambdaBracket bracket_lambda_c(const BracketConfig& config, std::uint64_t seed);

struct LlnRow {
    std::int64_t n = 0;
    std::size_t replicas = 0;
    double g_c1_mean = 0.0;
    double g_c1_sd = 0.0;
    double g_c2_mean = 0.0;
    double g_c2_sd = 0.0;
    double po_c1_mean = 0.0;
    double po_c1_sd = 0.0;
    double po_c2_mean = 0.0;
    double po_c2_sd = 0.0;
};

/// Largest and second-largest component fractions |C_1| / N, |C_2| / N for
/// G and G_Po at each N (both divided by N). Replica r at the k-th N uses
/// seed stream (k, r); G and G_Po share the vertex stream.
/// Throws std::domain_error unless n_list is strictly increasing.
std::vector<LlnRow> lln_experiment(double alpha, double nu, const std::vector<std::int64_t>& n_list,
                                   std::size_t replicas, std::uint64_t seed);

/// Sample mean and standard deviation (n - 1 denominator; 0 for n < 2).
std::pair<double, double> mean_sd(const std::vector<double>& values);

}  // namespace hypergiant
