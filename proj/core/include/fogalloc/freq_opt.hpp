#pragma once

// Per (request, fog node) CPU frequency selection.
//
// With beta substituted, fog compute energy is K * g(f) where
// K = L*theta / (s * 1e9) and g(f) = sum_q p_q f^(q-1). The q = 0 and q >= 3
// terms decide convexity; q = 1, 2 are affine in f. g is split into
// g = g+ - g- with both parts convex, g- is replaced by its tangent at the
// current iterate, and the resulting convex surrogate is minimized with a
// bracketed Newton iteration. Repeating this from the new point is the
// successive convex approximation loop.

#include "fogalloc/model.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace fogalloc {

/// Coefficients of g = g+ - g- . Both vectors are indexed by q like the
/// power polynomial; `minus` stores magnitudes so g- >= 0 for f > 0.
struct DcSplit {
    std::vector<double> plus;
    std::vector<double> minus;

    static DcSplit from_coeffs(std::span<const double> power_coeffs);

    bool has_minus() const;
    double plus_value(double f) const;
    double plus_d1(double f) const;
    double plus_d2(double f) const;
    double minus_value(double f) const;
    double minus_d1(double f) const;
    double value(double f) const { return plus_value(f) - minus_value(f); }
};

/// value + slope * (f - at)
struct Affine {
    double at = 0.0;
    double value = 0.0;
    double slope = 0.0;

    double operator()(double f) const { return value + slope * (f - at); }
};

/// First-order Taylor expansion of g- at f_bar. Since g- is convex this is a
/// global under-estimator of g-, so g+ - tangent majorizes g.
Affine linearize_minus(const DcSplit& split, double f_bar);

/// g+(f) - tangent(f): convex in f on f > 0.
class Surrogate {
public:
    Surrogate(const DcSplit& split, Affine tangent) : split_(&split), tangent_(tangent) {}

    double value(double f) const { return split_->plus_value(f) - tangent_(f); }
    double d1(double f) const { return split_->plus_d1(f) - tangent_.slope; }
    double d2(double f) const { return split_->plus_d2(f); }

private:
    const DcSplit* split_;
    Affine tangent_;
};

struct StationarityResult {
    double f = 0.0;
    int iterations = 0;
};

/// Minimizer of `surrogate` over [lo, hi]: Newton on the first derivative,
/// falling back to bisection whenever a step leaves the current bracket or
/// the curvature is not positive. Endpoints are returned when the derivative
/// does not change sign. Stops when |d1| <= tolerance * (derivative scale) or
/// after `max_iterations`. Throws DomainError if lo > hi.
StationarityResult solve_stationarity(const Surrogate& surrogate, double lo, double hi, int max_iterations,
                                      double tolerance, double start);
StationarityResult solve_stationarity(const Surrogate& surrogate, double lo, double hi, int max_iterations,
                                      double tolerance);

/// Initial linearization point(s) of the SCA loop.
enum class StartPolicy {
    Upper,     // f_max
    Lower,     // max(f_min, f_delay)
    BothEnds,  // run from both and keep the lower exact energy
};

struct ScaParams {
    int max_sca_iterations = 10;
    int max_newton_iterations = 20;
    double epsilon = 1e-6;  // GHz
    double stationarity_tolerance = 1e-9;
    StartPolicy start = StartPolicy::BothEnds;

    bool operator==(const ScaParams&) const = default;
};

/// Result of the SCA loop on the per-unit-work energy shape g.
struct ShapeSolution {
    double f = 0.0;
    double value = 0.0;            // exact g(f)
    double surrogate_value = 0.0;  // last surrogate evaluated at f
    int iterations_sca = 0;
    int iterations_newton = 0;
    /// Exact g at every iterate of the run that produced `f`, starting
    /// with the initial point.
    std::vector<double> trajectory;
};

ShapeSolution minimize_energy_shape(std::span<const double> power_coeffs, double lo, double hi,
                                    const ScaParams& params);

/// Closed-form minimizer of g over [lo, hi] for cubic power models: the real
/// roots of 2 p3 f^3 + p2 f^2 - p0 = 0 inside the interval compared with both
/// endpoints. Throws std::invalid_argument unless exactly four coefficients
/// are given.
double analytic_optimum_q3(std::span<const double> power_coeffs, double lo, double hi);

/// Real roots of a x^3 + b x^2 + c x + d, ascending. Degenerate leading
/// coefficients fall back to the quadratic / linear case.
std::vector<double> real_cubic_roots(double a, double b, double c, double d);

/// Minimum frequency meeting the deadline at a fog node.
struct DelayBound {
    bool feasible = false;
    double f_delay_ghz = 0.0;  // unclamped bound; may be below f_min
    /// max(f_min, f_delay), nudged up by ulps until D_tot <= D_max holds in
    /// floating point. Only meaningful when feasible.
    double lower_ghz = 0.0;
};

DelayBound f_delay(const Request& r, const Fleet& fleet, std::size_t fog_index, const ScheduleState& state,
                   double instance_time);

enum class FrequencyMode {
    Sca,       // successive convex approximation (default)
    Analytic,  // exact cubic oracle, Q = 3 only
    Fixed,     // every fog node runs at one frequency
};

struct FrequencyPolicy {
    FrequencyMode mode = FrequencyMode::Sca;
    ScaParams sca;
    double fixed_ghz = 0.0;

    bool operator==(const FrequencyPolicy&) const = default;
};

struct FreqSolution {
    bool feasible = false;
    double f_star = 0.0;  // GHz
    double lower_bound = 0.0;
    int iterations_sca = 0;
    int iterations_newton = 0;
    double objective = 0.0;            // exact E_cp at f_star, J
    double surrogate_objective = 0.0;  // convexified E_cp at f_star, J
};

/// Frequency for `r` at fog node `fog_index` under the given policy.
FreqSolution solve_frequency(const Request& r, const Fleet& fleet, std::size_t fog_index,
                             const ScheduleState& state, double instance_time, const FrequencyPolicy& policy);

/// SCA frequency search on [max(f_min, f_delay), f_max].
FreqSolution optimize_frequency(const Request& r, const Fleet& fleet, std::size_t fog_index,
                                const ScheduleState& state, double instance_time, const ScaParams& params);

}  // namespace fogalloc
