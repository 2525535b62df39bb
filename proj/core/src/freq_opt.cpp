#include "fogalloc/freq_opt.hpp"

#include "fogalloc/cost.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fogalloc {

namespace {

// Term c * f^(q-1) of g and its derivatives.
double term(double c, std::size_t q, double f) {
    return c * std::pow(f, static_cast<int>(q) - 1);
}
double term_d1(double c, std::size_t q, double f) {
    const int e = static_cast<int>(q) - 1;
    return e == 0 ? 0.0 : c * e * std::pow(f, e - 1);
}
double term_d2(double c, std::size_t q, double f) {
    const int e = static_cast<int>(q) - 1;
    return (e == 0 || e == 1) ? 0.0 : c * e * (e - 1) * std::pow(f, e - 2);
}

template <class Fn>
double sum_terms(const std::vector<double>& coeffs, double f, Fn fn) {
    double acc = 0.0;
    for (std::size_t q = 0; q < coeffs.size(); ++q)
        if (coeffs[q] != 0.0) acc += fn(coeffs[q], q, f);
    return acc;
}

double shape_value(std::span<const double> coeffs, double f) {
    double acc = 0.0;
    for (std::size_t q = 0; q < coeffs.size(); ++q) acc += term(coeffs[q], q, f);
    return acc;
}

}  // namespace

DcSplit DcSplit::from_coeffs(std::span<const double> power_coeffs) {
    DcSplit s;
    s.plus.assign(power_coeffs.size(), 0.0);
    s.minus.assign(power_coeffs.size(), 0.0);
    for (std::size_t q = 0; q < power_coeffs.size(); ++q) {
        const double p = power_coeffs[q];
        // Affine terms carry no curvature and stay in the convex part.
        if (q == 1 || q == 2 || p >= 0.0)
            s.plus[q] = p;
        else
            s.minus[q] = -p;
    }
    return s;
}

bool DcSplit::has_minus() const {
    return std::any_of(minus.begin(), minus.end(), [](double m) { return m != 0.0; });
}

double DcSplit::plus_value(double f) const { return sum_terms(plus, f, term); }
double DcSplit::plus_d1(double f) const { return sum_terms(plus, f, term_d1); }
double DcSplit::plus_d2(double f) const { return sum_terms(plus, f, term_d2); }
double DcSplit::minus_value(double f) const { return sum_terms(minus, f, term); }
double DcSplit::minus_d1(double f) const { return sum_terms(minus, f, term_d1); }

Affine linearize_minus(const DcSplit& split, double f_bar) {
    return {f_bar, split.minus_value(f_bar), split.minus_d1(f_bar)};
}

StationarityResult solve_stationarity(const Surrogate& surrogate, double lo, double hi, int max_iterations,
                                      double tolerance) {
    return solve_stationarity(surrogate, lo, hi, max_iterations, tolerance, 0.5 * (lo + hi));
}

StationarityResult solve_stationarity(const Surrogate& surrogate, double lo, double hi, int max_iterations,
                                      double tolerance, double start) {
    if (!(lo <= hi)) throw DomainError(fmt::format("solve_stationarity: empty range [{}, {}]", lo, hi));
    if (lo == hi) return {lo, 0};

    const double d_lo = surrogate.d1(lo);
    const double d_hi = surrogate.d1(hi);
    const double threshold = tolerance * std::max({std::abs(d_lo), std::abs(d_hi), 1e-300});

    StationarityResult out{lo, 0};
    if (d_lo >= 0.0) {
        out.f = lo;
    } else if (d_hi <= 0.0) {
        out.f = hi;
    } else {
        double a = lo;  // d1 < 0
        double b = hi;  // d1 > 0
        double x = std::clamp(start, lo, hi);
        for (int it = 0; it < max_iterations; ++it) {
            const double d = surrogate.d1(x);
            if (std::abs(d) <= threshold) break;
            ++out.iterations;
            if (d < 0.0)
                a = x;
            else
                b = x;
            const double curvature = surrogate.d2(x);
            double next = curvature > 0.0 ? x - d / curvature : std::numeric_limits<double>::quiet_NaN();
            if (!(next > a && next < b)) next = 0.5 * (a + b);
            if (next == x) break;
            x = next;
        }
        out.f = x;
    }

    // Guard against a non-convex surrogate or a truncated iteration.
    double best = surrogate.value(out.f);
    for (double end : {lo, hi}) {
        const double v = surrogate.value(end);
        if (v < best) {
            best = v;
            out.f = end;
        }
    }
    return out;
}

ShapeSolution minimize_energy_shape(std::span<const double> power_coeffs, double lo, double hi,
                                    const ScaParams& params) {
    if (!(lo <= hi)) throw DomainError(fmt::format("minimize_energy_shape: empty range [{}, {}]", lo, hi));
    const DcSplit split = DcSplit::from_coeffs(power_coeffs);

    std::vector<double> starts;
    switch (params.start) {
        case StartPolicy::Upper: starts = {hi}; break;
        case StartPolicy::Lower: starts = {lo}; break;
        case StartPolicy::BothEnds: starts = lo == hi ? std::vector<double>{hi} : std::vector<double>{hi, lo}; break;
    }

    ShapeSolution best;
    bool have_best = false;
    for (double start : starts) {
        ShapeSolution run;
        double f_bar = start;
        run.trajectory.push_back(shape_value(power_coeffs, f_bar));
        double surrogate_at = split.value(f_bar);
        const int max_sca = std::max(1, params.max_sca_iterations);
        for (int i = 0; i < max_sca; ++i) {
            const Surrogate surrogate(split, linearize_minus(split, f_bar));
            const auto step = solve_stationarity(surrogate, lo, hi, params.max_newton_iterations,
                                                 params.stationarity_tolerance, f_bar);
            ++run.iterations_sca;
            run.iterations_newton += step.iterations;
            double f_new = step.f;
            // Majorize-minimize descent: never accept a point that is worse
            // on the surrogate than the expansion point itself.
            if (surrogate.value(f_new) > surrogate.value(f_bar)) f_new = f_bar;
            const double delta = std::abs(f_new - f_bar);
            f_bar = f_new;
            surrogate_at = surrogate.value(f_bar);
            run.trajectory.push_back(shape_value(power_coeffs, f_bar));
            if (delta <= params.epsilon) break;
        }
        run.f = f_bar;
        run.value = shape_value(power_coeffs, f_bar);
        run.surrogate_value = surrogate_at;
        if (!have_best || run.value < best.value) {
            const int sca = best.iterations_sca + run.iterations_sca;
            const int newton = best.iterations_newton + run.iterations_newton;
            best = std::move(run);
            best.iterations_sca = sca;
            best.iterations_newton = newton;
            have_best = true;
        } else {
            best.iterations_sca += run.iterations_sca;
            best.iterations_newton += run.iterations_newton;
        }
    }
    return best;
}

std::vector<double> real_cubic_roots(double a, double b, double c, double d) {
    std::vector<double> roots;
    const double scale = std::max({std::abs(b), std::abs(c), std::abs(d)});
    if (a == 0.0 || std::abs(a) < 1e-14 * scale) {
        if (b == 0.0) {
            if (c != 0.0) roots.push_back(-d / c);
            return roots;
        }
        const double disc = c * c - 4.0 * b * d;
        if (disc < 0.0) return roots;
        const double sq = std::sqrt(disc);
        const double qq = -0.5 * (c + std::copysign(sq, c));
        if (qq != 0.0) {
            roots.push_back(qq / b);
            roots.push_back(d / qq);
        } else {
            roots.push_back(0.0);
        }
        std::sort(roots.begin(), roots.end());
        return roots;
    }

    const double B = b / a, C = c / a, D = d / a;
    const double p = C - B * B / 3.0;
    const double q = 2.0 * B * B * B / 27.0 - B * C / 3.0 + D;
    const double shift = -B / 3.0;
    const double disc = q * q / 4.0 + p * p * p / 27.0;

    if (disc > 0.0) {
        const double s = std::sqrt(disc);
        roots.push_back(std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s) + shift);
    } else if (p == 0.0) {
        roots.push_back(shift);
    } else {
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            roots.push_back(m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) + shift);
    }

    // Polish on the original cubic.
    for (double& x : roots) {
        for (int it = 0; it < 3; ++it) {
            const double f = ((a * x + b) * x + c) * x + d;
            const double df = (3.0 * a * x + 2.0 * b) * x + c;
            if (df == 0.0) break;
            const double nx = x - f / df;
            if (!std::isfinite(nx)) break;
            x = nx;
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

double analytic_optimum_q3(std::span<const double> power_coeffs, double lo, double hi) {
    if (power_coeffs.size() != 4)
        throw std::invalid_argument(
            fmt::format("analytic_optimum_q3: needs a cubic power model, got degree {}", power_coeffs.size() - 1));
    if (!(lo <= hi)) throw DomainError(fmt::format("analytic_optimum_q3: empty range [{}, {}]", lo, hi));
    const double p0 = power_coeffs[0], p2 = power_coeffs[2], p3 = power_coeffs[3];

    // g(f) = p0/f + p1 + p2 f + p3 f^2, evaluated directly.
    auto g = [&](double f) { return p0 / f + power_coeffs[1] + p2 * f + p3 * f * f; };

    double best_f = lo;
    double best_g = g(lo);
    // f^2 g'(f) = 2 p3 f^3 + p2 f^2 - p0
    for (double root : real_cubic_roots(2.0 * p3, p2, 0.0, -p0)) {
        if (!(root > lo && root < hi)) continue;
        const double v = g(root);
        if (v < best_g) {
            best_g = v;
            best_f = root;
        }
    }
    if (g(hi) < best_g) best_f = hi;
    return best_f;
}

DelayBound f_delay(const Request& r, const Fleet& fleet, std::size_t fog_index, const ScheduleState& state,
                   double instance_time) {
    const NodeRef target = NodeRef::fog(fog_index);
    const auto& node = fleet.fog.at(fog_index);
    const CommDelay comm = delay_comm(r, fleet, target);
    const double queue = delay_queue(r, fleet, target, state, instance_time);

    DelayBound out;
    const double budget = r.deadline - comm.total() - queue;
    if (!(budget > 0.0)) return out;
    out.f_delay_ghz = r.size_bits * r.intensity / (node.flops_per_cycle * budget) / kHzPerGHz;
    if (out.f_delay_ghz > node.f_max_ghz) return out;

    // Same summation order as total_cost so the bound holds bit-for-bit.
    auto total_delay = [&](double f) {
        return comm.up + comm.down + queue + delay_compute(r, node, f);
    };
    double lower = std::max(node.f_min_ghz, out.f_delay_ghz);
    for (int guard = 0; guard < 64 && total_delay(lower) > r.deadline; ++guard)
        lower = std::nextafter(lower, std::numeric_limits<double>::infinity());
    if (total_delay(lower) > r.deadline || lower > node.f_max_ghz) return out;
    out.lower_ghz = lower;
    out.feasible = true;
    return out;
}

FreqSolution solve_frequency(const Request& r, const Fleet& fleet, std::size_t fog_index,
                             const ScheduleState& state, double instance_time, const FrequencyPolicy& policy) {
    FreqSolution out;
    const DelayBound bound = f_delay(r, fleet, fog_index, state, instance_time);
    if (!bound.feasible) return out;
    const auto& node = fleet.fog[fog_index];
    out.lower_bound = bound.lower_ghz;
    const double work_scale = r.size_bits * r.intensity / (node.flops_per_cycle * kHzPerGHz);

    switch (policy.mode) {
        case FrequencyMode::Sca: {
            const auto sol = minimize_energy_shape(node.power_coeffs, bound.lower_ghz, node.f_max_ghz, policy.sca);
            out.f_star = sol.f;
            out.iterations_sca = sol.iterations_sca;
            out.iterations_newton = sol.iterations_newton;
            out.surrogate_objective = work_scale * sol.surrogate_value;
            break;
        }
        case FrequencyMode::Analytic:
            out.f_star = analytic_optimum_q3(node.power_coeffs, bound.lower_ghz, node.f_max_ghz);
            break;
        case FrequencyMode::Fixed:
            if (policy.fixed_ghz < bound.lower_ghz || policy.fixed_ghz > node.f_max_ghz) return out;
            out.f_star = policy.fixed_ghz;
            break;
    }
    out.feasible = true;
    out.objective = energy_compute(r, node, out.f_star);
    if (policy.mode != FrequencyMode::Sca) out.surrogate_objective = out.objective;
    return out;
}

FreqSolution optimize_frequency(const Request& r, const Fleet& fleet, std::size_t fog_index,
                                const ScheduleState& state, double instance_time, const ScaParams& params) {
    return solve_frequency(r, fleet, fog_index, state, instance_time, FrequencyPolicy{FrequencyMode::Sca, params, 0.0});
}

}  // namespace fogalloc
