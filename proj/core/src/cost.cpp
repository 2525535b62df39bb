#include "fogalloc/cost.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <vector>

namespace fogalloc {

namespace {

void check_bounds(const FogNodeSpec& node, double f_ghz) {
    if (!(f_ghz >= node.f_min_ghz && f_ghz <= node.f_max_ghz))
        throw DomainError(fmt::format("fog node {}: frequency {} GHz outside [{}, {}]", node.id, f_ghz,
                                      node.f_min_ghz, node.f_max_ghz));
}

const FogNodeSpec& fog_at(const Fleet& fleet, std::size_t i) {
    if (i >= fleet.fog.size()) throw std::out_of_range(fmt::format("unknown fog node {}", i));
    return fleet.fog[i];
}

const CloudSpec& cloud_at(const Fleet& fleet, std::size_t i) {
    if (i >= fleet.clouds.size()) throw std::out_of_range(fmt::format("unknown cloud {}", i));
    return fleet.clouds[i];
}

}  // namespace

double power_active(const FogNodeSpec& node, double f_ghz) {
    check_bounds(node, f_ghz);
    double acc = 0.0;
    for (auto it = node.power_coeffs.rbegin(); it != node.power_coeffs.rend(); ++it) acc = acc * f_ghz + *it;
    return acc;
}

double beta_fog(const FogNodeSpec& node, double f_ghz) {
    const double p = power_active(node, f_ghz);
    if (!(p > 0.0))
        throw ModelError(fmt::format("fog node {}: non-positive power {} W at {} GHz", node.id, p, f_ghz));
    return f_ghz * kHzPerGHz * node.flops_per_cycle / p;
}

double energy_compute(const Request& r, const FogNodeSpec& node, double f_ghz) {
    return r.size_bits * r.intensity / beta_fog(node, f_ghz);
}

double energy_compute(const Request& r, const CloudSpec& cloud) {
    return r.size_bits * r.intensity / cloud.beta;
}

double energy_compute_expanded(const Request& r, const FogNodeSpec& node, double f_ghz) {
    check_bounds(node, f_ghz);
    const auto& p = node.power_coeffs;
    double bracket = p[0] / f_ghz;
    for (std::size_t q = 1; q < p.size(); ++q) bracket += p[q] * std::pow(f_ghz, static_cast<double>(q - 1));
    return r.size_bits * r.intensity / (node.flops_per_cycle * kHzPerGHz) * bracket;
}

double energy_comm(const Request& r, const Fleet& fleet, NodeRef target) {
    const double bits = r.size_bits * (1.0 + r.output_ratio);
    if (target.is_fog()) {
        fog_at(fleet, target.index);
        if (target.index == r.origin) return 0.0;
        const auto& origin = fog_at(fleet, r.origin);
        return bits * origin.gamma_per_hop * fleet.hops(r.origin, target.index);
    }
    return bits * cloud_at(fleet, target.index).gamma;
}

double delay_compute(const Request& r, const FogNodeSpec& node, double f_ghz) {
    return r.size_bits * r.intensity / (f_ghz * kHzPerGHz * node.flops_per_cycle);
}

double delay_compute(const Request& r, const CloudSpec& cloud) {
    return r.size_bits * r.intensity / (cloud.frequency_ghz * kHzPerGHz * cloud.flops_per_cycle);
}

CommDelay delay_comm(const Request& r, const Fleet& fleet, NodeRef target) {
    if (target.is_fog()) {
        fog_at(fleet, target.index);
        if (target.index == r.origin) return {};
        const double rate = fog_at(fleet, r.origin).bitrate;
        return {r.size_bits / rate, r.size_bits * r.output_ratio / rate};
    }
    const auto& c = cloud_at(fleet, target.index);
    return {r.size_bits / c.backhaul_bitrate + c.distance_km * c.chi_rtt,
            r.size_bits * r.output_ratio / c.backhaul_bitrate};
}

double delay_queue(const Request& r, const Fleet& fleet, NodeRef target, const ScheduleState& state,
                   double instance_time) {
    if (!target.is_fog()) {
        cloud_at(fleet, target.index);
        return 0.0;
    }
    fog_at(fleet, target.index);
    const double up = delay_comm(r, fleet, target).up;
    const double busy = state.busy_until.at(target.index);
    // Compare before subtracting so that t_n == T_k + D_up gives exactly 0.
    if (busy <= instance_time + up) return 0.0;
    return busy - instance_time - up;
}

CostBreakdown total_cost(const Request& r, const Fleet& fleet, NodeRef target, double f_ghz,
                         const ScheduleState& state, double instance_time) {
    CostBreakdown c;
    const CommDelay comm = delay_comm(r, fleet, target);
    c.d_comm_up = comm.up;
    c.d_comm_down = comm.down;
    c.d_queue = delay_queue(r, fleet, target, state, instance_time);
    c.e_comm = energy_comm(r, fleet, target);
    if (target.is_fog()) {
        const auto& node = fleet.fog[target.index];
        c.e_cp = energy_compute(r, node, f_ghz);
        c.d_cp = delay_compute(r, node, f_ghz);
    } else {
        const auto& cloud = fleet.clouds[target.index];
        c.e_cp = energy_compute(r, cloud);
        c.d_cp = delay_compute(r, cloud);
    }
    c.e_tot = c.e_cp + c.e_comm;
    c.d_tot = c.d_comm_up + c.d_comm_down + c.d_queue + c.d_cp;
    c.feasible = c.d_tot <= r.deadline;
    return c;
}

void update_schedule(ScheduleState& state, std::span<const AllocationResult> allocations, double instance_time) {
    std::vector<bool> touched(state.busy_until.size(), false);
    for (const auto& a : allocations) {
        if (!a.accepted() || !a.node || !a.node->is_fog()) continue;
        const std::size_t n = a.node->index;
        if (n >= state.busy_until.size())
            throw InvariantError(fmt::format("update_schedule: unknown fog node {}", n));
        if (touched[n])
            throw InvariantError(fmt::format("update_schedule: fog node {} received two requests in one instance", n));
        touched[n] = true;
        const double finish = instance_time + a.cost.d_comm_up + a.cost.d_queue + a.cost.d_cp;
        state.busy_until[n] = std::max(state.busy_until[n], finish);
    }
}

}  // namespace fogalloc
