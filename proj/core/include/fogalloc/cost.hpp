#pragma once

// Energy and delay of processing one request at one node, and the
// busy-until update applied after each instance.

#include "fogalloc/model.hpp"

#include <span>
#include <stdexcept>

namespace fogalloc {

/// Thrown when a frequency lies outside a node's [f_min, f_max].
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Sum_q p_q f^q in watts, f in GHz.
double power_active(const FogNodeSpec& node, double f_ghz);

/// Computational efficiency f*s/P(f) in FLOP/(s*W).
double beta_fog(const FogNodeSpec& node, double f_ghz);

/// E_cp = L*theta / beta.
double energy_compute(const Request& r, const FogNodeSpec& node, double f_ghz);
double energy_compute(const Request& r, const CloudSpec& cloud);

/// The same fog energy written as (L*theta/s) [p_0/f + sum_{q>=1} p_q f^(q-1)],
/// evaluated term by term. Agrees with energy_compute to rounding.
double energy_compute_expanded(const Request& r, const FogNodeSpec& node, double f_ghz);

/// L(1+o)*gamma; gamma is per hop between fog nodes and zero for n == origin.
double energy_comm(const Request& r, const Fleet& fleet, NodeRef target);

double delay_compute(const Request& r, const FogNodeSpec& node, double f_ghz);
double delay_compute(const Request& r, const CloudSpec& cloud);

struct CommDelay {
    double up = 0.0;
    double down = 0.0;
    double total() const { return up + down; }
};

/// Uplink/downlink transfer delay. For the cloud the distance term d*chi is
/// counted once, on the uplink.
CommDelay delay_comm(const Request& r, const Fleet& fleet, NodeRef target);

/// max(0, t_n - T_k - D_up) for fog nodes, 0 for the cloud.
double delay_queue(const Request& r, const Fleet& fleet, NodeRef target, const ScheduleState& state,
                   double instance_time);

/// All energy and delay components of serving `r` at `target`. `f_ghz` is
/// ignored for cloud targets.
CostBreakdown total_cost(const Request& r, const Fleet& fleet, NodeRef target, double f_ghz,
                         const ScheduleState& state, double instance_time);

/// t_n := max(t_n, T_k + D_up + D_queue + D_cp) for every accepted fog
/// allocation. At most one accepted request per fog node is allowed; a second
/// one throws InvariantError.
void update_schedule(ScheduleState& state, std::span<const AllocationResult> allocations, double instance_time);

}  // namespace fogalloc
