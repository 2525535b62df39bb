#include "fogalloc/allocators.hpp"

#include "fogalloc/assignment.hpp"
#include "fogalloc/cost.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <numeric>

namespace fogalloc {

namespace {

constexpr std::array kAllAllocators{AllocatorKind::Eeffra, AllocatorKind::LcEeffra, AllocatorKind::CloudOnly,
                                    AllocatorKind::FogOnly, AllocatorKind::FogSimple};

/// A request evaluated at one node.
struct Candidate {
    bool feasible = false;
    double frequency_ghz = std::numeric_limits<double>::quiet_NaN();
    /// Value used to rank nodes: convexified E_cp + E_comm for fog, exact
    /// E_tot for the cloud.
    double rank_cost = 0.0;
    CostBreakdown cost;
};

Candidate evaluate_fog(const Request& r, const Fleet& fleet, std::size_t n, const ScheduleState& state,
                       double instance_time, const FrequencyPolicy& policy) {
    Candidate c;
    const FreqSolution sol = solve_frequency(r, fleet, n, state, instance_time, policy);
    if (!sol.feasible) return c;
    c.cost = total_cost(r, fleet, NodeRef::fog(n), sol.f_star, state, instance_time);
    if (!c.cost.feasible)
        throw InvariantError(fmt::format("request {} at fog {}: f = {} GHz above the delay bound misses the deadline",
                                         r.id, n, sol.f_star));
    c.feasible = true;
    c.frequency_ghz = sol.f_star;
    c.rank_cost = sol.surrogate_objective + c.cost.e_comm;
    return c;
}

Candidate evaluate_cloud(const Request& r, const Fleet& fleet, std::size_t k, const ScheduleState& state,
                         double instance_time) {
    Candidate c;
    c.cost = total_cost(r, fleet, NodeRef::cloud(k), 0.0, state, instance_time);
    c.feasible = c.cost.feasible;
    c.rank_cost = c.cost.e_tot;
    return c;
}

AllocationResult accept(const Request& r, NodeRef node, const Candidate& c) {
    AllocationResult a;
    a.request_id = r.id;
    a.status = Status::Accepted;
    a.node = node;
    a.frequency_ghz = node.is_fog() ? c.frequency_ghz : std::numeric_limits<double>::quiet_NaN();
    a.cost = c.cost;
    return a;
}

std::vector<AllocationResult> all_rejected(std::span<const Request> requests) {
    std::vector<AllocationResult> out;
    out.reserve(requests.size());
    for (const auto& r : requests) out.push_back(AllocationResult::rejected(r.id));
    return out;
}

std::vector<AllocationResult> greedy(std::span<const Request> requests, const Fleet& fleet,
                                     const ScheduleState& state, double instance_time, RandomStreams& rng,
                                     const FrequencyPolicy& policy, bool use_cloud) {
    auto results = all_rejected(requests);
    std::vector<std::size_t> order(requests.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = order.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform_int(Stream::Shuffle, 0, i - 1));
        std::swap(order[i - 1], order[j]);
    }

    ScheduleState working = state;
    std::vector<char> taken(fleet.fog.size(), 0);
    for (std::size_t idx : order) {
        const Request& r = requests[idx];
        std::optional<NodeRef> best_node;
        Candidate best;
        for (std::size_t n = 0; n < fleet.fog.size(); ++n) {
            if (taken[n]) continue;
            Candidate c = evaluate_fog(r, fleet, n, working, instance_time, policy);
            if (c.feasible && (!best_node || c.rank_cost < best.rank_cost)) {
                best = c;
                best_node = NodeRef::fog(n);
            }
        }
        if (use_cloud) {
            for (std::size_t k = 0; k < fleet.clouds.size(); ++k) {
                Candidate c = evaluate_cloud(r, fleet, k, working, instance_time);
                if (c.feasible && (!best_node || c.rank_cost < best.rank_cost)) {
                    best = c;
                    best_node = NodeRef::cloud(k);
                }
            }
        }
        if (!best_node) continue;
        results[idx] = accept(r, *best_node, best);
        if (best_node->is_fog()) {
            taken[best_node->index] = 1;
            update_schedule(working, std::span(&results[idx], 1), instance_time);
        }
    }
    return results;
}

}  // namespace

std::string_view allocator_name(AllocatorKind kind) {
    switch (kind) {
        case AllocatorKind::Eeffra: return "EEFFRA";
        case AllocatorKind::LcEeffra: return "LC_EEFFRA";
        case AllocatorKind::CloudOnly: return "CLOUD_ONLY";
        case AllocatorKind::FogOnly: return "FOG_ONLY";
        case AllocatorKind::FogSimple: return "FOG_SIMPLE";
    }
    return "?";
}

std::optional<AllocatorKind> parse_allocator(std::string_view name) {
    for (auto k : kAllAllocators)
        if (allocator_name(k) == name) return k;
    return std::nullopt;
}

std::span<const AllocatorKind> all_allocators() { return kAllAllocators; }

std::vector<AllocationResult> allocate_eeffra(std::span<const Request> requests, const Fleet& fleet,
                                              const ScheduleState& state, double instance_time,
                                              const FrequencyPolicy& policy) {
    const std::size_t n_req = requests.size();
    const std::size_t n_fog = fleet.fog.size();
    const std::size_t n_cloud = fleet.clouds.size();
    auto results = all_rejected(requests);

    // Frequencies and costs for every (request, node) pair.
    std::vector<std::vector<Candidate>> fog_c(n_req), cloud_c(n_req);
    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < n_req; ++i) {
        bool any = false;
        for (std::size_t n = 0; n < n_fog; ++n) {
            fog_c[i].push_back(evaluate_fog(requests[i], fleet, n, state, instance_time, policy));
            any = any || fog_c[i].back().feasible;
        }
        for (std::size_t k = 0; k < n_cloud; ++k) {
            cloud_c[i].push_back(evaluate_cloud(requests[i], fleet, k, state, instance_time));
            any = any || cloud_c[i].back().feasible;
        }
        if (any) pending.push_back(i);  // otherwise rejected up front
    }

    std::vector<char> fog_free(n_fog, 1);
    auto feasible_free_nodes = [&](std::size_t i) {
        std::size_t count = 0;
        for (std::size_t n = 0; n < n_fog; ++n) count += fog_free[n] && fog_c[i][n].feasible;
        for (std::size_t k = 0; k < n_cloud; ++k) count += cloud_c[i][k].feasible;
        return count;
    };

    // Without a cloud there may be more requests than fog columns; then the
    // most constrained requests go first and the rest wait for whatever fog
    // nodes the previous round left unused.
    for (std::size_t round = 0; round <= n_req && !pending.empty(); ++round) {
        std::vector<std::size_t> batch = pending;
        std::vector<std::size_t> deferred;
        if (n_cloud == 0) {
            const auto free_count = static_cast<std::size_t>(std::count(fog_free.begin(), fog_free.end(), 1));
            if (free_count == 0) break;
            if (batch.size() > free_count) {
                std::stable_sort(batch.begin(), batch.end(), [&](std::size_t a, std::size_t b) {
                    return feasible_free_nodes(a) < feasible_free_nodes(b);
                });
                deferred.assign(batch.begin() + static_cast<std::ptrdiff_t>(free_count), batch.end());
                batch.resize(free_count);
                std::sort(batch.begin(), batch.end());
                std::sort(deferred.begin(), deferred.end());
            }
        }

        // Reject-and-rerun: a row landing on an infeasible cell is dropped
        // and the assignment repeated over the remaining rows.
        for (std::size_t attempt = 0; attempt <= n_req && !batch.empty(); ++attempt) {
            CostTable fog_table(batch.size(), std::vector<std::optional<double>>(n_fog));
            CostTable cloud_table(batch.size(), std::vector<std::optional<double>>(n_cloud));
            for (std::size_t row = 0; row < batch.size(); ++row) {
                const std::size_t i = batch[row];
                for (std::size_t n = 0; n < n_fog; ++n)
                    if (fog_free[n] && fog_c[i][n].feasible) fog_table[row][n] = fog_c[i][n].rank_cost;
                for (std::size_t k = 0; k < n_cloud; ++k)
                    if (cloud_c[i][k].feasible) cloud_table[row][k] = cloud_c[i][k].rank_cost;
            }
            const CostMatrix matrix = build_cost_matrix(fog_table, cloud_table);
            const Assignment assignment = hungarian(matrix.cost);

            std::vector<std::size_t> kept;
            for (std::size_t row = 0; row < batch.size(); ++row)
                if (!matrix.is_big_m(row, assignment.column_of_row[row])) kept.push_back(batch[row]);
            if (kept.size() < batch.size()) {
                batch = std::move(kept);
                continue;
            }

            const auto nodes = extract_allocation(assignment, matrix);
            for (std::size_t row = 0; row < batch.size(); ++row) {
                const std::size_t i = batch[row];
                const NodeRef node = nodes[row];
                const Candidate& c = node.is_fog() ? fog_c[i][node.index] : cloud_c[i][node.index];
                results[i] = accept(requests[i], node, c);
                if (node.is_fog()) fog_free[node.index] = 0;
            }
            break;
        }
        pending = std::move(deferred);
    }
    return results;
}

std::vector<AllocationResult> allocate_lc(std::span<const Request> requests, const Fleet& fleet,
                                          const ScheduleState& state, double instance_time, RandomStreams& rng,
                                          const FrequencyPolicy& policy) {
    return greedy(requests, fleet, state, instance_time, rng, policy, true);
}

std::vector<AllocationResult> allocate_fog_only(std::span<const Request> requests, const Fleet& fleet,
                                                const ScheduleState& state, double instance_time, RandomStreams& rng,
                                                const FrequencyPolicy& policy) {
    return greedy(requests, fleet, state, instance_time, rng, policy, false);
}

std::vector<AllocationResult> allocate_cloud_only(std::span<const Request> requests, const Fleet& fleet,
                                                  double instance_time) {
    auto results = all_rejected(requests);
    const ScheduleState no_queue(fleet.fog.size());
    for (std::size_t i = 0; i < requests.size(); ++i) {
        std::optional<std::size_t> best;
        Candidate best_c;
        for (std::size_t k = 0; k < fleet.clouds.size(); ++k) {
            Candidate c = evaluate_cloud(requests[i], fleet, k, no_queue, instance_time);
            if (c.feasible && (!best || c.rank_cost < best_c.rank_cost)) {
                best = k;
                best_c = c;
            }
        }
        if (best) results[i] = accept(requests[i], NodeRef::cloud(*best), best_c);
    }
    return results;
}

std::vector<AllocationResult> allocate_fog_simple(std::span<const Request> requests, const Fleet& fleet,
                                                  const ScheduleState& state, double instance_time,
                                                  const FrequencyPolicy& policy) {
    auto results = all_rejected(requests);
    std::vector<std::size_t> order(requests.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return requests[a].id < requests[b].id; });

    ScheduleState working = state;
    for (std::size_t idx : order) {
        const Request& r = requests[idx];
        const Candidate c = evaluate_fog(r, fleet, r.origin, working, instance_time, policy);
        if (!c.feasible) continue;
        results[idx] = accept(r, NodeRef::fog(r.origin), c);
        update_schedule(working, std::span(&results[idx], 1), instance_time);
    }
    return results;
}

std::vector<AllocationResult> allocate(AllocatorKind kind, std::span<const Request> requests, const Fleet& fleet,
                                       const ScheduleState& state, double instance_time, RandomStreams& rng,
                                       const FrequencyPolicy& policy) {
    switch (kind) {
        case AllocatorKind::Eeffra: return allocate_eeffra(requests, fleet, state, instance_time, policy);
        case AllocatorKind::LcEeffra: return allocate_lc(requests, fleet, state, instance_time, rng, policy);
        case AllocatorKind::CloudOnly: return allocate_cloud_only(requests, fleet, instance_time);
        case AllocatorKind::FogOnly: return allocate_fog_only(requests, fleet, state, instance_time, rng, policy);
        case AllocatorKind::FogSimple: return allocate_fog_simple(requests, fleet, state, instance_time, policy);
    }
    throw InvariantError("allocate: unknown allocator kind");
}

void apply_schedule(AllocatorKind kind, ScheduleState& state, std::span<const AllocationResult> results,
                    double instance_time) {
    if (kind != AllocatorKind::FogSimple) {
        update_schedule(state, results, instance_time);
        return;
    }
    for (const auto& a : results) update_schedule(state, std::span(&a, 1), instance_time);
}

}  // namespace fogalloc
