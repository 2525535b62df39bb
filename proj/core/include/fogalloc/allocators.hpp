#pragma once

// Per-instance allocation strategies. Each maps the requests of one instance
// to AllocationResults (in the order the requests were given) without
// touching the caller's ScheduleState; apply_schedule commits the outcome.

#include "fogalloc/freq_opt.hpp"
#include "fogalloc/model.hpp"
#include "fogalloc/rng.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace fogalloc {

enum class AllocatorKind { Eeffra, LcEeffra, CloudOnly, FogOnly, FogSimple };

std::string_view allocator_name(AllocatorKind kind);
/// Exact, case-sensitive match on the names returned by allocator_name.
std::optional<AllocatorKind> parse_allocator(std::string_view name);
std::span<const AllocatorKind> all_allocators();

/// Optimal assignment over fog nodes and (replicated) clouds with per-pair
/// SCA frequencies. Requests that cannot meet their deadline anywhere, or
/// that end up on an infeasible cell, are rejected.
std::vector<AllocationResult> allocate_eeffra(std::span<const Request> requests, const Fleet& fleet,
                                              const ScheduleState& state, double instance_time,
                                              const FrequencyPolicy& policy);

/// Greedy variant: requests are visited in random order and each takes the
/// cheapest feasible node left, updating busy times as it goes.
std::vector<AllocationResult> allocate_lc(std::span<const Request> requests, const Fleet& fleet,
                                          const ScheduleState& state, double instance_time, RandomStreams& rng,
                                          const FrequencyPolicy& policy);

std::vector<AllocationResult> allocate_cloud_only(std::span<const Request> requests, const Fleet& fleet,
                                                  double instance_time);

/// allocate_lc restricted to fog nodes.
std::vector<AllocationResult> allocate_fog_only(std::span<const Request> requests, const Fleet& fleet,
                                                const ScheduleState& state, double instance_time, RandomStreams& rng,
                                                const FrequencyPolicy& policy);

/// Every request stays at its origin fog node. Several requests sharing an
/// origin are queued there in id order.
std::vector<AllocationResult> allocate_fog_simple(std::span<const Request> requests, const Fleet& fleet,
                                                  const ScheduleState& state, double instance_time,
                                                  const FrequencyPolicy& policy);

std::vector<AllocationResult> allocate(AllocatorKind kind, std::span<const Request> requests, const Fleet& fleet,
                                       const ScheduleState& state, double instance_time, RandomStreams& rng,
                                       const FrequencyPolicy& policy);

/// Commits an instance's results to `state`. FOG_SIMPLE results are applied
/// one at a time since they may share a node; all others go through
/// update_schedule as one batch.
void apply_schedule(AllocatorKind kind, ScheduleState& state, std::span<const AllocationResult> results,
                    double instance_time);

}  // namespace fogalloc
