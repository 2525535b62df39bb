#pragma once

#include "fogalloc/allocators.hpp"
#include "fogalloc/freq_opt.hpp"
#include "fogalloc/generator.hpp"
#include "fogalloc/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fogalloc {

/// Parameters a sweep can vary. Sweep values are given in the unit noted
/// next to each axis.
enum class SweepAxis {
    CloudBeta,     // GFLOP/(s*W), applied to every cloud
    FixedFreq,     // GHz, switches fog nodes to a fixed frequency
    Deadline,      // ms, every request gets this D_max
    Size,          // MB, every request gets this L
    Interarrival,  // ms, mean inter-arrival time
    Intensity,     // FLOP/bit, every request gets this theta
    IntensityMax,  // FLOP/bit, upper end of the theta range
};

std::string_view sweep_axis_name(SweepAxis axis);
std::optional<SweepAxis> parse_sweep_axis(std::string_view name);

struct SweepSpec {
    SweepAxis axis = SweepAxis::CloudBeta;
    std::vector<double> values;

    bool operator==(const SweepSpec&) const = default;
};

/// Parses "axis=v1,v2,..." or "axis=lo:hi:step" (lo, lo+step, ... up to hi
/// inclusive). Throws ConfigError.
SweepSpec parse_sweep(std::string_view text);

struct HistogramSpec {
    std::size_t theta_bins = 10;
    std::size_t deadline_bins = 10;

    bool operator==(const HistogramSpec&) const = default;
};

struct ScenarioConfig {
    Fleet fleet;
    TrafficConfig traffic;
    std::size_t horizon = 550;
    std::size_t warmup = 50;
    std::uint64_t seed = 1;
    AllocatorKind allocator = AllocatorKind::Eeffra;
    FrequencyPolicy frequency;
    HistogramSpec hist;
    std::optional<SweepSpec> sweep;

    /// Throws ConfigError naming the offending field.
    void validate() const;

    bool operator==(const ScenarioConfig&) const = default;
};

/// Fog node and cloud parameters of the reference setup.
FogNodeSpec reference_fog_node(std::size_t id);
CloudSpec reference_cloud(std::size_t id);

/// Reference scenario: 10 identical fog nodes, one cloud, default traffic.
ScenarioConfig reference_scenario();

/// Copy of `config` with every fog node pinned to `f_ghz`. Throws
/// ConfigError if `f_ghz` lies outside some node's [f_min, f_max].
ScenarioConfig fixed_frequency_mode(ScenarioConfig config, double f_ghz);

/// Copy of `config` with one sweep value applied (value in the axis unit).
ScenarioConfig apply_sweep_value(ScenarioConfig config, SweepAxis axis, double value);

}  // namespace fogalloc
