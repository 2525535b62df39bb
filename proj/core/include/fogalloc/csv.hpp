#pragma once

// CSV output. Numbers use 12 significant digits; rows follow run order, then
// sweep-value order, then log / bin order.

#include "fogalloc/simulation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fogalloc {

/// One simulation run inside an experiment.
struct RunRecord {
    AllocatorKind allocator = AllocatorKind::Eeffra;
    std::optional<SweepAxis> axis;
    double value = 0.0;  // sweep value in the axis unit; unused without a sweep
    RunResult result;
};

/// Results of running several allocators on one scenario (and its sweep, if
/// any), all from the same seed.
struct OutputBundle {
    std::vector<RunRecord> runs;

    std::string requests_csv() const;
    std::string summary_csv() const;
    std::string cdf_csv() const;
    std::string hist2d_csv() const;
};

/// Throws ConfigError on an empty allocator list.
OutputBundle compare_allocators(const ScenarioConfig& config, const std::vector<AllocatorKind>& allocators);

}  // namespace fogalloc
