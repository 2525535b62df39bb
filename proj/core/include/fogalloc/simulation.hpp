#pragma once

#include "fogalloc/scenario.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace fogalloc {

struct LogEntry {
    std::size_t instance = 0;  // 0-based
    double instance_time = 0.0;
    Request request;
    AllocationResult result;
    /// False for warm-up instances.
    bool counted = false;
};

/// Counts over an intensity x deadline grid, row-major with intensity as
/// the row index.
struct Histogram2D {
    std::vector<double> theta_edges;
    std::vector<double> deadline_edges;
    std::vector<std::size_t> fog;
    std::vector<std::size_t> rejected;
    std::vector<std::size_t> total;

    Histogram2D() = default;
    Histogram2D(Range theta, Range deadline, const HistogramSpec& spec);

    std::size_t theta_bins() const { return theta_edges.empty() ? 0 : theta_edges.size() - 1; }
    std::size_t deadline_bins() const { return deadline_edges.empty() ? 0 : deadline_edges.size() - 1; }
    /// Flat cell index; values outside the edges land in the outer bins.
    std::size_t cell(double theta, double deadline) const;
};

struct RunMetrics {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t accepted_fog = 0;
    double total_energy = 0.0;  // J, accepted requests
    /// E_tot of every accepted request, ascending.
    std::vector<double> energies;
    Histogram2D hist;

    std::size_t requests() const { return accepted + rejected; }
    /// 0 when nothing was counted.
    double rejection_ratio() const;
    /// NaN when nothing was accepted.
    double average_energy() const;
    /// 0 when nothing was accepted.
    double fog_share() const;
};

struct RunResult {
    RunMetrics metrics;
    std::vector<LogEntry> log;
    ScheduleState final_state;
};

/// Runs `config.horizon` instances sequentially from an idle fleet. Warm-up
/// instances update the schedule but are left out of the metrics.
RunResult run(const ScenarioConfig& config);

struct SweepPoint {
    double value = 0.0;
    RunResult result;
};

/// One run per value, each from the same seed; runs execute concurrently.
std::vector<SweepPoint> sweep(const ScenarioConfig& config, SweepAxis axis, std::span<const double> values);

}  // namespace fogalloc
