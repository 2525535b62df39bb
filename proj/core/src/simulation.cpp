#include "fogalloc/simulation.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <future>

namespace fogalloc {

namespace {

std::vector<double> edges(Range r, std::size_t bins) {
    std::vector<double> e(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i)
        e[i] = r.min + (r.max - r.min) * static_cast<double>(i) / static_cast<double>(bins);
    e.back() = r.max;
    return e;
}

std::size_t bin_of(const std::vector<double>& e, double x) {
    const std::size_t bins = e.size() - 1;
    const double lo = e.front();
    const double hi = e.back();
    if (!(hi > lo) || x <= lo) return 0;
    if (x >= hi) return bins - 1;
    const auto b = static_cast<std::size_t>((x - lo) / (hi - lo) * static_cast<double>(bins));
    return std::min(b, bins - 1);
}

}  // namespace

Histogram2D::Histogram2D(Range theta, Range deadline, const HistogramSpec& spec)
    : theta_edges(edges(theta, spec.theta_bins)),
      deadline_edges(edges(deadline, spec.deadline_bins)),
      fog(spec.theta_bins * spec.deadline_bins, 0),
      rejected(spec.theta_bins * spec.deadline_bins, 0),
      total(spec.theta_bins * spec.deadline_bins, 0) {}

std::size_t Histogram2D::cell(double theta, double deadline) const {
    return bin_of(theta_edges, theta) * deadline_bins() + bin_of(deadline_edges, deadline);
}

double RunMetrics::rejection_ratio() const {
    return requests() == 0 ? 0.0 : static_cast<double>(rejected) / static_cast<double>(requests());
}

double RunMetrics::average_energy() const {
    return accepted == 0 ? std::nan("") : total_energy / static_cast<double>(accepted);
}

double RunMetrics::fog_share() const {
    return accepted == 0 ? 0.0 : static_cast<double>(accepted_fog) / static_cast<double>(accepted);
}

RunResult run(const ScenarioConfig& config) {
    config.validate();

    RunResult out;
    RunMetrics& m = out.metrics;
    m.hist = Histogram2D(config.traffic.intensity, config.traffic.deadline, config.hist);

    RequestGenerator generator(config.traffic, config.fleet.fog.size(), config.seed);
    ScheduleState state(config.fleet.fog.size());

    for (std::size_t k = 0; k < config.horizon; ++k) {
        const Instance inst = generator.next();
        const auto results = allocate(config.allocator, inst.requests, config.fleet, state, inst.arrival_time,
                                      generator.streams(), config.frequency);

        const ScheduleState before = state;
        apply_schedule(config.allocator, state, results, inst.arrival_time);
        for (std::size_t n = 0; n < state.busy_until.size(); ++n)
            if (state.busy_until[n] < before.busy_until[n])
                throw InvariantError(fmt::format("instance {}: busy time of fog node {} went back from {} to {}", k,
                                                 n, before.busy_until[n], state.busy_until[n]));

        const bool counted = k >= config.warmup;
        for (std::size_t i = 0; i < inst.requests.size(); ++i) {
            const Request& r = inst.requests[i];
            const AllocationResult& a = results[i];
            out.log.push_back({inst.index, inst.arrival_time, r, a, counted});
            if (!counted) continue;
            const std::size_t cell = m.hist.cell(r.intensity, r.deadline);
            ++m.hist.total[cell];
            if (!a.accepted()) {
                ++m.rejected;
                ++m.hist.rejected[cell];
                continue;
            }
            ++m.accepted;
            m.total_energy += a.cost.e_tot;
            m.energies.push_back(a.cost.e_tot);
            if (a.node->is_fog()) {
                ++m.accepted_fog;
                ++m.hist.fog[cell];
            }
        }
    }
    std::sort(m.energies.begin(), m.energies.end());
    out.final_state = std::move(state);
    return out;
}

std::vector<SweepPoint> sweep(const ScenarioConfig& config, SweepAxis axis, std::span<const double> values) {
    // Build every point's config first so configuration errors surface before
    // any run starts.
    std::vector<ScenarioConfig> configs;
    configs.reserve(values.size());
    for (double v : values) {
        configs.push_back(apply_sweep_value(config, axis, v));
        configs.back().sweep.reset();
        configs.back().validate();
    }

    std::vector<std::future<RunResult>> futures;
    futures.reserve(configs.size());
    for (const auto& c : configs) futures.push_back(std::async(std::launch::async, [&c] { return run(c); }));

    std::vector<SweepPoint> points;
    points.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) points.push_back({values[i], futures[i].get()});
    return points;
}

}  // namespace fogalloc
