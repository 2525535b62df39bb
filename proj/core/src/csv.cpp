#include "fogalloc/csv.hpp"

#include <fmt/format.h>

#include <iterator>

namespace fogalloc {

namespace {

std::string num(double v) { return fmt::format("{:.12g}", v); }

std::string prefix(const RunRecord& r) {
    if (!r.axis) return fmt::format("{},,", allocator_name(r.allocator));
    return fmt::format("{},{},{}", allocator_name(r.allocator), sweep_axis_name(*r.axis), num(r.value));
}

}  // namespace

std::string OutputBundle::requests_csv() const {
    std::string out =
        "allocator,sweep_axis,sweep_value,instance,instance_time_s,request_id,size_bits,intensity,output_ratio,"
        "origin,deadline_s,counted,status,node,frequency_ghz,e_cp_j,e_comm_j,e_tot_j,d_comm_up_s,d_comm_down_s,"
        "d_queue_s,d_cp_s,d_tot_s\n";
    auto it = std::back_inserter(out);
    for (const auto& run : runs) {
        const std::string p = prefix(run);
        for (const auto& e : run.result.log) {
            const auto& r = e.request;
            const auto& a = e.result;
            fmt::format_to(it, "{},{},{},{},{},{},{},{},{},{},{},", p, e.instance, num(e.instance_time), r.id,
                           num(r.size_bits), num(r.intensity), num(r.output_ratio), r.origin, num(r.deadline),
                           e.counted ? 1 : 0, a.accepted() ? "accepted" : "rejected");
            if (!a.accepted()) {
                out += ",,,,,,,,,\n";
                continue;
            }
            const auto& c = a.cost;
            fmt::format_to(it, "{},{},{},{},{},{},{},{},{},{}\n", to_string(*a.node),
                           a.node->is_fog() ? num(a.frequency_ghz) : std::string(), num(c.e_cp), num(c.e_comm),
                           num(c.e_tot), num(c.d_comm_up), num(c.d_comm_down), num(c.d_queue), num(c.d_cp),
                           num(c.d_tot));
        }
    }
    return out;
}

std::string OutputBundle::summary_csv() const {
    std::string out =
        "allocator,sweep_axis,sweep_value,requests,accepted,rejected,rejection_pct,avg_energy_j,total_energy_j,"
        "fog_share\n";
    auto it = std::back_inserter(out);
    for (const auto& run : runs) {
        const auto& m = run.result.metrics;
        fmt::format_to(it, "{},{},{},{},{},{},{},{}\n", prefix(run), m.requests(), m.accepted, m.rejected,
                       num(100.0 * m.rejection_ratio()), num(m.average_energy()), num(m.total_energy),
                       num(m.fog_share()));
    }
    return out;
}

std::string OutputBundle::cdf_csv() const {
    std::string out = "allocator,sweep_axis,sweep_value,rank,e_tot_j,cumulative_fraction\n";
    auto it = std::back_inserter(out);
    for (const auto& run : runs) {
        const auto& m = run.result.metrics;
        const std::string p = prefix(run);
        // Rejected requests count as infinite energy: they stay in the
        // denominator, so the curve tops out at the acceptance ratio.
        const auto n = static_cast<double>(m.requests());
        for (std::size_t i = 0; i < m.energies.size(); ++i)
            fmt::format_to(it, "{},{},{},{}\n", p, i + 1, num(m.energies[i]), num(static_cast<double>(i + 1) / n));
    }
    return out;
}

std::string OutputBundle::hist2d_csv() const {
    std::string out =
        "allocator,sweep_axis,sweep_value,intensity_lo,intensity_hi,deadline_lo_s,deadline_hi_s,fog,rejected,"
        "total\n";
    auto it = std::back_inserter(out);
    for (const auto& run : runs) {
        const auto& h = run.result.metrics.hist;
        const std::string p = prefix(run);
        for (std::size_t i = 0; i < h.theta_bins(); ++i)
            for (std::size_t j = 0; j < h.deadline_bins(); ++j) {
                const std::size_t cell = i * h.deadline_bins() + j;
                fmt::format_to(it, "{},{},{},{},{},{},{},{}\n", p, num(h.theta_edges[i]), num(h.theta_edges[i + 1]),
                               num(h.deadline_edges[j]), num(h.deadline_edges[j + 1]), h.fog[cell],
                               h.rejected[cell], h.total[cell]);
            }
    }
    return out;
}

OutputBundle compare_allocators(const ScenarioConfig& config, const std::vector<AllocatorKind>& allocators) {
    if (allocators.empty()) throw ConfigError("allocator list is empty");
    config.validate();
    OutputBundle bundle;
    for (AllocatorKind kind : allocators) {
        ScenarioConfig c = config;
        c.allocator = kind;
        if (!c.sweep) {
            bundle.runs.push_back({kind, std::nullopt, 0.0, run(c)});
            continue;
        }
        const SweepSpec spec = *c.sweep;
        for (auto& point : sweep(c, spec.axis, spec.values))
            bundle.runs.push_back({kind, spec.axis, point.value, std::move(point.result)});
    }
    return bundle;
}

}  // namespace fogalloc
