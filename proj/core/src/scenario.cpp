#include "fogalloc/scenario.hpp"

#include <fmt/format.h>

#include <array>
#include <charconv>
#include <cmath>
#include <utility>

namespace fogalloc {

namespace {

constexpr std::array<std::pair<SweepAxis, std::string_view>, 7> kAxisNames{{
    {SweepAxis::CloudBeta, "cloud_beta"},
    {SweepAxis::FixedFreq, "fixed_freq"},
    {SweepAxis::Deadline, "deadline"},
    {SweepAxis::Size, "size"},
    {SweepAxis::Interarrival, "interarrival"},
    {SweepAxis::Intensity, "intensity"},
    {SweepAxis::IntensityMax, "intensity_max"},
}};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view s, std::string_view what) {
    s = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
        throw ConfigError(fmt::format("sweep: bad {} '{}'", what, s));
    return v;
}

}  // namespace

std::string_view sweep_axis_name(SweepAxis axis) {
    for (const auto& [a, name] : kAxisNames)
        if (a == axis) return name;
    return "?";
}

std::optional<SweepAxis> parse_sweep_axis(std::string_view name) {
    for (const auto& [a, n] : kAxisNames)
        if (n == name) return a;
    return std::nullopt;
}

SweepSpec parse_sweep(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ConfigError(fmt::format("sweep: expected AXIS=VALUES, got '{}'", text));
    const auto axis_name = trim(text.substr(0, eq));
    const auto axis = parse_sweep_axis(axis_name);
    if (!axis) {
        std::string names;
        for (const auto& [a, n] : kAxisNames) names += fmt::format("{}{}", names.empty() ? "" : ", ", n);
        throw ConfigError(fmt::format("sweep: unknown axis '{}' (valid: {})", axis_name, names));
    }
    SweepSpec spec;
    spec.axis = *axis;
    const auto body = trim(text.substr(eq + 1));
    if (body.empty()) throw ConfigError("sweep: no values");

    if (body.find(':') != std::string_view::npos) {
        const auto c1 = body.find(':');
        const auto c2 = body.find(':', c1 + 1);
        if (c2 == std::string_view::npos || body.find(':', c2 + 1) != std::string_view::npos)
            throw ConfigError(fmt::format("sweep: range must be lo:hi:step, got '{}'", body));
        const double lo = parse_number(body.substr(0, c1), "range start");
        const double hi = parse_number(body.substr(c1 + 1, c2 - c1 - 1), "range end");
        const double step = parse_number(body.substr(c2 + 1), "range step");
        if (!(step > 0.0)) throw ConfigError("sweep: range step must be positive");
        if (hi < lo) throw ConfigError("sweep: range end below start");
        // Small slack so that e.g. 1.6:4.2:0.1 includes 4.2.
        const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
        for (std::size_t i = 0; i < count; ++i) spec.values.push_back(lo + static_cast<double>(i) * step);
        return spec;
    }

    std::size_t start = 0;
    while (start <= body.size()) {
        const auto comma = body.find(',', start);
        const auto item = body.substr(start, comma == std::string_view::npos ? body.size() - start : comma - start);
        spec.values.push_back(parse_number(item, "value"));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return spec;
}

void ScenarioConfig::validate() const {
    if (fleet.fog.empty()) throw ConfigError("fog.count: at least one fog node is required");
    fleet.validate();
    traffic.validate(fleet.fog.size());
    if (horizon == 0) throw ConfigError("horizon: must be positive");
    if (warmup > horizon) throw ConfigError(fmt::format("warmup: {} exceeds horizon {}", warmup, horizon));
    if (hist.theta_bins == 0) throw ConfigError("hist.theta_bins: must be positive");
    if (hist.deadline_bins == 0) throw ConfigError("hist.deadline_bins: must be positive");

    const auto& sca = frequency.sca;
    if (sca.max_sca_iterations < 1) throw ConfigError("sca.max_iterations: must be >= 1");
    if (sca.max_newton_iterations < 1) throw ConfigError("sca.newton_iterations: must be >= 1");
    if (!(sca.epsilon > 0.0)) throw ConfigError("sca.epsilon: must be positive");
    if (!(sca.stationarity_tolerance > 0.0)) throw ConfigError("sca.tolerance: must be positive");
    if (frequency.mode == FrequencyMode::Fixed) {
        for (const auto& n : fleet.fog)
            if (!(frequency.fixed_ghz >= n.f_min_ghz && frequency.fixed_ghz <= n.f_max_ghz))
                throw ConfigError(fmt::format("frequency.fixed: {} GHz outside [{}, {}] of fog node {}",
                                              frequency.fixed_ghz, n.f_min_ghz, n.f_max_ghz, n.id));
    }
    if (frequency.mode == FrequencyMode::Analytic)
        for (const auto& n : fleet.fog)
            if (n.power_coeffs.size() != 4)
                throw ConfigError(fmt::format(
                    "frequency.mode: analytic needs cubic power coefficients, fog node {} has {}", n.id,
                    n.power_coeffs.size()));

    if (sweep) {
        if (sweep->values.empty()) throw ConfigError("sweep: no values");
        for (double v : sweep->values) {
            if (!std::isfinite(v)) throw ConfigError("sweep: values must be finite");
            apply_sweep_value(*this, sweep->axis, v).traffic.validate(fleet.fog.size());
        }
    }
}

FogNodeSpec reference_fog_node(std::size_t id) {
    FogNodeSpec n;
    n.id = id;
    n.power_coeffs = {-47.152, 88.594, 34.256, 5.222};
    n.f_min_ghz = 1.6;
    n.f_max_ghz = 4.2;
    n.flops_per_cycle = 16.0;
    n.gamma_per_hop = 0.3e-9;
    n.bitrate = 1e9;
    return n;
}

CloudSpec reference_cloud(std::size_t id) {
    CloudSpec c;
    c.id = id;
    c.beta = 1.3e9;
    c.frequency_ghz = 1.5;
    c.flops_per_cycle = 32.0;
    c.distance_km = 2000.0;
    c.gamma = 10e-9;
    c.backhaul_bitrate = 1e9;
    c.chi_rtt = 7.5e-6;
    return c;
}

ScenarioConfig reference_scenario() {
    ScenarioConfig c;
    for (std::size_t i = 0; i < 10; ++i) c.fleet.fog.push_back(reference_fog_node(i));
    c.fleet.clouds.push_back(reference_cloud(0));
    return c;
}

ScenarioConfig fixed_frequency_mode(ScenarioConfig config, double f_ghz) {
    if (!std::isfinite(f_ghz)) throw ConfigError("fixed frequency: not a finite number");
    for (const auto& n : config.fleet.fog)
        if (f_ghz < n.f_min_ghz || f_ghz > n.f_max_ghz)
            throw ConfigError(fmt::format("fixed frequency: {} GHz outside [{}, {}] of fog node {}", f_ghz,
                                          n.f_min_ghz, n.f_max_ghz, n.id));
    config.frequency.mode = FrequencyMode::Fixed;
    config.frequency.fixed_ghz = f_ghz;
    return config;
}

ScenarioConfig apply_sweep_value(ScenarioConfig config, SweepAxis axis, double value) {
    switch (axis) {
        case SweepAxis::CloudBeta:
            if (!(value > 0.0)) throw ConfigError(fmt::format("sweep cloud_beta: {} must be positive", value));
            for (auto& c : config.fleet.clouds) c.beta = value * 1e9;
            break;
        case SweepAxis::FixedFreq: return fixed_frequency_mode(std::move(config), value);
        case SweepAxis::Deadline: config.traffic.deadline = {value * 1e-3, value * 1e-3}; break;
        case SweepAxis::Size:
            config.traffic.size_bits = {value * kBitsPerMegabyte, value * kBitsPerMegabyte};
            break;
        case SweepAxis::Interarrival: config.traffic.mean_interarrival = value * 1e-3; break;
        case SweepAxis::Intensity: config.traffic.intensity = {value, value}; break;
        case SweepAxis::IntensityMax: config.traffic.intensity.max = value; break;
    }
    return config;
}

}  // namespace fogalloc
