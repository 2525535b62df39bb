#include "fogalloc/config_io.hpp"

#include <fmt/format.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace fogalloc {

namespace {

enum class Unit { None, Bits, Time, Frequency, EnergyPerBit, Bitrate, Efficiency, Distance, TimePerDistance };

// value * mul / div; sub-units divide so that e.g. 7.5 us comes out as the
// double nearest 7.5e-6.
struct Suffix {
    std::string_view name;
    double mul = 1;
    double div = 1;
};

std::span<const Suffix> suffixes(Unit u) {
    static constexpr std::array<Suffix, 6> bits{{{"bit", 1}, {"bits", 1}, {"kbit", 1e3}, {"Mbit", 1e6},
                                                {"kB", 8e3}, {"MB", kBitsPerMegabyte}}};
    static constexpr std::array<Suffix, 3> time{{{"s", 1}, {"ms", 1, 1e3}, {"us", 1, 1e6}}};
    static constexpr std::array<Suffix, 3> freq{{{"GHz", 1}, {"MHz", 1, 1e3}, {"Hz", 1, 1e9}}};
    static constexpr std::array<Suffix, 3> energy{{{"J", 1}, {"nJ", 1, 1e9}, {"pJ", 1, 1e12}}};
    static constexpr std::array<Suffix, 5> rate{
        {{"bps", 1}, {"bit/s", 1}, {"kbps", 1e3}, {"Mbps", 1e6}, {"Gbps", 1e9}}};
    static constexpr std::array<Suffix, 6> eff{{{"FLOP/(s*W)", 1},
                                               {"FLOPS/W", 1},
                                               {"MFLOP/(s*W)", 1e6},
                                               {"MFLOPS/W", 1e6},
                                               {"GFLOP/(s*W)", 1e9},
                                               {"GFLOPS/W", 1e9}}};
    static constexpr std::array<Suffix, 2> dist{{{"km", 1}, {"m", 1, 1e3}}};
    static constexpr std::array<Suffix, 3> tpd{{{"s/km", 1}, {"ms/km", 1, 1e3}, {"us/km", 1, 1e6}}};
    switch (u) {
        case Unit::None: return {};
        case Unit::Bits: return bits;
        case Unit::Time: return time;
        case Unit::Frequency: return freq;
        case Unit::EnergyPerBit: return energy;
        case Unit::Bitrate: return rate;
        case Unit::Efficiency: return eff;
        case Unit::Distance: return dist;
        case Unit::TimePerDistance: return tpd;
    }
    return {};
}

std::string_view trim(std::string_view s) {
    constexpr std::string_view ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

struct Entry {
    std::string value;
    std::size_t line = 0;
    bool used = false;
};

class Reader {
public:
    Reader(std::string_view text, std::string_view source) : source_(source) {
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const auto nl = text.find('\n', pos);
            std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
            ++line_no;
            pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

            if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError(fmt::format("{}:{}: expected 'key = value', got '{}'", source_, line_no, line));
            const std::string key(trim(line.substr(0, eq)));
            if (key.empty()) throw ConfigError(fmt::format("{}:{}: missing key", source_, line_no));
            if (auto it = entries_.find(key); it != entries_.end())
                throw ConfigError(fmt::format("{}:{}: {}: duplicate key (first set on line {})", source_, line_no,
                                              key, it->second.line));
            entries_.emplace(key, Entry{std::string(trim(line.substr(eq + 1))), line_no, false});
        }
    }

    [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
        const auto it = entries_.find(key);
        if (it == entries_.end()) throw ConfigError(fmt::format("{}: {}: {}", source_, key, msg));
        throw ConfigError(fmt::format("{}:{}: {}: {}", source_, it->second.line, key, msg));
    }

    const std::string* take(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return nullptr;
        it->second.used = true;
        return &it->second.value;
    }

    void number(const std::string& key, Unit unit, double& out) {
        if (const auto* v = take(key)) out = parse_number(key, *v, unit);
    }

    template <class Int>
    void integer(const std::string& key, Int& out) {
        const auto* v = take(key);
        if (!v) return;
        std::uint64_t x = 0;
        const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), x);
        if (ec != std::errc{} || ptr != v->data() + v->size()) fail(key, fmt::format("expected a non-negative integer, got '{}'", *v));
        out = static_cast<Int>(x);
    }

    void list(const std::string& key, std::vector<double>& out) {
        const auto* v = take(key);
        if (!v) return;
        out.clear();
        std::string_view body = *v;
        if (trim(body).empty()) return;
        std::size_t start = 0;
        while (true) {
            const auto comma = body.find(',', start);
            const auto item = body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
            out.push_back(parse_number(key, item, Unit::None));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
    }

    double parse_number(const std::string& key, std::string_view text, Unit unit) const {
        text = trim(text);
        double v = 0.0;
        const char* end = text.data() + text.size();
        const auto [ptr, ec] = std::from_chars(text.data(), end, v);
        if (ec != std::errc{} || !std::isfinite(v)) fail(key, fmt::format("expected a number, got '{}'", text));
        const auto suffix = trim(std::string_view(ptr, static_cast<std::size_t>(end - ptr)));
        if (suffix.empty()) return v;
        // Energies may carry a per-bit / per-hop tail such as nJ/(bit*hop).
        const auto head = unit == Unit::EnergyPerBit ? suffix.substr(0, suffix.find('/')) : suffix;
        for (const auto& s : suffixes(unit))
            if (s.name == head) return v * s.mul / s.div;
        std::string valid;
        for (const auto& s : suffixes(unit)) valid += fmt::format("{}{}", valid.empty() ? "" : ", ", s.name);
        fail(key, valid.empty() ? fmt::format("unexpected unit '{}'", suffix)
                                : fmt::format("unknown unit '{}' (valid: {})", suffix, valid));
    }

    /// Keys of the form `<prefix><index>.<field>`.
    std::vector<std::pair<std::size_t, std::string>> indexed(std::string_view prefix) const {
        std::vector<std::pair<std::size_t, std::string>> out;
        for (const auto& [key, e] : entries_) {
            if (!key.starts_with(prefix)) continue;
            const std::string_view rest = std::string_view(key).substr(prefix.size());
            std::size_t idx = 0;
            const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), idx);
            if (ec != std::errc{} || ptr == rest.data() || ptr == rest.data() + rest.size() || *ptr != '.') continue;
            out.emplace_back(idx, key);
        }
        return out;
    }

    void reject_unused() const {
        for (const auto& [key, e] : entries_)
            if (!e.used) throw ConfigError(fmt::format("{}:{}: {}: unknown key", source_, e.line, key));
    }

    const std::string& source() const { return source_; }

private:
    std::string source_;
    std::map<std::string, Entry> entries_;
};

void read_fog_fields(Reader& in, const std::string& prefix, FogNodeSpec& n) {
    in.list(prefix + "power_coeffs", n.power_coeffs);
    in.number(prefix + "f_min", Unit::Frequency, n.f_min_ghz);
    in.number(prefix + "f_max", Unit::Frequency, n.f_max_ghz);
    in.number(prefix + "flops_per_cycle", Unit::None, n.flops_per_cycle);
    in.number(prefix + "gamma", Unit::EnergyPerBit, n.gamma_per_hop);
    in.number(prefix + "bitrate", Unit::Bitrate, n.bitrate);
}

void read_cloud_fields(Reader& in, const std::string& prefix, CloudSpec& c) {
    in.number(prefix + "beta", Unit::Efficiency, c.beta);
    in.number(prefix + "frequency", Unit::Frequency, c.frequency_ghz);
    in.number(prefix + "flops_per_cycle", Unit::None, c.flops_per_cycle);
    in.number(prefix + "distance", Unit::Distance, c.distance_km);
    in.number(prefix + "gamma", Unit::EnergyPerBit, c.gamma);
    in.number(prefix + "bitrate", Unit::Bitrate, c.backhaul_bitrate);
    in.number(prefix + "chi", Unit::TimePerDistance, c.chi_rtt);
}

template <class Spec>
void read_nodes(Reader& in, std::string_view kind, std::vector<Spec>& nodes, Spec (*make)(std::size_t),
                void (*fields)(Reader&, const std::string&, Spec&)) {
    const std::string count_key = fmt::format("{}.count", kind);
    std::size_t count = nodes.size();
    in.integer(count_key, count);
    nodes.clear();
    for (std::size_t i = 0; i < count; ++i) nodes.push_back(make(i));
    Spec shared = make(0);
    fields(in, fmt::format("{}.", kind), shared);
    for (std::size_t i = 0; i < count; ++i) {
        shared.id = i;
        nodes[i] = shared;
    }
    for (const auto& [idx, key] : in.indexed(fmt::format("{}.", kind))) {
        if (idx >= count) in.fail(key, fmt::format("index {} out of range for {} = {}", idx, count_key, count));
        fields(in, fmt::format("{}.{}.", kind, idx), nodes[idx]);
    }
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += fmt::format("{}{}", i ? ", " : "", v[i]);
    return out;
}

constexpr std::array<std::pair<FrequencyMode, std::string_view>, 3> kModes{
    {{FrequencyMode::Sca, "sca"}, {FrequencyMode::Analytic, "analytic"}, {FrequencyMode::Fixed, "fixed"}}};
constexpr std::array<std::pair<StartPolicy, std::string_view>, 3> kStarts{
    {{StartPolicy::Upper, "upper"}, {StartPolicy::Lower, "lower"}, {StartPolicy::BothEnds, "both"}}};

template <class E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E e) {
    for (const auto& [k, n] : table)
        if (k == e) return n;
    return "?";
}

template <class E, std::size_t N>
void read_enum(Reader& in, const std::string& key, const std::array<std::pair<E, std::string_view>, N>& table,
               E& out) {
    const auto* v = in.take(key);
    if (!v) return;
    std::string valid;
    for (const auto& [k, n] : table) {
        if (n == *v) {
            out = k;
            return;
        }
        valid += fmt::format("{}{}", valid.empty() ? "" : ", ", n);
    }
    in.fail(key, fmt::format("unknown value '{}' (valid: {})", *v, valid));
}

}  // namespace

ScenarioConfig parse_config(std::string_view text, std::string_view source) {
    Reader in(text, source);
    ScenarioConfig c = reference_scenario();

    in.integer("seed", c.seed);
    if (const auto* v = in.take("allocator")) {
        const auto kind = parse_allocator(*v);
        if (!kind) {
            std::string valid;
            for (auto k : all_allocators()) valid += fmt::format("{}{}", valid.empty() ? "" : ", ", allocator_name(k));
            in.fail("allocator", fmt::format("unknown allocator '{}' (valid: {})", *v, valid));
        }
        c.allocator = *kind;
    }
    in.integer("horizon", c.horizon);
    in.integer("warmup", c.warmup);

    auto& t = c.traffic;
    in.number("request.size.min", Unit::Bits, t.size_bits.min);
    in.number("request.size.max", Unit::Bits, t.size_bits.max);
    in.number("request.intensity.min", Unit::None, t.intensity.min);
    in.number("request.intensity.max", Unit::None, t.intensity.max);
    in.number("request.output_ratio.min", Unit::None, t.output_ratio.min);
    in.number("request.output_ratio.max", Unit::None, t.output_ratio.max);
    in.number("request.deadline.min", Unit::Time, t.deadline.min);
    in.number("request.deadline.max", Unit::Time, t.deadline.max);
    in.integer("request.batch.min", t.batch_min);
    in.integer("request.batch.max", t.batch_max);
    in.number("request.interarrival_mean", Unit::Time, t.mean_interarrival);
    in.list("request.origin_weights", t.origin_weights);

    read_nodes<FogNodeSpec>(in, "fog", c.fleet.fog, reference_fog_node, read_fog_fields);
    std::vector<double> hops;
    in.list("fog.hops", hops);
    c.fleet.hop_matrix.clear();
    for (double h : hops) {
        if (h != std::floor(h) || h < 0 || h > 1e9) in.fail("fog.hops", fmt::format("'{}' is not a hop count", h));
        c.fleet.hop_matrix.push_back(static_cast<int>(h));
    }
    read_nodes<CloudSpec>(in, "cloud", c.fleet.clouds, reference_cloud, read_cloud_fields);

    read_enum(in, "frequency.mode", kModes, c.frequency.mode);
    in.number("frequency.fixed", Unit::Frequency, c.frequency.fixed_ghz);
    read_enum(in, "sca.start", kStarts, c.frequency.sca.start);
    in.integer("sca.max_iterations", c.frequency.sca.max_sca_iterations);
    in.integer("sca.newton_iterations", c.frequency.sca.max_newton_iterations);
    in.number("sca.epsilon", Unit::Frequency, c.frequency.sca.epsilon);
    in.number("sca.tolerance", Unit::None, c.frequency.sca.stationarity_tolerance);

    in.integer("hist.theta_bins", c.hist.theta_bins);
    in.integer("hist.deadline_bins", c.hist.deadline_bins);

    if (const auto* v = in.take("sweep")) {
        try {
            c.sweep = parse_sweep(*v);
        } catch (const ConfigError& e) {
            in.fail("sweep", e.what());
        }
    }

    in.reject_unused();
    try {
        c.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(fmt::format("{}: {}", in.source(), e.what()));
    }
    return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError(fmt::format("{}: cannot open", path.string()));
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), path.string());
}

std::string serialize_config(const ScenarioConfig& c) {
    std::string out;
    auto put = [&out](std::string_view key, const auto& value) { out += fmt::format("{} = {}\n", key, value); };

    put("seed", c.seed);
    put("allocator", allocator_name(c.allocator));
    put("horizon", c.horizon);
    put("warmup", c.warmup);

    const auto& t = c.traffic;
    put("request.size.min", t.size_bits.min);
    put("request.size.max", t.size_bits.max);
    put("request.intensity.min", t.intensity.min);
    put("request.intensity.max", t.intensity.max);
    put("request.output_ratio.min", t.output_ratio.min);
    put("request.output_ratio.max", t.output_ratio.max);
    put("request.deadline.min", t.deadline.min);
    put("request.deadline.max", t.deadline.max);
    put("request.batch.min", t.batch_min);
    put("request.batch.max", t.batch_max);
    put("request.interarrival_mean", t.mean_interarrival);
    if (!t.origin_weights.empty()) put("request.origin_weights", join(t.origin_weights));

    put("fog.count", c.fleet.fog.size());
    if (!c.fleet.hop_matrix.empty())
        put("fog.hops", join(std::vector<double>(c.fleet.hop_matrix.begin(), c.fleet.hop_matrix.end())));
    for (std::size_t i = 0; i < c.fleet.fog.size(); ++i) {
        const auto& n = c.fleet.fog[i];
        put(fmt::format("fog.{}.power_coeffs", i), join(n.power_coeffs));
        put(fmt::format("fog.{}.f_min", i), n.f_min_ghz);
        put(fmt::format("fog.{}.f_max", i), n.f_max_ghz);
        put(fmt::format("fog.{}.flops_per_cycle", i), n.flops_per_cycle);
        put(fmt::format("fog.{}.gamma", i), n.gamma_per_hop);
        put(fmt::format("fog.{}.bitrate", i), n.bitrate);
    }
    put("cloud.count", c.fleet.clouds.size());
    for (std::size_t i = 0; i < c.fleet.clouds.size(); ++i) {
        const auto& k = c.fleet.clouds[i];
        put(fmt::format("cloud.{}.beta", i), k.beta);
        put(fmt::format("cloud.{}.frequency", i), k.frequency_ghz);
        put(fmt::format("cloud.{}.flops_per_cycle", i), k.flops_per_cycle);
        put(fmt::format("cloud.{}.distance", i), k.distance_km);
        put(fmt::format("cloud.{}.gamma", i), k.gamma);
        put(fmt::format("cloud.{}.bitrate", i), k.backhaul_bitrate);
        put(fmt::format("cloud.{}.chi", i), k.chi_rtt);
    }

    put("frequency.mode", name_of(kModes, c.frequency.mode));
    put("frequency.fixed", c.frequency.fixed_ghz);
    put("sca.start", name_of(kStarts, c.frequency.sca.start));
    put("sca.max_iterations", c.frequency.sca.max_sca_iterations);
    put("sca.newton_iterations", c.frequency.sca.max_newton_iterations);
    put("sca.epsilon", c.frequency.sca.epsilon);
    put("sca.tolerance", c.frequency.sca.stationarity_tolerance);

    put("hist.theta_bins", c.hist.theta_bins);
    put("hist.deadline_bins", c.hist.deadline_bins);

    if (c.sweep) {
        std::string values;
        for (std::size_t i = 0; i < c.sweep->values.size(); ++i)
            values += fmt::format("{}{}", i ? "," : "", c.sweep->values[i]);
        put("sweep", fmt::format("{}={}", sweep_axis_name(c.sweep->axis), values));
    }
    return out;
}

}  // namespace fogalloc
