#include "fogalloc/generator.hpp"

#include <fmt/format.h>

#include <cmath>

namespace fogalloc {

namespace {

void check_range(const Range& r, std::string_view name, double floor) {
    if (!std::isfinite(r.min) || !std::isfinite(r.max) || r.min > r.max)
        throw ConfigError(fmt::format("request.{}: need finite min <= max (got {} .. {})", name, r.min, r.max));
    if (r.min < floor)
        throw ConfigError(fmt::format("request.{}.min: must be >= {} (got {})", name, floor, r.min));
}

}  // namespace

void TrafficConfig::validate(std::size_t fog_count) const {
    check_range(size_bits, "size", 0.0);
    if (!(size_bits.min > 0.0)) throw ConfigError("request.size.min: must be > 0");
    check_range(intensity, "intensity", 1.0);
    check_range(output_ratio, "output_ratio", 0.0);
    check_range(deadline, "deadline", 0.0);
    if (!(deadline.min > 0.0)) throw ConfigError("request.deadline.min: must be > 0");
    if (batch_min > batch_max) throw ConfigError("request.batch: need min <= max");
    if (!(mean_interarrival >= 0.0) || !std::isfinite(mean_interarrival))
        throw ConfigError("request.interarrival_mean: must be finite and >= 0");
    if (fog_count == 0) throw ConfigError("fog.count: at least one fog node is required as request origin");
    if (!origin_weights.empty()) {
        if (origin_weights.size() != fog_count)
            throw ConfigError(fmt::format("request.origin_weights: expected {} weights, got {}", fog_count,
                                          origin_weights.size()));
        double total = 0.0;
        for (double w : origin_weights) {
            if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("request.origin_weights: weights must be >= 0");
            total += w;
        }
        if (!(total > 0.0)) throw ConfigError("request.origin_weights: weights sum to zero");
    }
}

Instance generate_instance(RandomStreams& streams, const TrafficConfig& traffic, std::size_t fog_count,
                           double& clock, std::uint64_t& next_id, std::size_t index) {
    Instance inst;
    inst.index = index;
    const auto batch = streams.uniform_int(Stream::BatchSize, traffic.batch_min, traffic.batch_max);
    clock += streams.exponential(Stream::InterArrival, traffic.mean_interarrival);
    inst.arrival_time = clock;
    inst.requests.reserve(batch);
    for (std::uint64_t i = 0; i < batch; ++i) {
        Request r;
        r.id = next_id++;
        r.arrival_time = clock;
        r.size_bits = streams.uniform(Stream::Size, traffic.size_bits.min, traffic.size_bits.max);
        r.intensity = streams.uniform(Stream::Intensity, traffic.intensity.min, traffic.intensity.max);
        r.output_ratio = streams.uniform(Stream::OutputRatio, traffic.output_ratio.min, traffic.output_ratio.max);
        r.deadline = streams.uniform(Stream::Deadline, traffic.deadline.min, traffic.deadline.max);
        r.origin = traffic.origin_weights.empty()
                       ? static_cast<std::size_t>(streams.uniform_int(Stream::Origin, 0, fog_count - 1))
                       : streams.weighted_index(Stream::Origin, traffic.origin_weights);
        inst.requests.push_back(r);
    }
    return inst;
}

RequestGenerator::RequestGenerator(TrafficConfig traffic, std::size_t fog_count, std::uint64_t seed)
    : traffic_(std::move(traffic)), fog_count_(fog_count), streams_(seed) {
    traffic_.validate(fog_count_);
}

Instance RequestGenerator::next() {
    return generate_instance(streams_, traffic_, fog_count_, clock_, next_id_, next_index_++);
}

}  // namespace fogalloc
