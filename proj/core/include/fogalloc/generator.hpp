#pragma once

#include "fogalloc/model.hpp"
#include "fogalloc/rng.hpp"

#include <cstddef>
#include <vector>

namespace fogalloc {

struct Range {
    double min = 0.0;
    double max = 0.0;

    bool operator==(const Range&) const = default;
};

/// Traffic distributions. Continuous quantities are uniform over their closed
/// range, the batch size is discrete-uniform and inter-arrival times are
/// exponential.
struct TrafficConfig {
    Range size_bits{1.0 * kBitsPerMegabyte, 10.0 * kBitsPerMegabyte};
    Range intensity{1.0, 100.0};
    Range output_ratio{0.0, 0.5};
    Range deadline{0.1, 1.0};
    std::size_t batch_min = 5;
    std::size_t batch_max = 10;
    double mean_interarrival = 0.050;
    /// Origin fog node weights; empty means uniform over fog nodes.
    std::vector<double> origin_weights;

    /// Throws ConfigError; called before any random draw.
    void validate(std::size_t fog_count) const;

    bool operator==(const TrafficConfig&) const = default;
};

/// One optimization instance: every request arriving at T_k.
struct Instance {
    std::size_t index = 0;  // 0-based
    double arrival_time = 0.0;
    std::vector<Request> requests;
};

/// Produces the instance sequence T_1, T_2, ... for a scenario.
class RequestGenerator {
public:
    RequestGenerator(TrafficConfig traffic, std::size_t fog_count, std::uint64_t seed);

    Instance next();

    RandomStreams& streams() { return streams_; }

private:
    TrafficConfig traffic_;
    std::size_t fog_count_;
    RandomStreams streams_;
    std::size_t next_index_ = 0;
    std::uint64_t next_id_ = 0;
    double clock_ = 0.0;
};

/// Draws the next instance from `streams`; `clock` and `next_id` carry the
/// generator state between calls.
Instance generate_instance(RandomStreams& streams, const TrafficConfig& traffic, std::size_t fog_count,
                           double& clock, std::uint64_t& next_id, std::size_t index);

}  // namespace fogalloc
