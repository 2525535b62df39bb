#include "fogalloc/rng.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fogalloc {

RandomStreams::RandomStreams(std::uint64_t seed) : seed_(seed) {
    for (std::uint32_t s = 0; s < static_cast<std::uint32_t>(Stream::Count_); ++s) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                          static_cast<std::uint32_t>(seed >> 32), s, 0x9e3779b9u};
        engines_[s].seed(seq);
    }
}

double RandomStreams::uniform01(Stream s) {
    // 53 random mantissa bits.
    return static_cast<double>(engine(s)() >> 11) * 0x1.0p-53;
}

double RandomStreams::uniform(Stream s, double lo, double hi) {
    const double u = uniform01(s);
    const double v = lo + u * (hi - lo);
    return v > hi ? hi : v;
}

std::uint64_t RandomStreams::uniform_int(Stream s, std::uint64_t lo, std::uint64_t hi) {
    if (hi < lo) throw std::invalid_argument("uniform_int: hi < lo");
    const std::uint64_t span = hi - lo;
    auto& eng = engine(s);
    if (span == std::numeric_limits<std::uint64_t>::max()) return eng();
    const std::uint64_t range = span + 1;
    const std::uint64_t threshold = (0 - range) % range;  // 2^64 mod range
    for (;;) {
        const std::uint64_t x = eng();
        if (x >= threshold) return lo + x % range;
    }
}

double RandomStreams::exponential(Stream s, double mean) {
    return -mean * std::log1p(-uniform01(s));
}

std::size_t RandomStreams::weighted_index(Stream s, std::span<const double> weights) {
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(total > 0.0)) throw std::invalid_argument("weighted_index: weights sum to zero");
    const double target = uniform01(s) * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (target < acc) return i;
    }
    // Rounding left target == total; return the last positive weight.
    for (std::size_t i = weights.size(); i-- > 0;)
        if (weights[i] > 0.0) return i;
    return 0;
}

}  // namespace fogalloc
