#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>

namespace fogalloc {

/// Named sub-streams. Each draws from its own engine so that changing how
/// one quantity is sampled (or sweeping it to a constant) leaves every other
/// sequence untouched.
enum class Stream : std::uint32_t {
    BatchSize,
    InterArrival,
    Size,
    Intensity,
    OutputRatio,
    Deadline,
    Origin,
    Shuffle,
    Count_
};

/// Deterministic seeded random source: one std::mt19937_64 per Stream,
/// seeded through std::seed_seq{seed, stream}. The sampling transforms are
/// written out here rather than using <random> distributions, whose output
/// is implementation-defined; this keeps CSV output identical across
/// standard libraries.
class RandomStreams {
public:
    explicit RandomStreams(std::uint64_t seed);

    /// Uniform on [0, 1).
    double uniform01(Stream s);
    /// Uniform on the closed range [lo, hi]; lo == hi returns lo.
    double uniform(Stream s, double lo, double hi);
    /// Uniform integer in [lo, hi] inclusive, without modulo bias.
    std::uint64_t uniform_int(Stream s, std::uint64_t lo, std::uint64_t hi);
    /// Exponential with the given mean (inverse CDF).
    double exponential(Stream s, double mean);
    /// Index drawn proportionally to non-negative weights.
    std::size_t weighted_index(Stream s, std::span<const double> weights);

    std::uint64_t seed() const { return seed_; }

private:
    std::mt19937_64& engine(Stream s) { return engines_[static_cast<std::size_t>(s)]; }

    std::uint64_t seed_;
    std::array<std::mt19937_64, static_cast<std::size_t>(Stream::Count_)> engines_;
};

}  // namespace fogalloc
