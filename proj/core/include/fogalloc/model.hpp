#pragma once

// Domain types shared by every layer of the allocator.
//
// Internal units: bits, seconds, joules, bit/s, km. CPU frequencies are kept
// in GHz because the fog power polynomial is defined over GHz.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fogalloc {

inline constexpr double kHzPerGHz = 1e9;
inline constexpr double kBitsPerMegabyte = 8e6;

/// Raised for malformed or inconsistent scenario descriptions.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a node model evaluates to something physically meaningless
/// (e.g. non-positive power at an admissible frequency).
class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised on a broken internal invariant: a programming error, never bad input.
class InvariantError : public std::logic_error {
public:
    explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

struct Request {
    std::uint64_t id = 0;
    double arrival_time = 0.0;  // s
    double size_bits = 0.0;
    double intensity = 1.0;     // FLOP/bit
    double output_ratio = 0.0;
    std::size_t origin = 0;     // fog node index
    double deadline = 0.0;      // s, relative to arrival

    bool operator==(const Request&) const = default;
};

struct FogNodeSpec {
    std::size_t id = 0;
    /// p_0..p_Q; P(f) = sum p_q f^q with f in GHz, result in W.
    std::vector<double> power_coeffs;
    double f_min_ghz = 0.0;
    double f_max_ghz = 0.0;
    double flops_per_cycle = 1.0;
    double gamma_per_hop = 0.0;  // J/(bit*hop)
    double bitrate = 0.0;        // bit/s

    bool operator==(const FogNodeSpec&) const = default;
};

struct CloudSpec {
    std::size_t id = 0;
    double beta = 0.0;           // FLOP/(s*W)
    double frequency_ghz = 0.0;
    double flops_per_cycle = 1.0;
    double distance_km = 0.0;
    double gamma = 0.0;          // J/bit
    double backhaul_bitrate = 0.0;
    double chi_rtt = 0.0;        // s/km

    bool operator==(const CloudSpec&) const = default;
};

enum class NodeKind { Fog, Cloud };

struct NodeRef {
    NodeKind kind = NodeKind::Fog;
    std::size_t index = 0;

    static constexpr NodeRef fog(std::size_t i) { return {NodeKind::Fog, i}; }
    static constexpr NodeRef cloud(std::size_t i) { return {NodeKind::Cloud, i}; }
    constexpr bool is_fog() const { return kind == NodeKind::Fog; }

    bool operator==(const NodeRef&) const = default;
};

std::string to_string(NodeRef node);

/// Fog nodes, cloud data centers and the fog-to-fog hop matrix.
struct Fleet {
    std::vector<FogNodeSpec> fog;
    std::vector<CloudSpec> clouds;
    /// Row-major |F|x|F| hop counts; empty means 1 hop between distinct nodes.
    std::vector<int> hop_matrix;

    int hops(std::size_t from, std::size_t to) const;
    /// Throws ConfigError naming the first offending node/field.
    void validate() const;

    bool operator==(const Fleet&) const = default;
};

/// Per fog node completion time of the last scheduled request.
struct ScheduleState {
    std::vector<double> busy_until;

    ScheduleState() = default;
    explicit ScheduleState(std::size_t fog_count) : busy_until(fog_count, 0.0) {}
};

struct CostBreakdown {
    double e_cp = 0.0;
    double e_comm = 0.0;
    double e_tot = 0.0;
    double d_cp = 0.0;
    double d_comm_up = 0.0;
    double d_comm_down = 0.0;
    double d_queue = 0.0;
    double d_tot = 0.0;
    bool feasible = false;

    bool operator==(const CostBreakdown&) const = default;
};

enum class Status { Accepted, Rejected };

struct AllocationResult {
    std::uint64_t request_id = 0;
    Status status = Status::Rejected;
    std::optional<NodeRef> node;
    /// Fog CPU frequency in GHz; NaN for cloud or rejected requests.
    double frequency_ghz = std::numeric_limits<double>::quiet_NaN();
    CostBreakdown cost;

    bool accepted() const { return status == Status::Accepted; }

    static AllocationResult rejected(std::uint64_t id) {
        AllocationResult r;
        r.request_id = id;
        return r;
    }
};

}  // namespace fogalloc
