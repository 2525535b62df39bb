#include "fogalloc/model.hpp"

#include <fmt/format.h>

#include <cmath>

namespace fogalloc {

std::string to_string(NodeRef node) {
    return fmt::format("{}:{}", node.is_fog() ? "fog" : "cloud", node.index);
}

int Fleet::hops(std::size_t from, std::size_t to) const {
    if (from == to) return 0;
    if (hop_matrix.empty()) return 1;
    return hop_matrix.at(from * fog.size() + to);
}

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

double eval_poly(const std::vector<double>& c, double f) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * f + *it;
    return acc;
}

}  // namespace

void Fleet::validate() const {
    for (std::size_t i = 0; i < fog.size(); ++i) {
        const auto& n = fog[i];
        auto fail = [&](std::string_view field, std::string_view why) {
            throw ConfigError(fmt::format("fog node {}: {} {}", i, field, why));
        };
        if (n.power_coeffs.empty()) fail("power_coeffs", "must not be empty");
        for (double p : n.power_coeffs)
            if (!std::isfinite(p)) fail("power_coeffs", "must be finite");
        if (!positive_finite(n.f_min_ghz)) fail("f_min", "must be > 0");
        if (!(n.f_max_ghz >= n.f_min_ghz) || !std::isfinite(n.f_max_ghz)) fail("f_max", "must be >= f_min");
        if (!(n.flops_per_cycle >= 1.0)) fail("flops_per_cycle", "must be >= 1");
        if (!(n.gamma_per_hop >= 0.0)) fail("gamma", "must be >= 0");
        if (!positive_finite(n.bitrate)) fail("bitrate", "must be > 0");
        // Power must stay positive over the whole admissible range. A dense
        // grid plus both endpoints is sufficient for the low-degree
        // polynomials used here.
        constexpr int kGrid = 256;
        for (int k = 0; k <= kGrid; ++k) {
            const double f = n.f_min_ghz + (n.f_max_ghz - n.f_min_ghz) * k / kGrid;
            if (!(eval_poly(n.power_coeffs, f) > 0.0))
                fail("power_coeffs", fmt::format("give non-positive power at {} GHz", f));
        }
    }
    if (!hop_matrix.empty()) {
        if (hop_matrix.size() != fog.size() * fog.size())
            throw ConfigError(fmt::format("fog.hops: expected {}x{} matrix", fog.size(), fog.size()));
        for (std::size_t a = 0; a < fog.size(); ++a)
            for (std::size_t b = 0; b < fog.size(); ++b) {
                const int h = hop_matrix[a * fog.size() + b];
                if (a == b ? h != 0 : h < 1)
                    throw ConfigError(fmt::format("fog.hops[{}][{}]: need 0 on the diagonal and >= 1 elsewhere", a, b));
            }
    }
    for (std::size_t i = 0; i < clouds.size(); ++i) {
        const auto& c = clouds[i];
        auto fail = [&](std::string_view field, std::string_view why) {
            throw ConfigError(fmt::format("cloud {}: {} {}", i, field, why));
        };
        if (!positive_finite(c.beta)) fail("beta", "must be > 0");
        if (!positive_finite(c.frequency_ghz)) fail("frequency", "must be > 0");
        if (!(c.flops_per_cycle >= 1.0)) fail("flops_per_cycle", "must be >= 1");
        if (!(c.distance_km >= 0.0)) fail("distance", "must be >= 0");
        if (!(c.gamma >= 0.0)) fail("gamma", "must be >= 0");
        if (!positive_finite(c.backhaul_bitrate)) fail("bitrate", "must be > 0");
        if (!(c.chi_rtt >= 0.0)) fail("chi", "must be >= 0");
    }
}

}  // namespace fogalloc
