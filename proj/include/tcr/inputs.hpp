#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace tcr {

enum class Distribution {
    Uniform01,            // [0, 1)
    UniformInt,           // integers in [int_lo, int_hi]
    Constant,             // every element equals `constant`
    AlternatingSign,      // +u, -u, +u, ... with u in [0, 1)
    AdversarialMagnitude, // +-[64, 128) interleaved with [0, 2^-8)
};

std::string_view to_string(Distribution d) noexcept;
std::optional<Distribution> parse_distribution(std::string_view name) noexcept;

struct DistributionParams {
    Distribution kind = Distribution::Uniform01;
    std::int64_t int_lo = -100;
    std::int64_t int_hi = 100;
    double constant = 1.0;
};

/// n values drawn from `params`. The stream depends only on (seed, n), so
/// a cell's inputs do not depend on which other cells ran before it.
std::vector<double> generate_inputs(const DistributionParams& params, std::uint64_t n, std::uint64_t seed);

} // namespace tcr
