#include "tcr/inputs.hpp"

#include <cmath>
#include <random>

namespace tcr {

std::string_view to_string(Distribution d) noexcept {
    switch (d) {
    case Distribution::Uniform01: return "uniform01";
    case Distribution::UniformInt: return "uniform-int";
    case Distribution::Constant: return "constant";
    case Distribution::AlternatingSign: return "alternating";
    case Distribution::AdversarialMagnitude: break;
    }
    return "adversarial";
}

std::optional<Distribution> parse_distribution(std::string_view name) noexcept {
    for (auto d : {Distribution::Uniform01, Distribution::UniformInt, Distribution::Constant,
                   Distribution::AlternatingSign, Distribution::AdversarialMagnitude}) {
        if (to_string(d) == name) return d;
    }
    return std::nullopt;
}

namespace {

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

double unit(std::mt19937_64& rng) { return std::ldexp(static_cast<double>(rng() >> 11), -53); }

} // namespace

std::vector<double> generate_inputs(const DistributionParams& params, std::uint64_t n, std::uint64_t seed) {
    std::mt19937_64 rng(mix(seed ^ mix(n)));
    std::vector<double> out;
    out.reserve(n);
    const auto span = static_cast<std::uint64_t>(params.int_hi - params.int_lo) + 1;
    for (std::uint64_t i = 0; i < n; ++i) {
        switch (params.kind) {
        case Distribution::Uniform01:
            out.push_back(unit(rng));
            break;
        case Distribution::UniformInt:
            out.push_back(static_cast<double>(params.int_lo + static_cast<std::int64_t>(rng() % span)));
            break;
        case Distribution::Constant:
            out.push_back(params.constant);
            break;
        case Distribution::AlternatingSign:
            out.push_back((i % 2 == 0 ? 1.0 : -1.0) * unit(rng));
            break;
        case Distribution::AdversarialMagnitude:
            if (i % 2 == 0) {
                const double large = 64.0 * (1.0 + unit(rng));
                out.push_back(i % 4 == 0 ? large : -large);
            } else {
                out.push_back(std::ldexp(unit(rng), -8));
            }
            break;
        }
    }
    return out;
}

} // namespace tcr
