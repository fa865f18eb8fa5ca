#include "tcr/format.hpp"

#include <cmath>
#include <limits>

namespace tcr {

std::string_view to_string(Format f) noexcept {
    switch (f) {
    case Format::Binary16: return "binary16";
    case Format::Binary32: return "binary32";
    case Format::Binary64: break;
    }
    return "binary64";
}

double round_to(double value, Format fmt, int tail_sign) noexcept {
    if (fmt == Format::Binary64 || !std::isfinite(value) || value == 0.0) {
        return value;
    }
    const FormatTraits t = traits(fmt);
    int exponent = 0;
    std::frexp(value, &exponent);
    // Quantum (ulp) exponent; clamping at min_exponent yields subnormals.
    const int quantum = std::max(exponent, t.min_exponent) - t.precision;
    // |scaled| < 2^precision, so the fractional part below is exact.
    const double scaled = std::ldexp(value, -quantum);
    const double lower = std::floor(scaled);
    const double frac = scaled - lower;

    double rounded = lower;
    if (frac > 0.5) {
        rounded = lower + 1.0;
    } else if (frac == 0.5) {
        if (tail_sign > 0) {
            rounded = lower + 1.0;
        } else if (tail_sign == 0 && std::fmod(lower, 2.0) != 0.0) {
            rounded = lower + 1.0;
        }
    }
    // frac == 0: a grid point stays put whatever the residual, since the
    // residual is far below half a target ulp.
    if (rounded == 0.0) {
        return std::copysign(0.0, value);
    }
    const double result = std::ldexp(rounded, quantum);
    if (std::fabs(result) > t.max_finite) {
        return std::copysign(std::numeric_limits<double>::infinity(), value);
    }
    return result;
}

bool is_representable(double value, Format fmt) noexcept {
    if (!std::isfinite(value)) {
        return true;
    }
    return round_to(value, fmt) == value;
}

TwoSum two_sum(double a, double b) noexcept {
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

namespace {

int sign_of(double x) noexcept { return (x > 0.0) - (x < 0.0); }

} // namespace

double add_in(double a, double b, Format fmt) noexcept {
    switch (fmt) {
    case Format::Binary64: return a + b;
    case Format::Binary32: return static_cast<double>(static_cast<float>(a) + static_cast<float>(b));
    case Format::Binary16: break;
    }
    if (!std::isfinite(a) || !std::isfinite(b)) {
        return a + b;
    }
    const TwoSum s = two_sum(a, b);
    return round_to(s.sum, fmt, sign_of(s.err));
}

double fma_in(double a, double b, double c, Format fmt) noexcept {
    switch (fmt) {
    case Format::Binary64: return std::fma(a, b, c);
    case Format::Binary32:
        return static_cast<double>(
            std::fma(static_cast<float>(a), static_cast<float>(b), static_cast<float>(c)));
    case Format::Binary16: break;
    }
    // Binary16 operands: the product has at most 22 significant bits and
    // is exact in binary64, leaving only the final sum to resolve.
    const double product = a * b;
    if (!std::isfinite(product) || !std::isfinite(c)) {
        return round_to(product + c, fmt);
    }
    const TwoSum s = two_sum(product, c);
    return round_to(s.sum, fmt, sign_of(s.err));
}

std::uint16_t binary16_bits(double value) noexcept {
    std::uint16_t sign = std::signbit(value) ? 0x8000u : 0u;
    const double mag = std::fabs(value);
    if (std::isnan(value)) {
        return static_cast<std::uint16_t>(sign | 0x7e00u);
    }
    if (std::isinf(value)) {
        return static_cast<std::uint16_t>(sign | 0x7c00u);
    }
    if (mag == 0.0) {
        return sign;
    }
    int exponent = 0;
    std::frexp(mag, &exponent); // mag = f * 2^exponent, f in [0.5, 1)
    if (exponent < -13) {
        // Subnormal: mag = k * 2^-24.
        const auto k = static_cast<std::uint16_t>(std::ldexp(mag, 24));
        return static_cast<std::uint16_t>(sign | k);
    }
    const auto biased = static_cast<std::uint16_t>(exponent - 1 + 15);
    const auto mantissa = static_cast<std::uint16_t>(std::ldexp(mag, 11 - exponent) - 1024.0);
    return static_cast<std::uint16_t>(sign | (biased << 10) | mantissa);
}

} // namespace tcr
