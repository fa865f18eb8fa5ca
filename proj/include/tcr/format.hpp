#pragma once

#include <cstdint>
#include <string_view>

namespace tcr {

/// IEEE-754 binary interchange formats emulated on top of binary64.
enum class Format { Binary16, Binary32, Binary64 };

struct FormatTraits {
    int precision;     // significand bits, including the hidden bit
    int min_exponent;  // frexp-style exponent of the smallest normal value
    double max_finite;
};

constexpr FormatTraits traits(Format f) noexcept {
    switch (f) {
    case Format::Binary16: return {11, -13, 65504.0};
    case Format::Binary32: return {24, -125, 3.4028234663852886e38};
    case Format::Binary64: break;
    }
    return {53, -1021, 1.7976931348623157e308};
}

std::string_view to_string(Format f) noexcept;

/// Rounds `value` to the nearest value of `fmt`, ties to even.
///
/// `tail_sign` carries the sign of an exact residual (true value minus
/// `value`) that was lost when `value` itself was formed, so that a
/// binary64 intermediate can be rounded to a narrower format without
/// double-rounding: the residual only matters when `value` sits exactly
/// on a midpoint of the target grid. Values beyond the format's range
/// become signed infinity. Binary64 returns `value` unchanged.
double round_to(double value, Format fmt, int tail_sign = 0) noexcept;

bool is_representable(double value, Format fmt) noexcept;

/// Error-free transformation: a + b == sum + err exactly (Knuth's TwoSum).
struct TwoSum {
    double sum;
    double err;
};
TwoSum two_sum(double a, double b) noexcept;

/// Correctly rounded a + b in `fmt`, for operands already in `fmt`.
double add_in(double a, double b, Format fmt) noexcept;

/// Correctly rounded a * b + c in `fmt` (single rounding), for operands
/// already in `fmt`.
double fma_in(double a, double b, double c, Format fmt) noexcept;

/// Packs a binary16 value into its 16-bit encoding. `value` must already
/// be representable in binary16.
std::uint16_t binary16_bits(double value) noexcept;

} // namespace tcr
