#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "tcr/format.hpp"
#include "tcr/rational.hpp"

namespace tcr {

/// How MMA element kernels round in the mixed FP16/FP32 regime.
enum class RoundingPolicy {
    /// Operands rounded to binary16, exact products, binary32 accumulation.
    Fp32Accumulate,
    /// Operands, products and every partial sum rounded to binary16.
    StrictFp16,
};

enum class PrecisionTag { Exact, Fp64, Fp32, MixedFp16Fp32 };

struct PrecisionMode {
    PrecisionTag tag = PrecisionTag::Exact;
    RoundingPolicy policy = RoundingPolicy::Fp32Accumulate; // mixed mode only

    static constexpr PrecisionMode exact() noexcept { return {PrecisionTag::Exact}; }
    static constexpr PrecisionMode fp64() noexcept { return {PrecisionTag::Fp64}; }
    static constexpr PrecisionMode fp32() noexcept { return {PrecisionTag::Fp32}; }
    static constexpr PrecisionMode mixed(RoundingPolicy p = RoundingPolicy::Fp32Accumulate) noexcept {
        return {PrecisionTag::MixedFp16Fp32, p};
    }

    bool is_exact() const noexcept { return tag == PrecisionTag::Exact; }
    bool is_mixed() const noexcept { return tag == PrecisionTag::MixedFp16Fp32; }

    /// Format values are stored in. Mixed/fp32-acc stores binary32 (the MMA
    /// result format); mixed/strict stores binary16. Meaningless for Exact.
    Format storage_format() const noexcept;

    /// Format MMA multiplicands are rounded to before the product.
    Format operand_format() const noexcept;

    friend bool operator==(const PrecisionMode& a, const PrecisionMode& b) noexcept {
        if (a.tag != b.tag) return false;
        return !a.is_mixed() || a.policy == b.policy;
    }
};

std::string_view to_string(PrecisionTag tag) noexcept;
std::string_view to_string(RoundingPolicy policy) noexcept;
/// "exact", "fp64", "fp32", "mixed/fp32-acc", "mixed/strict-fp16".
std::string to_string(PrecisionMode mode);

std::optional<PrecisionTag> parse_precision_tag(std::string_view name) noexcept;
std::optional<RoundingPolicy> parse_rounding_policy(std::string_view name) noexcept;

/// A number that is always exactly representable in its mode.
class Scalar {
public:
    Scalar() : Scalar(zero(PrecisionMode::exact())) {}

    static Scalar zero(PrecisionMode mode);
    static Scalar one(PrecisionMode mode);

    /// Round-to-nearest-even into `mode`. Exact mode takes the binary64
    /// value exactly; overflow in floating modes gives infinity and sets
    /// overflowed().
    static Scalar quantize(double value, PrecisionMode mode);
    static Scalar quantize(const Rational& value, PrecisionMode mode);

    PrecisionMode mode() const noexcept { return mode_; }
    bool overflowed() const noexcept { return overflow_; }
    bool is_finite() const noexcept;

    /// Floating value, or the nearest binary64 of an exact value.
    double to_double() const;
    /// Exact value; throws std::domain_error for inf/NaN.
    Rational to_rational() const;

    /// Direct access for kernels that already switched on the mode.
    const Rational& exact() const { return std::get<Rational>(value_); }
    double floating() const { return std::get<double>(value_); }

    std::string to_string() const;

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);

    /// Same mode and same value (NaN compares unequal, +0 == -0).
    friend bool operator==(const Scalar& a, const Scalar& b);

    /// Bitwise identity for floating values, value identity for exact ones.
    bool identical(const Scalar& other) const;

private:
    friend Scalar fma_element(const Scalar& a, const Scalar& b, const Scalar& acc);

    Scalar(PrecisionMode mode, Rational value) : mode_(mode), value_(std::move(value)) {}
    Scalar(PrecisionMode mode, double value, bool overflow)
        : mode_(mode), overflow_(overflow), value_(value) {}

    PrecisionMode mode_;
    bool overflow_ = false;
    std::variant<Rational, double> value_;
};

/// Free-function spelling of Scalar::quantize.
inline Scalar quantize(double value, PrecisionMode mode) { return Scalar::quantize(value, mode); }
inline Scalar quantize(const Rational& value, PrecisionMode mode) { return Scalar::quantize(value, mode); }

/// a*b + acc, the element kernel of the MMA. Rounding follows the shared
/// mode (and its policy in mixed mode); exact in Exact mode.
/// Throws ModeMismatch if the operands disagree on mode.
Scalar fma_element(const Scalar& a, const Scalar& b, const Scalar& acc);

} // namespace tcr
