#include "tcr/scalar.hpp"

#include <bit>
#include <charconv>
#include <cmath>

#include "tcr/errors.hpp"

namespace tcr {

Format PrecisionMode::storage_format() const noexcept {
    switch (tag) {
    case PrecisionTag::Fp32: return Format::Binary32;
    case PrecisionTag::MixedFp16Fp32:
        return policy == RoundingPolicy::StrictFp16 ? Format::Binary16 : Format::Binary32;
    case PrecisionTag::Exact:
    case PrecisionTag::Fp64: break;
    }
    return Format::Binary64;
}

Format PrecisionMode::operand_format() const noexcept {
    return is_mixed() ? Format::Binary16 : storage_format();
}

std::string_view to_string(PrecisionTag tag) noexcept {
    switch (tag) {
    case PrecisionTag::Exact: return "exact";
    case PrecisionTag::Fp64: return "fp64";
    case PrecisionTag::Fp32: return "fp32";
    case PrecisionTag::MixedFp16Fp32: break;
    }
    return "mixed";
}

std::string_view to_string(RoundingPolicy policy) noexcept {
    return policy == RoundingPolicy::StrictFp16 ? "strict-fp16" : "fp32-acc";
}

std::string to_string(PrecisionMode mode) {
    std::string out(to_string(mode.tag));
    if (mode.is_mixed()) {
        out += '/';
        out += to_string(mode.policy);
    }
    return out;
}

std::optional<PrecisionTag> parse_precision_tag(std::string_view name) noexcept {
    if (name == "exact") return PrecisionTag::Exact;
    if (name == "fp64") return PrecisionTag::Fp64;
    if (name == "fp32") return PrecisionTag::Fp32;
    if (name == "mixed") return PrecisionTag::MixedFp16Fp32;
    return std::nullopt;
}

std::optional<RoundingPolicy> parse_rounding_policy(std::string_view name) noexcept {
    if (name == "fp32-acc") return RoundingPolicy::Fp32Accumulate;
    if (name == "strict-fp16") return RoundingPolicy::StrictFp16;
    return std::nullopt;
}

namespace {

void require_same_mode(const Scalar& a, const Scalar& b) {
    if (!(a.mode() == b.mode())) {
        throw ModeMismatch("scalar modes differ: " + to_string(a.mode()) + " vs " +
                           to_string(b.mode()));
    }
}

bool became_infinite(double result, std::initializer_list<double> inputs) {
    if (!std::isinf(result)) return false;
    for (double v : inputs) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

} // namespace

Scalar Scalar::zero(PrecisionMode mode) {
    if (mode.is_exact()) return Scalar(mode, Rational{});
    return Scalar(mode, 0.0, false);
}

Scalar Scalar::one(PrecisionMode mode) {
    if (mode.is_exact()) return Scalar(mode, Rational{1});
    return Scalar(mode, 1.0, false);
}

Scalar Scalar::quantize(double value, PrecisionMode mode) {
    if (mode.is_exact()) {
        return Scalar(mode, Rational::from_double(value));
    }
    const double q = round_to(value, mode.storage_format());
    return Scalar(mode, q, became_infinite(q, {value}));
}

Scalar Scalar::quantize(const Rational& value, PrecisionMode mode) {
    if (mode.is_exact()) {
        return Scalar(mode, value);
    }
    int tail = 0;
    const double nearest = value.to_double(&tail);
    const double q = round_to(nearest, mode.storage_format(), tail);
    return Scalar(mode, q, std::isinf(q));
}

bool Scalar::is_finite() const noexcept {
    return mode_.is_exact() || std::isfinite(std::get<double>(value_));
}

double Scalar::to_double() const {
    if (mode_.is_exact()) return exact().to_double();
    return floating();
}

Rational Scalar::to_rational() const {
    if (mode_.is_exact()) return exact();
    return Rational::from_double(floating());
}

std::string Scalar::to_string() const {
    if (mode_.is_exact()) return exact().to_string();
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, floating());
    return std::string(buf, res.ptr);
}

Scalar Scalar::operator-() const {
    if (mode_.is_exact()) return Scalar(mode_, -exact());
    return Scalar(mode_, -floating(), overflow_);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    require_same_mode(a, b);
    if (a.mode_.is_exact()) return Scalar(a.mode_, a.exact() + b.exact());
    const double x = a.floating();
    const double y = b.floating();
    const double r = add_in(x, y, a.mode_.storage_format());
    return Scalar(a.mode_, r, a.overflow_ || b.overflow_ || became_infinite(r, {x, y}));
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
    return fma_element(a, b, Scalar::zero(a.mode()));
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (!(a.mode_ == b.mode_)) return false;
    if (a.mode_.is_exact()) return a.exact() == b.exact();
    return a.floating() == b.floating();
}

bool Scalar::identical(const Scalar& other) const {
    if (!(mode_ == other.mode_)) return false;
    if (mode_.is_exact()) return exact() == other.exact();
    return std::bit_cast<std::uint64_t>(floating()) == std::bit_cast<std::uint64_t>(other.floating());
}

Scalar fma_element(const Scalar& a, const Scalar& b, const Scalar& acc) {
    require_same_mode(a, b);
    require_same_mode(a, acc);
    const PrecisionMode mode = a.mode_;
    if (mode.is_exact()) {
        return Scalar(mode, acc.exact() + a.exact() * b.exact());
    }
    const Format operand = mode.operand_format();
    const Format storage = mode.storage_format();
    const double x = round_to(a.floating(), operand);
    const double y = round_to(b.floating(), operand);
    const double c = acc.floating();
    const double r = fma_in(x, y, c, storage);
    const bool overflow = a.overflow_ || b.overflow_ || acc.overflow_ ||
                          became_infinite(x, {a.floating()}) || became_infinite(y, {b.floating()}) ||
                          became_infinite(r, {x, y, c});
    return Scalar(mode, r, overflow);
}

} // namespace tcr
