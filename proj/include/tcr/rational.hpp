#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace tcr {

__extension__ using Int128 = __int128;

/// Exact rational number.
///
/// Values whose reduced numerator and denominator fit in 63 bits live
/// inline; anything larger is promoted to a shared, immutable GMP
/// rational. The representation is canonical: a value is stored inline
/// iff it fits, so equality never has to compare across representations.
class Rational {
public:
    Rational() noexcept = default;
    Rational(std::int64_t value) noexcept; // NOLINT(google-explicit-constructor)
    Rational(std::int64_t num, std::int64_t den);
    explicit Rational(const mpq_class& q);

    /// Exact value of a finite binary64. Throws std::domain_error on inf/NaN.
    static Rational from_double(double value);

    /// Parses "p", "p/q", or a decimal literal such as "-0.1" or "2.5e-3".
    static Rational parse(std::string_view text);

    bool is_inline() const noexcept { return big_ == nullptr; }
    bool is_zero() const noexcept { return big_ == nullptr && num_ == 0; }
    bool is_one() const noexcept { return big_ == nullptr && num_ == 1 && den_ == 1; }
    int sign() const noexcept;

    mpq_class to_mpq() const;

    /// Nearest binary64, ties to even. When `tail_sign` is given it receives
    /// the sign of (*this - result).
    double to_double(int* tail_sign = nullptr) const;

    std::string to_string() const;

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& other) { return *this = *this + other; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    Rational abs() const { return sign() < 0 ? -*this : *this; }

private:
    friend class RationalSum;
    static Rational normalized(mpq_class q);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::shared_ptr<const mpq_class> big_;
};

/// Running exact sum that defers normalisation to value(). Much cheaper
/// than repeated operator+= when many small-denominator terms are added.
class RationalSum {
public:
    RationalSum() = default;
    explicit RationalSum(const Rational& init) { add(init); }

    void add(const Rational& x);
    /// Adds a * b.
    void add_product(const Rational& a, const Rational& b);
    Rational value() const;

private:
    void add_word(std::int64_t num, std::int64_t den);
    void add_fraction(Int128 num, Int128 den);
    void widen();
    void spill();

    // Three tiers: 64-bit while it fits, then 128-bit, then GMP.
    bool narrow_ = true;
    std::int64_t small_num_ = 0;
    std::int64_t small_den_ = 1;
    Int128 num_ = 0;
    Int128 den_ = 1;
    std::unique_ptr<mpq_class> big_;
};

} // namespace tcr
