#include "tcr/rational.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tcr {

namespace {

__extension__ using i128 = __int128;
__extension__ using u128 = unsigned __int128;

// Inline values keep |num| and den below 2^63 so negation never overflows.
constexpr std::int64_t kInlineMax = std::numeric_limits<std::int64_t>::max();

bool fits(i128 v) noexcept { return v <= kInlineMax && v >= -kInlineMax; }

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) noexcept {
    if (a == 0) return b;
    if (b == 0) return a;
    const int shift = std::countr_zero(a | b);
    a >>= std::countr_zero(a);
    do {
        b >>= std::countr_zero(b);
        if (a > b) std::swap(a, b);
        b -= a;
    } while (b != 0);
    return a << shift;
}

u128 gcd_u128(u128 a, u128 b) noexcept {
    while (b != 0) {
        if ((a >> 64) == 0 && (b >> 64) == 0) {
            return gcd_u64(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
        }
        const u128 r = a % b;
        a = b;
        b = r;
    }
    return a;
}

u128 uabs(i128 v) noexcept { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

mpz_class to_mpz(i128 v) {
    const bool neg = v < 0;
    u128 mag = uabs(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(mag)));
    mpz_class out = (hi << 64) + lo;
    return neg ? mpz_class(-out) : out;
}

} // namespace

Rational::Rational(std::int64_t value) noexcept : num_(value) {
    if (value == std::numeric_limits<std::int64_t>::min()) {
        *this = normalized(mpq_class(mpz_class(std::to_string(value))));
    }
}

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    constexpr auto kMin = std::numeric_limits<std::int64_t>::min();
    if (num != kMin && den != kMin) {
        const std::uint64_t g = gcd_u64(static_cast<std::uint64_t>(num < 0 ? -num : num),
                                        static_cast<std::uint64_t>(den < 0 ? -den : den));
        num_ = (den < 0 ? -num : num) / static_cast<std::int64_t>(g);
        den_ = (den < 0 ? -den : den) / static_cast<std::int64_t>(g);
        return;
    }
    mpq_class q(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
    q.canonicalize();
    *this = normalized(std::move(q));
}

Rational::Rational(const mpq_class& q) {
    mpq_class c(q);
    c.canonicalize();
    *this = normalized(std::move(c));
}

Rational Rational::normalized(mpq_class q) {
    Rational r;
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 63 && mpz_sizeinbase(d.get_mpz_t(), 2) <= 63) {
        // Both magnitudes are below 2^63.
        const auto mag = static_cast<std::int64_t>(mpz_getlimbn(n.get_mpz_t(), 0));
        r.num_ = mpz_sgn(n.get_mpz_t()) < 0 ? -mag : mag;
        r.den_ = static_cast<std::int64_t>(mpz_getlimbn(d.get_mpz_t(), 0));
        if (mpz_sgn(n.get_mpz_t()) == 0) {
            r.num_ = 0;
            r.den_ = 1;
        }
        return r;
    }
    r.big_ = std::make_shared<const mpq_class>(std::move(q));
    return r;
}

Rational Rational::from_double(double value) {
    if (!std::isfinite(value)) {
        throw std::domain_error("non-finite value has no exact rational form");
    }
    if (value == 0.0) {
        return {};
    }
    int exponent = 0;
    const double frac = std::frexp(value, &exponent);
    // value = mant * 2^(exponent - 53), mant an integer of at most 53 bits.
    auto mant = static_cast<std::int64_t>(std::ldexp(frac, 53));
    int shift = exponent - 53;
    const int tz = std::countr_zero(static_cast<std::uint64_t>(mant < 0 ? -mant : mant));
    mant >>= tz; // arithmetic shift keeps sign; mant has tz trailing zeros
    shift += tz;
    Rational r;
    if (shift >= 0 && shift <= 9) {
        r.num_ = mant * (std::int64_t{1} << shift);
        return r;
    }
    if (shift < 0 && shift >= -62) {
        r.num_ = mant;
        r.den_ = std::int64_t{1} << (-shift);
        return r;
    }
    mpq_class q(value);
    return normalized(std::move(q));
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    auto bad = [&] { return std::invalid_argument("not a rational literal: '" + s + "'"); };
    if (s.empty()) {
        throw bad();
    }
    if (const auto slash = s.find('/'); slash != std::string::npos) {
        mpq_class q;
        if (q.set_str(s, 10) != 0 || q.get_den() == 0) {
            throw bad();
        }
        q.canonicalize();
        return normalized(std::move(q));
    }
    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
        negative = s[pos] == '-';
        ++pos;
    }
    std::string digits;
    long scale = 0;
    bool seen_digit = false;
    bool seen_point = false;
    for (; pos < s.size(); ++pos) {
        const char c = s[pos];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point) --scale;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) {
        throw bad();
    }
    if (pos < s.size()) {
        if (s[pos] != 'e' && s[pos] != 'E') {
            throw bad();
        }
        std::size_t used = 0;
        long exp10 = 0;
        try {
            exp10 = std::stol(s.substr(pos + 1), &used);
        } catch (const std::exception&) {
            throw bad();
        }
        if (used != s.size() - pos - 1) {
            throw bad();
        }
        scale += exp10;
    }
    mpz_class num(digits, 10);
    if (negative) num = -num;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    mpq_class q = scale < 0 ? mpq_class(num, pow10) : mpq_class(num * pow10);
    q.canonicalize();
    return normalized(std::move(q));
}

int Rational::sign() const noexcept {
    if (big_) return mpq_sgn(big_->get_mpq_t());
    return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
    return q;
}

double Rational::to_double(int* tail_sign) const {
    if (!big_ && std::fabs(static_cast<double>(num_)) <= 9007199254740992.0 &&
        den_ <= (std::int64_t{1} << 53)) {
        // Both operands exact in binary64, so IEEE division rounds once.
        const double d = static_cast<double>(num_) / static_cast<double>(den_);
        if (tail_sign) {
            *tail_sign = (*this - Rational::from_double(d)).sign();
        }
        return d;
    }
    const mpq_class q = to_mpq();
    const double truncated = mpq_get_d(q.get_mpq_t());
    double result = truncated;
    if (std::isfinite(truncated)) {
        const int s = mpq_sgn(q.get_mpq_t());
        const double away = std::nextafter(truncated, s < 0 ? -INFINITY : INFINITY);
        if (std::isfinite(away)) {
            mpq_class mid = (mpq_class(truncated) + mpq_class(away)) / 2;
            const int c = cmp(::abs(q), ::abs(mid));
            if (c > 0) {
                result = away;
            } else if (c == 0) {
                const auto bits = std::bit_cast<std::uint64_t>(truncated);
                result = (bits & 1u) ? away : truncated;
            }
        }
    }
    if (tail_sign) {
        *tail_sign = std::isfinite(result) ? sgn(q - mpq_class(result)) : 0;
    }
    return result;
}

std::string Rational::to_string() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
    if (big_) return normalized(mpq_class(-*big_));
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational operator+(const Rational& a, const Rational& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (!a.big_ && !b.big_) {
        if (a.den_ == b.den_) {
            const i128 n = static_cast<i128>(a.num_) + b.num_;
            if (n == 0) return {};
            const std::uint64_t g = a.den_ == 1 ? 1
                                                : gcd_u64(static_cast<std::uint64_t>(uabs(n)),
                                                          static_cast<std::uint64_t>(a.den_));
            const i128 num = n / static_cast<i128>(g);
            if (fits(num)) {
                Rational r;
                r.num_ = static_cast<std::int64_t>(num);
                r.den_ = a.den_ / static_cast<std::int64_t>(g);
                return r;
            }
            return Rational::normalized(mpq_class(to_mpz(num), to_mpz(a.den_ / static_cast<std::int64_t>(g))));
        }
        // Knuth 4.5.1: keep intermediates small by dividing out gcd(b, d).
        const auto g1 = static_cast<std::int64_t>(
            gcd_u64(static_cast<std::uint64_t>(a.den_), static_cast<std::uint64_t>(b.den_)));
        std::int64_t x = 0;
        std::int64_t y = 0;
        std::int64_t t64 = 0;
        if (!__builtin_mul_overflow(a.num_, b.den_ / g1, &x) && !__builtin_mul_overflow(b.num_, a.den_ / g1, &y) &&
            !__builtin_add_overflow(x, y, &t64) && t64 != std::numeric_limits<std::int64_t>::min()) {
            if (t64 == 0) return {};
            const auto g2 = g1 == 1 ? std::int64_t{1}
                                    : static_cast<std::int64_t>(gcd_u64(
                                          static_cast<std::uint64_t>(t64 < 0 ? -t64 : t64), static_cast<std::uint64_t>(g1)));
            std::int64_t den = 0;
            if (!__builtin_mul_overflow(a.den_ / g1, b.den_ / g2, &den)) {
                Rational r;
                r.num_ = t64 / g2;
                r.den_ = den;
                return r;
            }
        }
        const i128 bd = a.den_ / g1;
        const i128 dd = b.den_ / g1;
        const i128 t = static_cast<i128>(a.num_) * dd + static_cast<i128>(b.num_) * bd;
        if (t == 0) return {};
        const auto g2 = static_cast<i128>(gcd_u128(uabs(t), static_cast<u128>(g1)));
        const i128 num = t / g2;
        const i128 den = bd * (b.den_ / static_cast<std::int64_t>(g2));
        if (fits(num) && fits(den)) {
            Rational r;
            r.num_ = static_cast<std::int64_t>(num);
            r.den_ = static_cast<std::int64_t>(den);
            return r;
        }
        mpq_class q(to_mpz(num), to_mpz(den));
        return Rational::normalized(std::move(q));
    }
    return Rational::normalized(a.to_mpq() + b.to_mpq());
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    if (a.is_zero() || b.is_zero()) return {};
    if (!a.big_ && !b.big_) {
        const auto g1 = static_cast<std::int64_t>(gcd_u64(
            static_cast<std::uint64_t>(a.num_ < 0 ? -a.num_ : a.num_), static_cast<std::uint64_t>(b.den_)));
        const auto g2 = static_cast<std::int64_t>(gcd_u64(
            static_cast<std::uint64_t>(b.num_ < 0 ? -b.num_ : b.num_), static_cast<std::uint64_t>(a.den_)));
        const i128 num = static_cast<i128>(a.num_ / g1) * (b.num_ / g2);
        const i128 den = static_cast<i128>(a.den_ / g2) * (b.den_ / g1);
        if (fits(num) && fits(den)) {
            Rational r;
            r.num_ = static_cast<std::int64_t>(num);
            r.den_ = static_cast<std::int64_t>(den);
            return r;
        }
        return Rational::normalized(mpq_class(to_mpz(num), to_mpz(den)));
    }
    return Rational::normalized(a.to_mpq() * b.to_mpq());
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) {
        throw std::domain_error("rational division by zero");
    }
    return Rational::normalized(a.to_mpq() / b.to_mpq());
}

bool operator==(const Rational& a, const Rational& b) noexcept {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        const i128 lhs = static_cast<i128>(a.num_) * b.den_;
        const i128 rhs = static_cast<i128>(b.num_) * a.den_;
        return lhs <=> rhs;
    }
    const int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
}

void RationalSum::widen() {
    if (!narrow_) return;
    narrow_ = false;
    num_ = small_num_;
    den_ = small_den_;
}

void RationalSum::spill() {
    if (big_) return;
    widen();
    big_ = std::make_unique<mpq_class>(to_mpz(num_), to_mpz(den_));
    big_->canonicalize();
}

void RationalSum::add_word(std::int64_t num, std::int64_t den) {
    if (num == 0) return;
    if (narrow_) {
        std::int64_t a = small_num_;
        std::int64_t b = 0;
        std::int64_t d = small_den_;
        std::int64_t s_self = 1;
        std::int64_t s_other = 1;
        if (small_den_ != den) {
            if (const std::int64_t q = small_den_ / den; q * den == small_den_) {
                s_other = q;
            } else {
                const auto g = static_cast<std::int64_t>(
                    gcd_u64(static_cast<std::uint64_t>(small_den_), static_cast<std::uint64_t>(den)));
                s_self = den / g;
                s_other = small_den_ / g;
            }
        }
        std::int64_t r = 0;
        if ((s_self == 1 || (!__builtin_mul_overflow(small_num_, s_self, &a) &&
                             !__builtin_mul_overflow(small_den_, s_self, &d))) &&
            !__builtin_mul_overflow(num, s_other, &b) && !__builtin_add_overflow(a, b, &r)) {
            small_num_ = r;
            small_den_ = d;
            return;
        }
        widen();
    }
    add_fraction(num, den);
}

void RationalSum::add_fraction(i128 num, i128 den) {
    if (num == 0) return;
    widen();
    if (!big_) {
        if (den == den_) {
            if (!__builtin_add_overflow(num_, num, &num_)) return;
        } else {
            const auto g = static_cast<i128>(gcd_u128(static_cast<u128>(den_), static_cast<u128>(den)));
            const i128 scale_self = den / g;
            const i128 scale_other = den_ / g;
            i128 a = 0;
            i128 b = 0;
            i128 d = 0;
            i128 n = 0;
            if (!__builtin_mul_overflow(num_, scale_self, &a) && !__builtin_mul_overflow(num, scale_other, &b) &&
                !__builtin_mul_overflow(den_, scale_self, &d) && !__builtin_add_overflow(a, b, &n)) {
                num_ = n;
                den_ = d;
                return;
            }
        }
        spill();
    }
    mpq_class term(to_mpz(num), to_mpz(den));
    term.canonicalize();
    *big_ += term;
}

void RationalSum::add(const Rational& x) {
    if (x.big_) {
        spill();
        *big_ += *x.big_;
        return;
    }
    add_word(x.num_, x.den_);
}

void RationalSum::add_product(const Rational& a, const Rational& b) {
    if (a.big_ || b.big_) {
        add(a * b);
        return;
    }
    std::int64_t num = 0;
    std::int64_t den = 0;
    if (!__builtin_mul_overflow(a.num_, b.num_, &num) && !__builtin_mul_overflow(a.den_, b.den_, &den)) {
        add_word(num, den);
        return;
    }
    add_fraction(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Rational RationalSum::value() const {
    if (big_) return Rational::normalized(*big_);
    if (narrow_) {
        return Rational(small_num_, small_den_);
    }
    if (num_ == 0) return {};
    const auto g = static_cast<i128>(gcd_u128(uabs(num_), static_cast<u128>(den_)));
    const i128 num = num_ / g;
    const i128 den = den_ / g;
    if (fits(num) && fits(den)) {
        Rational r;
        r.num_ = static_cast<std::int64_t>(num);
        r.den_ = static_cast<std::int64_t>(den);
        return r;
    }
    return Rational::normalized(mpq_class(to_mpz(num), to_mpz(den)));
}

} // namespace tcr
