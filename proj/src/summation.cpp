#include "tcr/summation.hpp"

#include "tcr/errors.hpp"

namespace tcr {

Rational exact_sum(std::span<const Rational> values) {
    Rational total;
    for (const Rational& v : values) {
        total += v;
    }
    return total;
}

Rational exact_sum(std::span<const double> values) {
    Rational total;
    for (double v : values) {
        total += Rational::from_double(v);
    }
    return total;
}

Rational exact_sum(std::span<const Scalar> values) {
    Rational total;
    for (const Scalar& v : values) {
        total += v.to_rational();
    }
    return total;
}

Scalar compensated_sum(std::span<const Scalar> values, PrecisionMode mode) {
    if (mode.is_exact()) {
        throw ModeMismatch("compensated_sum needs a floating mode");
    }
    Scalar sum = Scalar::zero(mode);
    Scalar carry = Scalar::zero(mode);
    for (const Scalar& x : values) {
        const Scalar y = x - carry;
        const Scalar t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum;
}

} // namespace tcr
