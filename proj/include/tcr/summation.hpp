#pragma once

#include <span>

#include "tcr/rational.hpp"
#include "tcr/scalar.hpp"

namespace tcr {

/// Error-free sum; the oracle every precision measurement is taken against.
Rational exact_sum(std::span<const Rational> values);
Rational exact_sum(std::span<const double> values);
/// Sum of the exact values carried by `values`, whatever their modes.
Rational exact_sum(std::span<const Scalar> values);

/// Kahan-compensated running sum in `mode`, which must be a floating mode
/// shared by every element. Comparison baseline only.
Scalar compensated_sum(std::span<const Scalar> values, PrecisionMode mode);

} // namespace tcr
