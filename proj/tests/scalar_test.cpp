#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "half_oracle.hpp"
#include "tcr/errors.hpp"
#include "tcr/reduce.hpp"
#include "tcr/scalar.hpp"
#include "tcr/summation.hpp"

using namespace tcr;

namespace {

const PrecisionMode kExact = PrecisionMode::exact();
const PrecisionMode kMixed = PrecisionMode::mixed();
const PrecisionMode kStrict = PrecisionMode::mixed(RoundingPolicy::StrictFp16);

std::vector<PrecisionMode> all_modes() {
    return {kExact, PrecisionMode::fp64(), PrecisionMode::fp32(), kMixed, kStrict};
}

std::vector<Scalar> as_scalars(const std::vector<double>& v, PrecisionMode mode) {
    std::vector<Scalar> out;
    for (double x : v) out.push_back(quantize(x, mode));
    return out;
}

} // namespace

TEST_CASE("quantize examples") {
    CHECK(quantize(1.0, kMixed).to_double() == 1.0);
    CHECK(quantize(2049.0, kStrict).to_double() == 2048.0);
    CHECK(quantize(2049.0, kMixed).to_double() == 2049.0); // stored in binary32
    CHECK(quantize(Rational::parse("0.1"), kExact).exact() == Rational(1, 10));
    CHECK(quantize(0.1, PrecisionMode::fp32()).to_double() == static_cast<double>(0.1f));
}

TEST_CASE("quantizing a rational rounds once") {
    // 1/3 into binary16 directly versus through binary64 must agree with
    // the brute-force table.
    for (int den = 3; den < 400; den += 7) {
        for (int num = -50; num <= 50; num += 3) {
            const Rational q(num * 1000 + 1, den);
            REQUIRE(quantize(q, kStrict).to_double() == tcr::testing::nearest_half(q));
        }
    }
    // 2049 + 2^-40 sits just above the binary16 tie at 2049.
    const Rational nudged = Rational(2049) + Rational::from_double(std::ldexp(1.0, -40));
    CHECK(quantize(nudged, kStrict).to_double() == 2050.0);
}

TEST_CASE("overflow is recorded, not fatal") {
    const Scalar big = quantize(70000.0, kStrict);
    CHECK(std::isinf(big.to_double()));
    CHECK(big.overflowed());
    CHECK_FALSE(quantize(60000.0, kStrict).overflowed());
    const Scalar x = quantize(60000.0, kStrict);
    const Scalar sum = x + x;
    CHECK(std::isinf(sum.to_double()));
    CHECK(sum.overflowed());
    CHECK((sum + x).overflowed());
    CHECK(std::isnan((sum - sum).to_double()));
}

TEST_CASE("fma_element examples") {
    for (PrecisionMode mode : all_modes()) {
        CAPTURE(to_string(mode));
        const auto s = [&](double v) { return quantize(v, mode); };
        CHECK(fma_element(s(2), s(3), s(4)) == s(10));
        CHECK(fma_element(s(0), s(5.5), s(7)) == s(7));
    }
    // operand rounded to binary16 before the product: 1024.5 -> 1024
    CHECK(fma_element(quantize(1024.5, kMixed), quantize(1.0, kMixed), quantize(0.0, kMixed)).to_double() ==
          1024.0);
    CHECK_THROWS_AS(fma_element(quantize(1.0, kMixed), quantize(1.0, kExact), quantize(1.0, kMixed)),
                    ModeMismatch);
}

TEST_CASE("mixed fp32 accumulation is exact when the exact result fits binary32") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> pick(0, 0x7bff);
    int exact_cases = 0;
    for (int i = 0; i < 20000; ++i) {
        const double a = tcr::testing::decode_binary16(static_cast<std::uint16_t>(pick(rng)));
        const double b = tcr::testing::decode_binary16(static_cast<std::uint16_t>(pick(rng))) * (i % 2 ? -1 : 1);
        const double c = static_cast<double>(static_cast<float>(std::ldexp(static_cast<double>(rng() % 4096), static_cast<int>(rng() % 20) - 10)));
        const Rational exact = Rational::from_double(a) * Rational::from_double(b) + Rational::from_double(c);
        const double as_double = exact.to_double();
        if (static_cast<double>(static_cast<float>(as_double)) != as_double ||
            Rational::from_double(as_double) != exact) {
            continue; // exact result not representable in binary32
        }
        ++exact_cases;
        const Scalar r = fma_element(quantize(a, kMixed), quantize(b, kMixed), quantize(c, kMixed));
        REQUIRE(r.to_rational() == exact);
    }
    CHECK(exact_cases > 1000);
}

TEST_CASE("quantization is idempotent and monotone") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> e(-30.0, 20.0);
    for (PrecisionMode mode : all_modes()) {
        std::vector<double> vs;
        for (int i = 0; i < 2000; ++i) vs.push_back((i % 2 ? -1 : 1) * std::exp2(e(rng)));
        std::sort(vs.begin(), vs.end());
        for (std::size_t i = 0; i < vs.size(); ++i) {
            const Scalar q = quantize(vs[i], mode);
            if (!q.is_finite()) continue; // binary16 overflow
            REQUIRE(quantize(q.to_rational(), mode) == q);
            if (i > 0 && quantize(vs[i - 1], mode).is_finite()) {
                REQUIRE(quantize(vs[i - 1], mode).to_rational() <= q.to_rational());
            }
        }
    }
}

TEST_CASE("exact_sum examples and homomorphism") {
    CHECK(exact_sum(std::span<const double>{}) == Rational{});
    std::vector<double> one_to_16;
    for (int i = 1; i <= 16; ++i) one_to_16.push_back(i);
    CHECK(exact_sum(std::span<const double>(one_to_16)) == Rational(16 * 17 / 2));
    const std::vector<Rational> tenths(10, Rational::parse("0.1"));
    CHECK(exact_sum(std::span<const Rational>(tenths)) == Rational(1));

    std::mt19937_64 rng(21);
    std::uniform_int_distribution<std::int64_t> num(-1000000, 1000000);
    std::uniform_int_distribution<std::int64_t> den(1, 97);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Rational> xs;
        std::vector<Rational> ys;
        for (int i = 0; i < 50; ++i) xs.emplace_back(num(rng), den(rng));
        for (int i = 0; i < 30; ++i) ys.emplace_back(num(rng), den(rng));
        std::vector<Rational> both = xs;
        both.insert(both.end(), ys.begin(), ys.end());
        REQUIRE(exact_sum(std::span<const Rational>(both)) ==
                exact_sum(std::span<const Rational>(xs)) + exact_sum(std::span<const Rational>(ys)));
    }
}

TEST_CASE("compensated_sum examples") {
    const PrecisionMode fp32 = PrecisionMode::fp32();
    CHECK(compensated_sum({}, fp32) == Scalar::zero(fp32));
    const auto four = as_scalars({1, 2, 3, 4}, fp32);
    CHECK(compensated_sum(four, fp32).to_double() == 10.0);
    CHECK_THROWS_AS(compensated_sum(four, kExact), ModeMismatch);
    CHECK_THROWS_AS(compensated_sum(four, PrecisionMode::fp64()), ModeMismatch);

    const auto thousandths = as_scalars(std::vector<double>(10000, 0.001), fp32);
    const Rational oracle = exact_sum(std::span<const Scalar>(thousandths));
    const Rational kahan_err = (compensated_sum(thousandths, fp32).to_rational() - oracle).abs();
    const Rational naive_err = (reduce_sequential(thousandths, fp32).to_rational() - oracle).abs();
    CHECK(kahan_err <= naive_err);
    CHECK(std::fabs(compensated_sum(thousandths, fp32).to_double() - 10.0) < 1e-3);
}

TEST_CASE("compensated_sum stays within the Kahan error bound") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (PrecisionMode mode : {PrecisionMode::fp32(), PrecisionMode::fp64(), kMixed}) {
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<double> raw;
            const int n = 100 + trial * 50;
            for (int i = 0; i < n; ++i) raw.push_back(u(rng) * std::exp2(static_cast<int>(rng() % 10)));
            const auto xs = as_scalars(raw, mode);
            const Rational oracle = exact_sum(std::span<const Scalar>(xs));
            const Rational kahan = (compensated_sum(xs, mode).to_rational() - oracle).abs();
            // |E| <= (2u + 4n u^2) * sum |x|
            const int p = traits(mode.storage_format()).precision;
            const Rational u(1, std::int64_t{1} << p);
            Rational magnitude;
            for (const Scalar& x : xs) magnitude += x.to_rational().abs();
            REQUIRE(kahan <= (Rational(2) * u + Rational(4 * n) * u * u) * magnitude);
        }
    }
}

TEST_CASE("exact mode never leaves the rationals") {
    const Scalar third = quantize(Rational(1, 3), kExact);
    Scalar acc = Scalar::zero(kExact);
    for (int i = 0; i < 300; ++i) acc = fma_element(third, third, acc);
    CHECK(acc.is_finite());
    CHECK(acc.exact() == Rational(300, 9));
    CHECK_THROWS(quantize(INFINITY, kExact));
}
