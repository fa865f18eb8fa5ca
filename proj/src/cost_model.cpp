#include "tcr/cost_model.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "tcr/errors.hpp"

namespace tcr {

std::string_view to_string(Formula f) noexcept {
    switch (f) {
    case Formula::Classic: return "classic";
    case Formula::Tensor: return "tensor";
    case Formula::Sequential: return "sequential";
    case Formula::Compensated: break;
    }
    return "compensated";
}

std::uint64_t ceil_log(std::uint64_t n, std::uint64_t base) {
    if (base < 2) {
        throw DomainError("logarithm base must be at least 2");
    }
    std::uint64_t levels = 0;
    for (std::uint64_t size = n; size > 1; size = (size + base - 1) / base) {
        ++levels;
    }
    return levels;
}

namespace {

void require_tile(int m) {
    if (m < 2) {
        throw InvalidTileDim("tile dimension must be >= 2, got " + std::to_string(m));
    }
}

void require_size(std::uint64_t n) {
    if (n < 2) {
        throw DomainError("problem size must be >= 2, got " + std::to_string(n));
    }
}

} // namespace

CostPrediction predict_classic(std::uint64_t n) {
    require_size(n);
    return {n, 0, std::nullopt, 4 * ceil_log(n, 2), Formula::Classic};
}

CostPrediction predict_tensor(std::uint64_t n, int m) {
    require_tile(m);
    require_size(n);
    const auto group = static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(m);
    return {n, m, std::nullopt, 5 * ceil_log(n, group), Formula::Tensor};
}

CostPrediction predict_sequential(std::uint64_t n) {
    return {n, 0, std::uint64_t{1}, n == 0 ? 0 : n - 1, Formula::Sequential};
}

CostPrediction predict_compensated(std::uint64_t n) {
    return {n, 0, std::uint64_t{1}, 4 * n, Formula::Compensated};
}

double speedup(int m) {
    require_tile(m);
    const double mm = static_cast<double>(m) * static_cast<double>(m);
    return 4.0 * std::log2(mm) / 5.0;
}

std::optional<Rational> speedup_exact(int m) {
    require_tile(m);
    const auto um = static_cast<unsigned>(m);
    if (!std::has_single_bit(um)) {
        return std::nullopt;
    }
    // log2(m^2) = 2 * log2(m)
    const auto log2m = static_cast<std::int64_t>(std::countr_zero(um));
    return Rational(8 * log2m, 5);
}

double parallel_cost(double steps, double processors) { return steps * processors; }

double brent_bound(double n, double processors) { return n / processors + std::log2(n); }

BrentSchedule brent_schedule(std::uint64_t n) {
    require_size(n);
    const auto log2n = std::max<std::uint64_t>(1, ceil_log(n, 2));
    const std::uint64_t p = (n + log2n - 1) / log2n;
    const std::uint64_t chunk = (n + p - 1) / p;
    BrentSchedule s;
    s.n = n;
    s.processors = p;
    s.steps = (chunk - 1) + ceil_log(p, 2);
    s.cost = s.steps * p;
    return s;
}

} // namespace tcr
