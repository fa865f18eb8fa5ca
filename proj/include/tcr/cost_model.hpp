#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "tcr/rational.hpp"

namespace tcr {

enum class Formula {
    Classic,     // 4 * ceil(log2 n)
    Tensor,      // 5 * ceil(log_{m^2} n)
    Sequential,  // n - 1 additions
    Compensated, // 4 floating operations per element
};

std::string_view to_string(Formula f) noexcept;

struct CostPrediction {
    std::uint64_t n = 0;
    int m = 0;                           // 0 when the formula has no tile
    std::optional<std::uint64_t> p;      // processors, when relevant
    std::uint64_t steps = 0;
    Formula formula = Formula::Classic;
};

/// ceil(log_base(n)) computed with integers; 0 for n <= 1.
std::uint64_t ceil_log(std::uint64_t n, std::uint64_t base);

/// Classic pairwise reduction: T(n) = 4 + T(n/2). Throws DomainError for n < 2.
CostPrediction predict_classic(std::uint64_t n);

/// MMA reduction: T(n) = 5 + T(n/m^2), T(m^2) = 5.
/// Throws DomainError for n < 2 and InvalidTileDim for m < 2.
CostPrediction predict_tensor(std::uint64_t n, int m);

CostPrediction predict_sequential(std::uint64_t n);
CostPrediction predict_compensated(std::uint64_t n);

/// (4/5) * log2(m^2). Throws InvalidTileDim for m < 2.
double speedup(int m);

/// The same ratio as an exact rational, available when m is a power of two.
std::optional<Rational> speedup_exact(int m);

/// C_p = T_p * p.
double parallel_cost(double steps, double processors);

/// Brent: T_p(n) <= T_1(n)/p + T_inf(n), with T_1 = n and T_inf = log2 n.
double brent_bound(double n, double processors);

/// A concrete cost-efficient schedule for the classic reduction:
/// p = ceil(n / log2 n) processors each fold ceil(n/p) elements
/// sequentially, then a pairwise tree combines the p partial sums.
struct BrentSchedule {
    std::uint64_t n = 0;
    std::uint64_t processors = 0;
    std::uint64_t steps = 0; // (ceil(n/p) - 1) + ceil(log2 p)
    std::uint64_t cost = 0;  // steps * processors
};

/// Throws DomainError for n < 2.
BrentSchedule brent_schedule(std::uint64_t n);

} // namespace tcr
