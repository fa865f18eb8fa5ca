#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace tcr {

/// Operation classes of the simplified GPU cost model.
enum class OpClass : std::uint8_t {
    CoalescedRead,     // 1 unit
    NoncoalescedRead,  // w units
    TileRw,            // simultaneous r/w into tensor-core tiles, 1 unit
    MmaCycle,          // one MMA, 1 unit
    ClassicAdd,        // 1 unit
    ClassicStore,      // 1 unit
};

inline constexpr std::size_t kOpClassCount = 6;

std::string_view to_string(OpClass op) noexcept;
/// Throws UnknownOpClass.
OpClass parse_op_class(std::string_view name);

struct OpCounts {
    std::array<std::uint64_t, kOpClassCount> counts{};

    std::uint64_t operator[](OpClass op) const noexcept { return counts[static_cast<std::size_t>(op)]; }
    std::uint64_t& operator[](OpClass op) noexcept { return counts[static_cast<std::size_t>(op)]; }

    /// Weighted sum: every class costs 1 except non-coalesced reads (w).
    std::uint64_t weighted(std::uint64_t w) const noexcept;

    friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

/// Simulated time under the cost model.
///
/// Two tallies are kept. `steps` is the critical path: a sequence of
/// charges adds up, while ledgers of workers running side by side are
/// combined with join_parallel, which keeps the longest one. `ops` counts
/// every charged operation across all workers. In a single worker the two
/// agree.
class CostLedger {
public:
    explicit CostLedger(std::uint64_t noncoalesced_penalty = 32) noexcept : w_(noncoalesced_penalty) {}

    void charge(OpClass op, std::uint64_t times = 1) noexcept;

    /// One parallel step in which `workers` threads each perform `op`.
    void charge_parallel(OpClass op, std::uint64_t workers) noexcept;

    /// Sequential composition: `later` runs after everything in *this.
    void append(const CostLedger& later);

    /// Ledger of workers that ran concurrently. Steps come from the worker
    /// with the largest total time (first one on ties); ops are summed.
    /// Throws std::invalid_argument if the penalties disagree.
    static CostLedger join_parallel(std::span<const CostLedger> workers);

    std::uint64_t w() const noexcept { return w_; }
    const OpCounts& steps() const noexcept { return steps_; }
    const OpCounts& ops() const noexcept { return ops_; }

    std::uint64_t total_time() const noexcept { return steps_.weighted(w_); }
    std::uint64_t total_work() const noexcept { return ops_.weighted(w_); }

    std::uint64_t coalesced_reads() const noexcept { return steps_[OpClass::CoalescedRead]; }
    std::uint64_t noncoalesced_reads() const noexcept { return steps_[OpClass::NoncoalescedRead]; }
    std::uint64_t tile_rw() const noexcept { return steps_[OpClass::TileRw]; }
    std::uint64_t mma_cycles() const noexcept { return steps_[OpClass::MmaCycle]; }
    std::uint64_t classic_add_steps() const noexcept { return steps_[OpClass::ClassicAdd]; }
    std::uint64_t classic_store_steps() const noexcept { return steps_[OpClass::ClassicStore]; }

    /// MMAs issued across all workers.
    std::uint64_t mma_ops() const noexcept { return ops_[OpClass::MmaCycle]; }

    friend bool operator==(const CostLedger&, const CostLedger&) = default;

private:
    std::uint64_t w_;
    OpCounts steps_;
    OpCounts ops_;
};

} // namespace tcr
