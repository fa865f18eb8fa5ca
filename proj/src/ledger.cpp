#include "tcr/ledger.hpp"

#include <stdexcept>
#include <string>

#include "tcr/errors.hpp"

namespace tcr {

namespace {

constexpr std::array<std::string_view, kOpClassCount> kNames = {
    "coalesced_read", "noncoalesced_read", "tile_rw", "mma_cycle", "classic_add", "classic_store",
};

} // namespace

std::string_view to_string(OpClass op) noexcept { return kNames[static_cast<std::size_t>(op)]; }

OpClass parse_op_class(std::string_view name) {
    for (std::size_t i = 0; i < kNames.size(); ++i) {
        if (kNames[i] == name) return static_cast<OpClass>(i);
    }
    throw UnknownOpClass("unknown op class '" + std::string(name) + "'");
}

std::uint64_t OpCounts::weighted(std::uint64_t w) const noexcept {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < kOpClassCount; ++i) {
        const auto op = static_cast<OpClass>(i);
        total += counts[i] * (op == OpClass::NoncoalescedRead ? w : 1);
    }
    return total;
}

void CostLedger::charge(OpClass op, std::uint64_t times) noexcept {
    steps_[op] += times;
    ops_[op] += times;
}

void CostLedger::charge_parallel(OpClass op, std::uint64_t workers) noexcept {
    if (workers == 0) return;
    steps_[op] += 1;
    ops_[op] += workers;
}

void CostLedger::append(const CostLedger& later) {
    if (later.w_ != w_) {
        throw std::invalid_argument("ledgers use different non-coalesced penalties");
    }
    for (std::size_t i = 0; i < kOpClassCount; ++i) {
        steps_.counts[i] += later.steps_.counts[i];
        ops_.counts[i] += later.ops_.counts[i];
    }
}

CostLedger CostLedger::join_parallel(std::span<const CostLedger> workers) {
    if (workers.empty()) return CostLedger{};
    CostLedger joined(workers.front().w_);
    const CostLedger* longest = &workers.front();
    for (const CostLedger& worker : workers) {
        if (worker.w_ != joined.w_) {
            throw std::invalid_argument("ledgers use different non-coalesced penalties");
        }
        if (worker.total_time() > longest->total_time()) longest = &worker;
        for (std::size_t i = 0; i < kOpClassCount; ++i) {
            joined.ops_.counts[i] += worker.ops_.counts[i];
        }
    }
    joined.steps_ = longest->steps_;
    return joined;
}

} // namespace tcr
