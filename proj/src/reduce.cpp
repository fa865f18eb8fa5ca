#include "tcr/reduce.hpp"

#include <cstddef>
#include <string>

#include "tcr/errors.hpp"
#include "tcr/tile.hpp"

namespace tcr {

void require_mode(std::span<const Scalar> xs, PrecisionMode mode) {
    for (const Scalar& x : xs) {
        if (!(x.mode() == mode)) {
            throw ModeMismatch("input element in mode " + to_string(x.mode()) + ", expected " +
                               to_string(mode));
        }
    }
}

Scalar reduce_group_at(std::span<const Scalar> input, std::size_t index, const GroupReducer& reducer,
                       CostLedger& ledger) {
    const int m = reducer.dim();
    const std::size_t group = static_cast<std::size_t>(m) * static_cast<std::size_t>(m);
    const MatTile tile = load_group(input, index * group, m, reducer.mode(), ledger);
    Scalar total = reducer.reduce(tile, ledger);
    ledger.charge(OpClass::TileRw); // write D'[0][0] back
    return total;
}

Scalar reduce_sequential(std::span<const Scalar> xs, PrecisionMode mode) {
    CostLedger scratch;
    return reduce_sequential(xs, mode, scratch);
}

Scalar reduce_sequential(std::span<const Scalar> xs, PrecisionMode mode, CostLedger& ledger) {
    require_mode(xs, mode);
    if (xs.empty()) return Scalar::zero(mode);
    ledger.charge(OpClass::ClassicAdd, xs.size() - 1);
    if (mode.is_exact()) {
        RationalSum acc;
        for (const Scalar& x : xs) acc.add(x.exact());
        return quantize(acc.value(), mode);
    }
    Scalar acc = xs.front();
    for (std::size_t i = 1; i < xs.size(); ++i) {
        acc = acc + xs[i];
    }
    return acc;
}

Scalar reduce_pairwise(std::span<const Scalar> xs, PrecisionMode mode, CostLedger& ledger) {
    require_mode(xs, mode);
    if (xs.empty()) return Scalar::zero(mode);
    std::vector<Scalar> work(xs.begin(), xs.end());
    std::size_t size = work.size();
    while (size > 1) {
        const std::size_t half = size / 2;
        const std::size_t upper = size - half;
        const auto pairs = static_cast<std::ptrdiff_t>(half);
        // Writes go to [0, half) and reads to [0, half) and [upper, size),
        // one index pair per thread, so the update can run in place.
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < pairs; ++i) {
            const auto k = static_cast<std::size_t>(i);
            work[k] = work[k] + work[k + upper];
        }
        ledger.charge_parallel(OpClass::CoalescedRead, half);
        ledger.charge_parallel(OpClass::CoalescedRead, half);
        ledger.charge_parallel(OpClass::ClassicAdd, half);
        ledger.charge_parallel(OpClass::ClassicStore, half);
        size = upper;
    }
    return work.front();
}

Scalar reduce_tensor(std::span<const Scalar> xs, int m, PrecisionMode mode, CostLedger& ledger,
                     TensorTrace* trace) {
    ReductionPlan plan = partition(xs.size(), m);
    require_mode(xs, mode);
    if (trace) {
        trace->plan = plan;
        trace->level_outputs.clear();
    }
    if (xs.empty()) return Scalar::zero(mode);
    if (xs.size() == 1) return xs.front();

    const GroupReducer reducer(m, mode);
    std::vector<Scalar> current;
    std::span<const Scalar> input = xs;
    for (const LevelPlan& level : plan.levels) {
        std::vector<Scalar> next(level.group_count);
        std::vector<CostLedger> workers(level.group_count, CostLedger(ledger.w()));
        const auto groups = static_cast<std::ptrdiff_t>(level.group_count);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t g = 0; g < groups; ++g) {
            const auto idx = static_cast<std::size_t>(g);
            next[idx] = reduce_group_at(input, idx, reducer, workers[idx]);
        }
        ledger.append(CostLedger::join_parallel(workers));
        if (trace) trace->level_outputs.push_back(next);
        current = std::move(next);
        input = current;
    }
    return current.front();
}

CostLedger tensor_schedule_ledger(std::uint64_t n, int m, std::uint64_t w) {
    const ReductionPlan plan = partition(static_cast<std::size_t>(n), m);
    CostLedger group(w);
    reduce_group_at({}, 0, GroupReducer(m, PrecisionMode::fp64()), group);

    CostLedger total(w);
    for (const LevelPlan& level : plan.levels) {
        for (std::size_t i = 0; i < kOpClassCount; ++i) {
            const auto op = static_cast<OpClass>(i);
            for (std::uint64_t step = 0; step < group.steps()[op]; ++step) {
                total.charge_parallel(op, level.group_count);
            }
        }
    }
    return total;
}

} // namespace tcr
