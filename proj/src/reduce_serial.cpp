#include "tcr/reduce.hpp"
#include "tcr/tile.hpp"

namespace tcr::serial {

namespace {

Scalar pairwise_level(std::vector<Scalar> level, CostLedger& ledger) {
    if (level.size() == 1) return level.front();
    const std::size_t half = level.size() / 2;
    const std::size_t upper = level.size() - half;
    std::vector<Scalar> next;
    next.reserve(upper);
    for (std::size_t i = 0; i < half; ++i) {
        next.push_back(level[i] + level[i + upper]);
    }
    if (upper != half) next.push_back(level[half]);
    for (OpClass op : {OpClass::CoalescedRead, OpClass::CoalescedRead, OpClass::ClassicAdd,
                       OpClass::ClassicStore}) {
        ledger.charge_parallel(op, half);
    }
    return pairwise_level(std::move(next), ledger);
}

// R(X) = R(M(x_1..x_g), M(x_{g+1}..x_{2g}), ...), R(x_1..x_g) = M(x_1..x_g).
Scalar tensor_recurrence(const std::vector<Scalar>& xs, int m, PrecisionMode mode,
                         CostLedger& ledger) {
    const GroupReducer reducer(m, mode);
    const std::size_t group = static_cast<std::size_t>(m) * static_cast<std::size_t>(m);
    std::vector<Scalar> partials;
    std::vector<CostLedger> workers;
    for (std::size_t index = 0; index * group < xs.size(); ++index) {
        CostLedger own(ledger.w());
        partials.push_back(reduce_group_at(xs, index, reducer, own));
        workers.push_back(own);
    }
    ledger.append(CostLedger::join_parallel(workers));
    if (partials.size() == 1) return partials.front();
    return tensor_recurrence(partials, m, mode, ledger);
}

} // namespace

Scalar reduce_pairwise(std::span<const Scalar> xs, PrecisionMode mode, CostLedger& ledger) {
    require_mode(xs, mode);
    if (xs.empty()) return Scalar::zero(mode);
    return pairwise_level(std::vector<Scalar>(xs.begin(), xs.end()), ledger);
}

Scalar reduce_tensor(std::span<const Scalar> xs, int m, PrecisionMode mode, CostLedger& ledger) {
    partition(xs.size(), m); // validates m
    require_mode(xs, mode);
    if (xs.empty()) return Scalar::zero(mode);
    if (xs.size() == 1) return xs.front();
    return tensor_recurrence(std::vector<Scalar>(xs.begin(), xs.end()), m, mode, ledger);
}

} // namespace tcr::serial
