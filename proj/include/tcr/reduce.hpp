#pragma once

#include <span>
#include <vector>

#include "tcr/ledger.hpp"
#include "tcr/plan.hpp"
#include "tcr/scalar.hpp"
#include "tcr/tile.hpp"

namespace tcr {

// Every reduction takes the mode explicitly so that an empty input still
// has a typed zero; all elements must be in that mode (ModeMismatch).

/// Left-to-right fold with a single accumulator.
Scalar reduce_sequential(std::span<const Scalar> xs, PrecisionMode mode);
/// As above, charging one classic add per addition.
Scalar reduce_sequential(std::span<const Scalar> xs, PrecisionMode mode, CostLedger& ledger);

/// Tree reduction: each level pairs x[i] with x[i + ceil(s/2)] and carries
/// the middle element of an odd-sized level. Charges 4 parallel steps per
/// level (two reads, one add, one store). Pairs run in parallel (OpenMP).
Scalar reduce_pairwise(std::span<const Scalar> xs, PrecisionMode mode, CostLedger& ledger);

/// One worker's share of a tensor level: load group `index` of `input`,
/// reduce it, write the total back (1 read + 1 tile load + 2 MMA + 1 tile
/// write). Returns the group total.
Scalar reduce_group_at(std::span<const Scalar> input, std::size_t index, const GroupReducer& reducer,
                       CostLedger& ledger);

/// Outputs of every level of a tensor reduction, for inspection.
struct TensorTrace {
    ReductionPlan plan;
    std::vector<std::vector<Scalar>> level_outputs;
};

/// Hierarchical MMA reduction: every level zero-pads into groups of m*m,
/// reduces each group with the two-step MMA (groups run in parallel under
/// OpenMP, each with its own ledger), and writes the group totals to a
/// fresh array in group order. A level costs 5 steps. Throws
/// InvalidTileDim for m < 2.
Scalar reduce_tensor(std::span<const Scalar> xs, int m, PrecisionMode mode, CostLedger& ledger,
                     TensorTrace* trace = nullptr);

/// Ledger reduce_tensor would produce for n elements, without touching any
/// data: the charges of one real group reduction (on a zero tile) are
/// replayed per level, with work scaled by the group count. Used for sizes
/// too large to materialise.
CostLedger tensor_schedule_ledger(std::uint64_t n, int m, std::uint64_t w = 32);

namespace serial {

/// Reference implementations kept for testing the parallel kernels: same
/// arithmetic in the same order, single-threaded, written directly from
/// the recurrences.
Scalar reduce_pairwise(std::span<const Scalar> xs, PrecisionMode mode, CostLedger& ledger);
Scalar reduce_tensor(std::span<const Scalar> xs, int m, PrecisionMode mode, CostLedger& ledger);

} // namespace serial

void require_mode(std::span<const Scalar> xs, PrecisionMode mode);

} // namespace tcr
