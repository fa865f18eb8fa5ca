#include "tcr/plan.hpp"

#include <numeric>
#include <string>

#include "tcr/errors.hpp"

namespace tcr {

std::size_t ReductionPlan::total_groups() const noexcept {
    return std::accumulate(levels.begin(), levels.end(), std::size_t{0},
                           [](std::size_t acc, const LevelPlan& l) { return acc + l.group_count; });
}

std::size_t ReductionPlan::total_padded_slots() const noexcept {
    return std::accumulate(levels.begin(), levels.end(), std::size_t{0},
                           [](std::size_t acc, const LevelPlan& l) { return acc + l.padded_slots; });
}

ReductionPlan partition(std::size_t n, int m) {
    if (m < 2) {
        throw InvalidTileDim("tile dimension must be >= 2, got " + std::to_string(m));
    }
    ReductionPlan plan;
    plan.n = n;
    plan.m = m;
    const std::size_t group = plan.group_size();
    for (std::size_t size = n; size > 1;) {
        LevelPlan level;
        level.input_size = size;
        level.group_count = (size + group - 1) / group;
        level.padded_slots = level.group_count * group - size;
        plan.levels.push_back(level);
        size = level.group_count;
    }
    return plan;
}

} // namespace tcr
