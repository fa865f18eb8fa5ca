#pragma once

#include <cstddef>
#include <vector>

namespace tcr {

struct LevelPlan {
    std::size_t input_size = 0;
    std::size_t group_count = 0;  // ceil(input_size / m^2)
    std::size_t padded_slots = 0; // group_count * m^2 - input_size
};

/// Level structure of the hierarchical MMA reduction of n elements.
struct ReductionPlan {
    std::size_t n = 0;
    int m = 0;
    std::vector<LevelPlan> levels;

    std::size_t group_size() const noexcept {
        return static_cast<std::size_t>(m) * static_cast<std::size_t>(m);
    }
    std::size_t total_levels() const noexcept { return levels.size(); }
    std::size_t total_groups() const noexcept;
    std::size_t total_padded_slots() const noexcept;
};

/// Levels shrink by ceil(size / m^2) until one value remains; n <= 1 needs
/// no level at all. Throws InvalidTileDim for m < 2.
ReductionPlan partition(std::size_t n, int m);

} // namespace tcr
