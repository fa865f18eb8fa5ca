#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tcr/ledger.hpp"
#include "tcr/scalar.hpp"

namespace tcr {

/// An m x m matrix of scalars sharing one precision mode, row-major.
class MatTile {
public:
    /// Throws InvalidTileDim for m < 2.
    static MatTile zeros(int m, PrecisionMode mode);
    static MatTile ones(int m, PrecisionMode mode);
    /// `entries` must hold m*m scalars in `mode`, row-major.
    /// Throws DimensionMismatch or ModeMismatch otherwise.
    static MatTile from_entries(int m, PrecisionMode mode, std::vector<Scalar> entries);
    /// Quantizes each value into `mode`.
    static MatTile from_values(int m, PrecisionMode mode, std::span<const double> values);

    int dim() const noexcept { return m_; }
    PrecisionMode mode() const noexcept { return mode_; }

    /// Zero-based row/column.
    const Scalar& operator()(int row, int col) const {
        return entries_[static_cast<std::size_t>(row) * static_cast<std::size_t>(m_) +
                        static_cast<std::size_t>(col)];
    }
    std::span<const Scalar> entries() const noexcept { return entries_; }

    friend bool operator==(const MatTile&, const MatTile&) = default;

private:
    MatTile(int m, PrecisionMode mode, std::vector<Scalar> entries)
        : m_(m), mode_(mode), entries_(std::move(entries)) {}

    int m_;
    PrecisionMode mode_;
    std::vector<Scalar> entries_;
};

/// D = A x B + C. Each D[i][j] starts from C[i][j] and accumulates
/// A[i][k] * B[k][j] for k = 0..m-1 in index order through fma_element.
/// Charges one MMA cycle to `ledger`.
/// Throws DimensionMismatch or ModeMismatch.
MatTile mma(const MatTile& a, const MatTile& b, const MatTile& c, CostLedger& ledger);

/// Fills a tile row-major from xs[offset .. offset + m*m), zero-padding
/// past the end of xs. Charges one coalesced read and one tile write.
/// Elements must be in `mode` (ModeMismatch otherwise).
MatTile load_group(std::span<const Scalar> xs, std::size_t offset, int m, PrecisionMode mode,
                   CostLedger& ledger);

/// The two-step MMA reduction of one m*m group, with the constant tiles
/// built once and shared by every group of a level.
class GroupReducer {
public:
    GroupReducer(int m, PrecisionMode mode);

    int dim() const noexcept { return ones_.dim(); }
    PrecisionMode mode() const noexcept { return ones_.mode(); }

    /// D = A*1 + 0 (every column holds the row sums), then
    /// D' = 1*D + 0 (every entry holds the group total). Returns D'[0][0].
    /// Charges two MMA cycles.
    Scalar reduce(const MatTile& group, CostLedger& ledger) const;

    /// Both intermediate tiles, for inspection.
    struct Steps {
        MatTile row_sums;
        MatTile totals;
    };
    Steps reduce_steps(const MatTile& group, CostLedger& ledger) const;

private:
    MatTile ones_;
    MatTile zeros_;
};

Scalar mma_reduce_group(const MatTile& group, CostLedger& ledger);

} // namespace tcr
