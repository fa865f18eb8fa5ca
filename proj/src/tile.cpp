#include "tcr/tile.hpp"

#include <string>

#include "tcr/errors.hpp"

namespace tcr {

namespace {

void require_dim(int m) {
    if (m < 2) {
        throw InvalidTileDim("tile dimension must be >= 2, got " + std::to_string(m));
    }
}

std::size_t area(int m) { return static_cast<std::size_t>(m) * static_cast<std::size_t>(m); }

} // namespace

MatTile MatTile::zeros(int m, PrecisionMode mode) {
    require_dim(m);
    return MatTile(m, mode, std::vector<Scalar>(area(m), Scalar::zero(mode)));
}

MatTile MatTile::ones(int m, PrecisionMode mode) {
    require_dim(m);
    return MatTile(m, mode, std::vector<Scalar>(area(m), Scalar::one(mode)));
}

MatTile MatTile::from_entries(int m, PrecisionMode mode, std::vector<Scalar> entries) {
    require_dim(m);
    if (entries.size() != area(m)) {
        throw DimensionMismatch("tile of dimension " + std::to_string(m) + " needs " +
                                std::to_string(area(m)) + " entries, got " +
                                std::to_string(entries.size()));
    }
    for (const Scalar& s : entries) {
        if (!(s.mode() == mode)) {
            throw ModeMismatch("tile entry in mode " + to_string(s.mode()) + ", tile is " +
                               to_string(mode));
        }
    }
    return MatTile(m, mode, std::move(entries));
}

MatTile MatTile::from_values(int m, PrecisionMode mode, std::span<const double> values) {
    std::vector<Scalar> entries;
    entries.reserve(values.size());
    for (double v : values) {
        entries.push_back(Scalar::quantize(v, mode));
    }
    return from_entries(m, mode, std::move(entries));
}

MatTile mma(const MatTile& a, const MatTile& b, const MatTile& c, CostLedger& ledger) {
    if (a.dim() != b.dim() || a.dim() != c.dim()) {
        throw DimensionMismatch("mma operands have dimensions " + std::to_string(a.dim()) + ", " +
                                std::to_string(b.dim()) + ", " + std::to_string(c.dim()));
    }
    if (!(a.mode() == b.mode()) || !(a.mode() == c.mode())) {
        throw ModeMismatch("mma operands have different precision modes");
    }
    const int m = a.dim();
    std::vector<Scalar> out;
    out.reserve(area(m));
    if (a.mode().is_exact()) {
        // Same arithmetic as fma_element, without per-element mode checks.
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                RationalSum acc(c(i, j).exact());
                for (int k = 0; k < m; ++k) {
                    acc.add_product(a(i, k).exact(), b(k, j).exact());
                }
                out.push_back(Scalar::quantize(acc.value(), a.mode()));
            }
        }
    } else {
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                Scalar acc = c(i, j);
                for (int k = 0; k < m; ++k) {
                    acc = fma_element(a(i, k), b(k, j), acc);
                }
                out.push_back(std::move(acc));
            }
        }
    }
    ledger.charge(OpClass::MmaCycle);
    return MatTile::from_entries(m, a.mode(), std::move(out));
}

MatTile load_group(std::span<const Scalar> xs, std::size_t offset, int m, PrecisionMode mode,
                   CostLedger& ledger) {
    require_dim(m);
    const std::size_t size = area(m);
    std::vector<Scalar> entries;
    entries.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        const std::size_t idx = offset + i;
        entries.push_back(idx < xs.size() ? xs[idx] : Scalar::zero(mode));
    }
    ledger.charge(OpClass::CoalescedRead);
    ledger.charge(OpClass::TileRw);
    return MatTile::from_entries(m, mode, std::move(entries));
}

GroupReducer::GroupReducer(int m, PrecisionMode mode)
    : ones_(MatTile::ones(m, mode)), zeros_(MatTile::zeros(m, mode)) {}

GroupReducer::Steps GroupReducer::reduce_steps(const MatTile& group, CostLedger& ledger) const {
    MatTile row_sums = mma(group, ones_, zeros_, ledger);
    MatTile totals = mma(ones_, row_sums, zeros_, ledger);
    return {std::move(row_sums), std::move(totals)};
}

Scalar GroupReducer::reduce(const MatTile& group, CostLedger& ledger) const {
    return reduce_steps(group, ledger).totals(0, 0);
}

Scalar mma_reduce_group(const MatTile& group, CostLedger& ledger) {
    return GroupReducer(group.dim(), group.mode()).reduce(group, ledger);
}

} // namespace tcr
