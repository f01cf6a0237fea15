#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace locsom {

using UnitId = std::uint32_t;

/// Fixed rows x cols lattice with 4-connected adjacency. Units are
/// numbered row-major; graph distance is the Manhattan distance between
/// lattice coordinates.
class LatticeGraph {
public:
    LatticeGraph(std::size_t rows, std::size_t cols);

    /// Square side x side lattice.
    static LatticeGraph square(std::size_t side) { return {side, side}; }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return rows_ * cols_; }

    UnitId unit(std::size_t row, std::size_t col) const noexcept {
        return static_cast<UnitId>(row * cols_ + col);
    }
    std::size_t row_of(UnitId j) const noexcept { return j / cols_; }
    std::size_t col_of(UnitId j) const noexcept { return j % cols_; }

    std::size_t distance(UnitId j, UnitId k) const noexcept;
    bool adjacent(UnitId j, UnitId k) const noexcept { return distance(j, k) == 1; }

    /// Largest graph distance between any two units.
    std::size_t diameter() const noexcept { return (rows_ - 1) + (cols_ - 1); }

    struct Neighbors {
        std::array<UnitId, 4> ids{};
        std::size_t count = 0;

        const UnitId* begin() const noexcept { return ids.data(); }
        const UnitId* end() const noexcept { return ids.data() + count; }
    };

    Neighbors neighbors(UnitId j) const noexcept;

    /// Every lattice edge once, as (lower id, higher id).
    const std::vector<std::pair<UnitId, UnitId>>& edges() const noexcept { return edges_; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::pair<UnitId, UnitId>> edges_;
};

}  // namespace locsom
