#include "locsom/lattice.hpp"

#include "locsom/error.hpp"

namespace locsom {

LatticeGraph::LatticeGraph(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    if (rows == 0 || cols == 0) {
        throw InvalidInput("lattice dimensions must be positive");
    }
    edges_.reserve(rows * (cols - 1) + cols * (rows - 1));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges_.emplace_back(unit(r, c), unit(r, c + 1));
            if (r + 1 < rows) edges_.emplace_back(unit(r, c), unit(r + 1, c));
        }
    }
}

std::size_t LatticeGraph::distance(UnitId j, UnitId k) const noexcept {
    const auto rj = row_of(j), rk = row_of(k);
    const auto cj = col_of(j), ck = col_of(k);
    return (rj > rk ? rj - rk : rk - rj) + (cj > ck ? cj - ck : ck - cj);
}

LatticeGraph::Neighbors LatticeGraph::neighbors(UnitId j) const noexcept {
    Neighbors out;
    const auto r = row_of(j), c = col_of(j);
    if (r > 0) out.ids[out.count++] = unit(r - 1, c);
    if (c > 0) out.ids[out.count++] = unit(r, c - 1);
    if (c + 1 < cols_) out.ids[out.count++] = unit(r, c + 1);
    if (r + 1 < rows_) out.ids[out.count++] = unit(r + 1, c);
    return out;
}

}  // namespace locsom
