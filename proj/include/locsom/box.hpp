#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace locsom {

/// Axis-aligned box, lo[a] <= hi[a] on every axis.
struct Box {
    std::vector<double> lo;
    std::vector<double> hi;

    std::size_t dim() const noexcept { return lo.size(); }

    bool contains(std::span<const double> p) const noexcept {
        if (p.size() != lo.size()) return false;
        for (std::size_t a = 0; a < lo.size(); ++a) {
            if (p[a] < lo[a] || p[a] > hi[a]) return false;
        }
        return true;
    }
};

}  // namespace locsom
