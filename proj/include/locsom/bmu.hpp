#pragma once

#include <span>

#include "locsom/map_state.hpp"

namespace locsom {

struct BmuPair {
    UnitId best;
    UnitId second;
};

/// Best and second-best matching units by squared Euclidean distance,
/// ties going to the lower unit index. Explicit-SIMD scan.
BmuPair find_bmu(const MapState& state, std::span<const double> sample);

/// Plain serial scan with the same contract; kept as the test oracle and
/// benchmark baseline for find_bmu.
BmuPair find_bmu_reference(const MapState& state, std::span<const double> sample);

}  // namespace locsom
