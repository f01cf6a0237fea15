#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "locsom/bmu.hpp"
#include "locsom/box.hpp"
#include "locsom/lattice.hpp"
#include "locsom/map_state.hpp"
#include "locsom/rates.hpp"

namespace locsom {

enum class InitMode {
    Symmetric,  ///< every weight at the coordinate origin (SIC)
    Random,     ///< i.i.d. uniform over the dataset bounding box (RIC)
};

std::string to_string(InitMode m);
InitMode parse_init_mode(const std::string& s);

/// Fresh map of `units` units over `domain`. `units` must be a perfect
/// square >= 4; SIC ignores the seed.
MapState init_weights(InitMode mode, std::size_t units, const Box& domain, std::uint64_t seed);

/// What one training step observed.
struct SampleRecord {
    UnitId bmu;
    UnitId second;
    double quantization;     ///< ||s - w_bmu|| before the update
    double alfa_indicator;   ///< 1 when the runner-up is not a lattice neighbor of the BMU
};

/// One competitive-learning step.
///
/// All rates are evaluated from the state as it was when the sample
/// arrived; then the BMU's running errors absorb the observation and every
/// unit with a nonzero rate moves by w += r (s - w). `iteration` only
/// matters to the classical schedule, whose params must be resolved.
SampleRecord apply_sample(MapState& state, const RatePolicy& policy, const LatticeGraph& graph,
                          std::span<const double> sample, std::size_t iteration = 0);

}  // namespace locsom
