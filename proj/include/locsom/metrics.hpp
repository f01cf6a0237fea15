#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "locsom/lattice.hpp"
#include "locsom/map_state.hpp"

namespace locsom {

struct TracePoint {
    std::size_t iteration;
    double value;
};

/// Map alfa error A_t sampled over training, iterations strictly increasing.
using MapAlfaTrace = std::vector<TracePoint>;

enum class TangleClass { Untangled, Tangled };

std::string to_string(TangleClass c);

struct TangleDiagnostic {
    std::size_t edge_crossings = 0;
    TangleClass classified = TangleClass::Untangled;
};

/// Mean running alfa error over units that have been BMU at least once.
/// Throws UndefinedMetric when no unit has been hit.
double map_alfa(const MapState& state);

/// Mean running quantization error over hit units; same error contract.
double map_quantization(const MapState& state);

/// Number of pairs of lattice edges whose straight-line embeddings in
/// sample space cross (see segments_cross). Edges sharing a lattice
/// endpoint are never paired. OpenMP-parallel over edges.
/// Throws UnsupportedDimension unless the map lives in 2D.
std::size_t count_edge_crossings(const MapState& state, const LatticeGraph& graph);

/// Serial all-pairs version of count_edge_crossings, kept as its oracle.
std::size_t count_edge_crossings_reference(const MapState& state, const LatticeGraph& graph);

TangleDiagnostic diagnose_tangles(const MapState& state, const LatticeGraph& graph);

/// Tangled iff final_alfa > factor * baseline_alfa. Throws InvalidInput
/// for a non-positive baseline.
TangleClass classify_trial(double final_alfa, double baseline_alfa, double factor = 2.0);

}  // namespace locsom
