#pragma once

#include <span>
#include <string>
#include <utility>

#include "locsom/lattice.hpp"

namespace locsom::svg {

/// Escapes &, <, >, " and ' for XML text and attribute values.
std::string escape(const std::string& text);

/// Units as dots and lattice edges as segments. `weights` is row-major
/// units x 2.
std::string mesh(std::span<const double> weights, const LatticeGraph& graph, const std::string& title);

struct ScatterPoint {
    double x;
    double y;
};

/// One marker per point; x on a log axis when log_x (non-positive x is
/// dropped in that case).
std::string scatter(std::span<const ScatterPoint> points, bool log_x, const std::string& x_label,
                    const std::string& y_label, const std::string& title);

}  // namespace locsom::svg
