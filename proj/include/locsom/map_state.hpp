#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "locsom/lattice.hpp"

namespace locsom {

/// Weights plus per-unit running error estimates of one map.
///
/// Weights are stored axis-major (all x, then all y, ...) so the BMU scan
/// streams contiguous memory per axis. The running quantization error of
/// each unit is only meaningful once the unit has been BMU at least once;
/// `mean_hit_quantization()` serves as the stand-in for units that have not.
class MapState {
public:
    MapState(std::size_t units, std::size_t dim);

    std::size_t units() const noexcept { return units_; }
    std::size_t dim() const noexcept { return dim_; }

    std::span<const double> axis(std::size_t a) const noexcept {
        return {coords_.data() + a * units_, units_};
    }
    double coord(std::size_t a, UnitId j) const noexcept { return coords_[a * units_ + j]; }
    void set_coord(std::size_t a, UnitId j, double v) noexcept { coords_[a * units_ + j] = v; }

    std::vector<double> weight(UnitId j) const;
    void set_weight(UnitId j, std::span<const double> w);

    /// Row-major copy, units x dim.
    std::vector<double> weights_row_major() const;

    double q_ema(UnitId j) const noexcept { return q_ema_[j]; }
    double alfa_ema(UnitId j) const noexcept { return alfa_ema_[j]; }
    std::uint64_t bmu_hits(UnitId j) const noexcept { return hits_[j]; }

    std::size_t hit_units() const noexcept { return hit_units_; }

    /// Mean of q_ema over units with at least one hit; 0 when there are none.
    double mean_hit_quantization() const noexcept {
        if (hit_units_ == 0 || q_sum_ <= 0.0) return 0.0;
        return q_sum_ / static_cast<double>(hit_units_);
    }

    /// Folds one BMU observation into the unit's running errors. The first
    /// observation of a unit seeds both averages directly.
    void record_hit(UnitId j, double quantization, double alfa_indicator, double decay);

    /// Overwrites the running errors of a unit, for tests and restores.
    void set_errors(UnitId j, double q, double alfa, std::uint64_t hits);

private:
    std::size_t units_;
    std::size_t dim_;
    std::vector<double> coords_;
    std::vector<double> q_ema_;
    std::vector<double> alfa_ema_;
    std::vector<std::uint64_t> hits_;
    std::size_t hit_units_ = 0;
    double q_sum_ = 0.0;
};

}  // namespace locsom
