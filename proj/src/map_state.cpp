#include "locsom/map_state.hpp"

#include <cmath>

#include "locsom/error.hpp"

namespace locsom {

MapState::MapState(std::size_t units, std::size_t dim)
    : units_(units),
      dim_(dim),
      coords_(units * dim, 0.0),
      q_ema_(units, 0.0),
      alfa_ema_(units, 0.0),
      hits_(units, 0) {
    if (units == 0 || dim == 0) {
        throw InvalidInput("map needs at least one unit and one dimension");
    }
}

std::vector<double> MapState::weight(UnitId j) const {
    std::vector<double> w(dim_);
    for (std::size_t a = 0; a < dim_; ++a) w[a] = coord(a, j);
    return w;
}

void MapState::set_weight(UnitId j, std::span<const double> w) {
    if (w.size() != dim_) {
        throw InvalidInput("weight dimension mismatch");
    }
    for (std::size_t a = 0; a < dim_; ++a) {
        if (!std::isfinite(w[a])) throw InvalidInput("weight component is not finite");
        set_coord(a, j, w[a]);
    }
}

std::vector<double> MapState::weights_row_major() const {
    std::vector<double> out(units_ * dim_);
    for (std::size_t j = 0; j < units_; ++j) {
        for (std::size_t a = 0; a < dim_; ++a) out[j * dim_ + a] = coords_[a * units_ + j];
    }
    return out;
}

void MapState::record_hit(UnitId j, double quantization, double alfa_indicator, double decay) {
    if (hits_[j] == 0) {
        q_ema_[j] = quantization;
        alfa_ema_[j] = alfa_indicator;
        ++hit_units_;
        q_sum_ += quantization;
    } else {
        const double old = q_ema_[j];
        q_ema_[j] = decay * old + (1.0 - decay) * quantization;
        alfa_ema_[j] = decay * alfa_ema_[j] + (1.0 - decay) * alfa_indicator;
        q_sum_ += q_ema_[j] - old;
    }
    ++hits_[j];
}

void MapState::set_errors(UnitId j, double q, double alfa, std::uint64_t hits) {
    if (q < 0.0 || alfa < 0.0 || alfa > 1.0) {
        throw InvalidInput("running errors out of range");
    }
    if (hits_[j] > 0) {
        --hit_units_;
        q_sum_ -= q_ema_[j];
    }
    q_ema_[j] = q;
    alfa_ema_[j] = alfa;
    hits_[j] = hits;
    if (hits > 0) {
        ++hit_units_;
        q_sum_ += q;
    }
}

}  // namespace locsom
