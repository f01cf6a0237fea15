#include "locsom/rates.hpp"

#include <algorithm>
#include <cmath>

#include "locsom/error.hpp"

namespace locsom {

void RatePolicy::validate() const {
    if (!(ema_decay > 0.0 && ema_decay < 1.0)) throw InvalidInput("ema_decay must lie in (0, 1)");
    std::visit(
        [](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, NnsomParams>) {
                if (!(p.l_zeta > 0.0 && p.l_zeta <= 1.0)) throw InvalidInput("l_zeta must lie in (0, 1]");
            } else if constexpr (std::is_same_v<T, FnnsomParams>) {
                if (!(p.sigma > 0.0 && p.sigma <= 1.0)) throw InvalidInput("sigma must lie in (0, 1]");
                if (!(p.c_q > 0.0 && std::isfinite(p.c_q))) throw InvalidInput("c_q must be positive");
            } else {
                if (!(p.initial_rate > 0.0 && p.initial_rate <= 1.0))
                    throw InvalidInput("initial rate must lie in (0, 1]");
                if (!(p.rate_floor > 0.0 && p.rate_floor <= p.initial_rate))
                    throw InvalidInput("rate floor must lie in (0, initial rate]");
                if (p.initial_radius < 0.0 || !(p.radius_floor > 0.0))
                    throw InvalidInput("radius settings must be positive");
            }
        },
        params);
}

std::string RatePolicy::param_name() const {
    switch (variant()) {
        case Variant::Classical: return "initial_rate";
        case Variant::Nnsom: return "l_zeta";
        case Variant::Fnnsom: return "c_q";
    }
    return {};
}

double RatePolicy::param_value() const {
    switch (variant()) {
        case Variant::Classical: return std::get<ClassicalParams>(params).initial_rate;
        case Variant::Nnsom: return std::get<NnsomParams>(params).l_zeta;
        case Variant::Fnnsom: return std::get<FnnsomParams>(params).c_q;
    }
    return 0.0;
}

std::string to_string(Variant v) {
    switch (v) {
        case Variant::Classical: return "classical";
        case Variant::Nnsom: return "nnsom";
        case Variant::Fnnsom: return "fnnsom";
    }
    return "unknown";
}

Variant parse_variant(const std::string& s) {
    if (s == "classical") return Variant::Classical;
    if (s == "nnsom") return Variant::Nnsom;
    if (s == "fnnsom") return Variant::Fnnsom;
    throw InvalidInput("unknown variant '" + s + "'");
}

double nnsom_rate(double l_zeta, std::size_t graph_dist) noexcept {
    if (graph_dist == 0) return l_zeta;
    if (graph_dist == 1) return l_zeta * std::exp(-1.0);
    return 0.0;
}

std::optional<double> quantization_feedback(double c_q, double q_bmu, double q_j) noexcept {
    if (!(q_j > 0.0)) return std::nullopt;
    // expm1 keeps full relative precision when the exponent is tiny.
    return -std::expm1(-c_q * q_bmu / q_j);
}

double combined_feedback(double alfa_bmu, double f) {
    if (!(alfa_bmu >= 0.0 && alfa_bmu <= 1.0) || !(f >= 0.0 && f <= 1.0)) {
        throw InvalidInput("feedback terms must lie in [0, 1]");
    }
    // a + f - a f, written with non-negative terms only.
    return std::min(1.0, alfa_bmu + f * (1.0 - alfa_bmu));
}

std::optional<double> effective_quantization(const MapState& state, UnitId j) noexcept {
    if (state.bmu_hits(j) > 0) return state.q_ema(j);
    if (state.hit_units() > 0) return state.mean_hit_quantization();
    return std::nullopt;
}

double fnnsom_rate(const FnnsomParams& p, const MapState& state, UnitId j, UnitId bmu,
                   const LatticeGraph& graph) {
    if (j == bmu) return p.sigma;
    if (graph.distance(j, bmu) != 1) return 0.0;

    double f = 0.0;
    const auto q_bmu = effective_quantization(state, bmu);
    const auto q_j = effective_quantization(state, j);
    if (q_bmu && q_j) {
        // A unit with zero running error takes the q_j -> 0+ limit.
        f = quantization_feedback(p.c_q, *q_bmu, *q_j).value_or(*q_bmu > 0.0 ? 1.0 : 0.0);
    }
    return combined_feedback(state.alfa_ema(bmu), f);
}

ClassicalParams resolve_classical(ClassicalParams p, const LatticeGraph& graph,
                                  std::size_t total_iterations) {
    if (p.initial_radius <= 0.0) {
        p.initial_radius = std::max(p.radius_floor, static_cast<double>(graph.diameter()) / 2.0);
    }
    if (p.horizon == 0) p.horizon = std::max<std::size_t>(1, total_iterations);
    return p;
}

namespace {

double decay(double start, double floor, std::size_t iter, std::size_t horizon) noexcept {
    if (start <= floor) return floor;
    const double t = static_cast<double>(std::min(iter, horizon)) / static_cast<double>(horizon);
    return start * std::pow(floor / start, t);
}

}  // namespace

double classical_learning_rate(const ClassicalParams& p, std::size_t iter) noexcept {
    return decay(p.initial_rate, p.rate_floor, iter, std::max<std::size_t>(1, p.horizon));
}

double classical_radius(const ClassicalParams& p, std::size_t iter) noexcept {
    return decay(p.initial_radius, p.radius_floor, iter, std::max<std::size_t>(1, p.horizon));
}

double classical_rate(const ClassicalParams& p, std::size_t iter, std::size_t graph_dist) noexcept {
    const double radius = classical_radius(p, iter);
    const double d = static_cast<double>(graph_dist);
    return classical_learning_rate(p, iter) * std::exp(-d * d / (2.0 * radius * radius));
}

}  // namespace locsom
