#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include "locsom/lattice.hpp"
#include "locsom/map_state.hpp"

namespace locsom {

enum class Variant { Classical, Nnsom, Fnnsom };

/// Time-decaying global neighborhood. Zero radius or horizon means
/// "derive from the lattice / run length" (see resolve_classical).
struct ClassicalParams {
    double initial_rate = 0.5;
    double initial_radius = 0.0;
    double rate_floor = 0.01;
    double radius_floor = 0.5;
    std::size_t horizon = 0;
};

/// Constant rate for the BMU and its immediate lattice neighbors.
struct NnsomParams {
    double l_zeta = 0.5;
};

/// Constant BMU rate, feedback-driven neighbor rate.
struct FnnsomParams {
    double sigma = 0.01;
    double c_q = 0.15;
};

struct RatePolicy {
    std::variant<ClassicalParams, NnsomParams, FnnsomParams> params;
    /// Decay of the per-unit running error averages, shared by all variants
    /// because the map alfa error is tracked for every policy.
    double ema_decay = 0.999;

    static RatePolicy classical(ClassicalParams p = {}) { return {p}; }
    static RatePolicy nnsom(double l_zeta) { return {NnsomParams{l_zeta}}; }
    static RatePolicy fnnsom(double c_q, double sigma = 0.01) { return {FnnsomParams{sigma, c_q}}; }

    Variant variant() const noexcept { return static_cast<Variant>(params.index()); }

    /// Throws InvalidInput when a parameter is out of its domain.
    void validate() const;

    /// Name and value of the parameter a sweep varies for this variant.
    std::string param_name() const;
    double param_value() const;
};

std::string to_string(Variant v);
Variant parse_variant(const std::string& s);

/// l_zeta * exp(-dist) for dist <= 1, exactly 0 beyond.
double nnsom_rate(double l_zeta, std::size_t graph_dist) noexcept;

/// 1 - exp(-c_q * q_bmu / q_j). Empty when q_j is zero (singular).
std::optional<double> quantization_feedback(double c_q, double q_bmu, double q_j) noexcept;

/// Probabilistic OR of the BMU alfa error and the quantization feedback.
/// Throws InvalidInput unless both arguments lie in [0, 1].
double combined_feedback(double alfa_bmu, double f);

/// Running quantization error used for unit j in the feedback term: its
/// own average once hit, else the mean over hit units, else empty.
std::optional<double> effective_quantization(const MapState& state, UnitId j) noexcept;

/// Feedback rate of unit j for a sample whose BMU is `bmu`.
double fnnsom_rate(const FnnsomParams& p, const MapState& state, UnitId j, UnitId bmu,
                   const LatticeGraph& graph);

/// Fills in the derived defaults: radius = diameter / 2, horizon = run length.
ClassicalParams resolve_classical(ClassicalParams p, const LatticeGraph& graph,
                                  std::size_t total_iterations);

double classical_learning_rate(const ClassicalParams& p, std::size_t iter) noexcept;
double classical_radius(const ClassicalParams& p, std::size_t iter) noexcept;

/// learning_rate(iter) * exp(-dist^2 / (2 radius(iter)^2)); expects resolved params.
double classical_rate(const ClassicalParams& p, std::size_t iter, std::size_t graph_dist) noexcept;

}  // namespace locsom
