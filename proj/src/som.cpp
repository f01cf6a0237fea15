#include "locsom/som.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "locsom/error.hpp"
#include "locsom/random.hpp"

namespace locsom {

std::string to_string(InitMode m) { return m == InitMode::Symmetric ? "sic" : "ric"; }

InitMode parse_init_mode(const std::string& s) {
    if (s == "sic") return InitMode::Symmetric;
    if (s == "ric") return InitMode::Random;
    throw InvalidInput("unknown init mode '" + s + "' (expected sic or ric)");
}

MapState init_weights(InitMode mode, std::size_t units, const Box& domain, std::uint64_t seed) {
    const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(units))));
    if (units < 4 || side * side != units) {
        throw InvalidInput("unit count must be a perfect square >= 4, got " + std::to_string(units));
    }
    if (domain.dim() == 0 || domain.hi.size() != domain.dim()) throw InvalidInput("malformed domain box");

    MapState state(units, domain.dim());
    if (mode == InitMode::Random) {
        Rng rng(seed);
        for (UnitId j = 0; j < units; ++j) {
            for (std::size_t a = 0; a < domain.dim(); ++a) {
                state.set_coord(a, j, rng.uniform(domain.lo[a], domain.hi[a]));
            }
        }
    }
    return state;
}

namespace {

inline void move_towards(MapState& state, UnitId j, std::span<const double> s, double rate) {
    for (std::size_t a = 0; a < state.dim(); ++a) {
        const double w = state.coord(a, j);
        const double moved = w + rate * (s[a] - w);
        // Keep the step on the segment [w, s] under rounding.
        state.set_coord(a, j, std::clamp(moved, std::min(w, s[a]), std::max(w, s[a])));
    }
}

}  // namespace

SampleRecord apply_sample(MapState& state, const RatePolicy& policy, const LatticeGraph& graph,
                          std::span<const double> sample, std::size_t iteration) {
    if (graph.size() != state.units()) throw InvalidInput("lattice and map sizes differ");
    if (sample.size() != state.dim()) throw InvalidInput("sample dimension does not match the map");
    for (double v : sample) {
        if (!std::isfinite(v)) throw InvalidInput("sample component is not finite");
    }

    const BmuPair bmu = find_bmu(state, sample);
    double d2 = 0.0;
    for (std::size_t a = 0; a < state.dim(); ++a) {
        const double diff = sample[a] - state.coord(a, bmu.best);
        d2 += diff * diff;
    }
    const SampleRecord rec{bmu.best, bmu.second, std::sqrt(d2),
                           graph.adjacent(bmu.best, bmu.second) ? 0.0 : 1.0};

    if (const auto* classical = std::get_if<ClassicalParams>(&policy.params)) {
        // Classical rates do not read the running errors.
        state.record_hit(rec.bmu, rec.quantization, rec.alfa_indicator, policy.ema_decay);
        std::vector<double> by_distance(graph.diameter() + 1);
        for (std::size_t d = 0; d < by_distance.size(); ++d) {
            by_distance[d] = classical_rate(*classical, iteration, d);
        }
        for (UnitId j = 0; j < state.units(); ++j) {
            const double r = by_distance[graph.distance(j, rec.bmu)];
            if (r > 0.0) move_towards(state, j, sample, r);
        }
        return rec;
    }

    std::array<UnitId, 5> ids{};
    std::array<double, 5> rates{};
    std::size_t count = 0;
    const auto neighbors = graph.neighbors(rec.bmu);

    if (const auto* nn = std::get_if<NnsomParams>(&policy.params)) {
        ids[count] = rec.bmu;
        rates[count++] = nnsom_rate(nn->l_zeta, 0);
        for (UnitId k : neighbors) {
            ids[count] = k;
            rates[count++] = nnsom_rate(nn->l_zeta, 1);
        }
    } else {
        const auto& fb = std::get<FnnsomParams>(policy.params);
        ids[count] = rec.bmu;
        rates[count++] = fnnsom_rate(fb, state, rec.bmu, rec.bmu, graph);
        for (UnitId k : neighbors) {
            ids[count] = k;
            rates[count++] = fnnsom_rate(fb, state, k, rec.bmu, graph);
        }
    }

    state.record_hit(rec.bmu, rec.quantization, rec.alfa_indicator, policy.ema_decay);
    for (std::size_t i = 0; i < count; ++i) {
        if (rates[i] > 0.0) move_towards(state, ids[i], sample, rates[i]);
    }
    return rec;
}

}  // namespace locsom
