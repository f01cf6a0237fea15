#include "locsom/metrics.hpp"

#include <algorithm>

#include "locsom/error.hpp"
#include "locsom/geometry.hpp"

namespace locsom {

std::string to_string(TangleClass c) { return c == TangleClass::Tangled ? "tangled" : "untangled"; }

namespace {

template <typename Getter>
double mean_over_hit(const MapState& state, Getter get) {
    double sum = 0.0;
    std::size_t hit = 0;
    for (UnitId j = 0; j < state.units(); ++j) {
        if (state.bmu_hits(j) == 0) continue;
        sum += get(j);
        ++hit;
    }
    if (hit == 0) throw UndefinedMetric("no unit has been a BMU yet");
    return sum / static_cast<double>(hit);
}

struct Segment {
    Point2 p, q;
    UnitId a, b;
    double xmin, xmax, ymin, ymax;
};

std::vector<Segment> embed_edges(const MapState& state, const LatticeGraph& graph) {
    if (state.dim() != 2) {
        throw UnsupportedDimension("edge crossings are only defined for 2D maps, got dimension " +
                                   std::to_string(state.dim()));
    }
    if (graph.size() != state.units()) throw InvalidInput("lattice and map sizes differ");
    std::vector<Segment> out;
    out.reserve(graph.edges().size());
    for (const auto& [a, b] : graph.edges()) {
        const Point2 p{state.coord(0, a), state.coord(1, a)};
        const Point2 q{state.coord(0, b), state.coord(1, b)};
        out.push_back({p, q, a, b, std::min(p.x, q.x), std::max(p.x, q.x), std::min(p.y, q.y),
                       std::max(p.y, q.y)});
    }
    return out;
}

inline bool share_endpoint(const Segment& s, const Segment& t) noexcept {
    return s.a == t.a || s.a == t.b || s.b == t.a || s.b == t.b;
}

}  // namespace

double map_alfa(const MapState& state) {
    return mean_over_hit(state, [&](UnitId j) { return state.alfa_ema(j); });
}

double map_quantization(const MapState& state) {
    return mean_over_hit(state, [&](UnitId j) { return state.q_ema(j); });
}

std::size_t count_edge_crossings(const MapState& state, const LatticeGraph& graph) {
    const auto segs = embed_edges(state, graph);
    const auto m = static_cast<long long>(segs.size());
    std::size_t total = 0;

#pragma omp parallel for schedule(dynamic, 16) reduction(+ : total)
    for (long long i = 0; i < m; ++i) {
        const Segment& s = segs[static_cast<std::size_t>(i)];
        for (std::size_t k = static_cast<std::size_t>(i) + 1; k < segs.size(); ++k) {
            const Segment& t = segs[k];
            if (t.xmin > s.xmax || t.xmax < s.xmin || t.ymin > s.ymax || t.ymax < s.ymin) continue;
            if (share_endpoint(s, t)) continue;
            if (segments_cross(s.p, s.q, t.p, t.q)) ++total;
        }
    }
    return total;
}

std::size_t count_edge_crossings_reference(const MapState& state, const LatticeGraph& graph) {
    const auto segs = embed_edges(state, graph);
    std::size_t total = 0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        for (std::size_t k = i + 1; k < segs.size(); ++k) {
            if (share_endpoint(segs[i], segs[k])) continue;
            if (segments_cross(segs[i].p, segs[i].q, segs[k].p, segs[k].q)) ++total;
        }
    }
    return total;
}

TangleDiagnostic diagnose_tangles(const MapState& state, const LatticeGraph& graph) {
    TangleDiagnostic d;
    d.edge_crossings = count_edge_crossings(state, graph);
    d.classified = d.edge_crossings > 0 ? TangleClass::Tangled : TangleClass::Untangled;
    return d;
}

TangleClass classify_trial(double final_alfa, double baseline_alfa, double factor) {
    if (!(baseline_alfa > 0.0)) throw InvalidInput("tangle baseline must be positive");
    return final_alfa > factor * baseline_alfa ? TangleClass::Tangled : TangleClass::Untangled;
}

}  // namespace locsom
