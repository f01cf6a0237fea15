#include "locsom/bmu.hpp"

#include <experimental/simd>
#include <limits>

#include "locsom/error.hpp"

namespace locsom {
namespace {

namespace stdx = std::experimental;
using Vec = stdx::native_simd<double>;

constexpr UnitId kNone = std::numeric_limits<UnitId>::max();
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_query(const MapState& state, std::span<const double> sample) {
    if (state.units() < 2) throw InvalidInput("BMU search needs at least two units");
    if (sample.size() != state.dim()) throw InvalidInput("sample dimension does not match the map");
}

// Serial best/runner-up tracking over units offered in increasing index
// order; strict comparisons keep the lower index on ties.
struct Tracker {
    double best_d = kInf;
    double second_d = kInf;
    UnitId best = kNone;
    UnitId second = kNone;

    void offer(double d, UnitId j) noexcept {
        if (d < best_d) {
            second_d = best_d;
            second = best;
            best_d = d;
            best = j;
        } else if (d < second_d) {
            second_d = d;
            second = j;
        }
    }

    // Only reachable with missing entries when every distance overflowed.
    BmuPair finish() const noexcept {
        const UnitId b = best == kNone ? 0 : best;
        const UnitId s = second == kNone ? (b == 0 ? 1 : 0) : second;
        return {b, s};
    }
};

// Per-lane best and runner-up. Indices ride along as doubles, exact for
// any realistic unit count, so value and index share one mask type.
struct LaneTop2 {
    Vec best{kInf}, second{kInf}, best_idx{-1.0}, second_idx{-1.0};

    void offer(Vec d, Vec idx) noexcept {
        const auto beats_best = d < best;
        const auto beats_second = d < second;
        where(beats_second, second) = d;
        where(beats_second, second_idx) = idx;
        where(beats_best, second) = best;
        where(beats_best, second_idx) = best_idx;
        where(beats_best, best) = d;
        where(beats_best, best_idx) = idx;
    }
};

template <std::size_t Dim>
inline Vec lane_distances(const MapState& state, std::size_t base, std::span<const double> sample) {
    Vec d(0.0);
    const std::size_t dim = Dim == 0 ? state.dim() : Dim;
    for (std::size_t a = 0; a < dim; ++a) {
        Vec c(state.axis(a).data() + base, stdx::element_aligned);
        c -= sample[a];
        d += c * c;
    }
    return d;
}

// Vectorized scan, two independent lane sets to break the dependency
// chain of the compare/select updates, then a branch-free merge and a
// scalar pass over the remainder.
template <std::size_t Dim>
BmuPair scan(const MapState& state, std::span<const double> sample) {
    constexpr std::size_t W = Vec::size();
    const std::size_t n = state.units();
    const std::size_t full = n / (2 * W) * (2 * W);

    LaneTop2 lo, hi;
    Vec idx_lo([](auto l) { return static_cast<double>(l); });
    Vec idx_hi = idx_lo + static_cast<double>(W);
    for (std::size_t base = 0; base < full; base += 2 * W) {
        lo.offer(lane_distances<Dim>(state, base, sample), idx_lo);
        hi.offer(lane_distances<Dim>(state, base + W, sample), idx_hi);
        idx_lo += static_cast<double>(2 * W);
        idx_hi += static_cast<double>(2 * W);
    }

    Tracker t;
    if (full > 0) {
        const Vec inf(kInf);
        const double best_d = stdx::hmin(stdx::min(lo.best, hi.best));
        Vec pick_lo = inf, pick_hi = inf;
        where(lo.best == best_d, pick_lo) = lo.best_idx;
        where(hi.best == best_d, pick_hi) = hi.best_idx;
        const double best = stdx::hmin(stdx::min(pick_lo, pick_hi));

        Vec rest_lo = lo.best, rest_hi = hi.best;
        where(lo.best_idx == best, rest_lo) = inf;
        where(hi.best_idx == best, rest_hi) = inf;
        const double second_d =
            stdx::hmin(stdx::min(stdx::min(rest_lo, rest_hi), stdx::min(lo.second, hi.second)));
        Vec c = inf, e = inf, f = inf;
        where(rest_lo == second_d, c) = lo.best_idx;
        where(rest_hi == second_d, c) = stdx::min(c, hi.best_idx);
        where(lo.second == second_d, e) = lo.second_idx;
        where(hi.second == second_d, f) = hi.second_idx;
        const double second = stdx::hmin(stdx::min(c, stdx::min(e, f)));

        if (!(second_d < kInf)) return find_bmu_reference(state, sample);
        t.best_d = best_d;
        t.best = static_cast<UnitId>(best);
        t.second_d = second_d;
        t.second = static_cast<UnitId>(second);
    }

    const std::size_t dim = Dim == 0 ? state.dim() : Dim;
    for (std::size_t j = full; j < n; ++j) {
        double d = 0.0;
        for (std::size_t a = 0; a < dim; ++a) {
            const double diff = state.coord(a, static_cast<UnitId>(j)) - sample[a];
            d += diff * diff;
        }
        t.offer(d, static_cast<UnitId>(j));
    }
    return t.finish();
}

}  // namespace

BmuPair find_bmu(const MapState& state, std::span<const double> sample) {
    check_query(state, sample);
    switch (state.dim()) {
        case 2: return scan<2>(state, sample);
        case 3: return scan<3>(state, sample);
        default: return scan<0>(state, sample);
    }
}

BmuPair find_bmu_reference(const MapState& state, std::span<const double> sample) {
    check_query(state, sample);
    Tracker t;
    for (UnitId j = 0; j < state.units(); ++j) {
        double d = 0.0;
        for (std::size_t a = 0; a < state.dim(); ++a) {
            const double diff = state.coord(a, j) - sample[a];
            d += diff * diff;
        }
        t.offer(d, j);
    }
    return t.finish();
}

}  // namespace locsom
