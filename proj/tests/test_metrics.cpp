#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "locsom/error.hpp"
#include "locsom/geometry.hpp"
#include "locsom/lattice.hpp"
#include "locsom/metrics.hpp"
#include "locsom/random.hpp"

using namespace locsom;

namespace {

// Independent crossing test: parametric intersection in long double plus
// explicit collinear-overlap handling; only used on inputs in general
// position or exactly collinear integer coordinates.
bool crosses_oracle(Point2 p, Point2 q, Point2 u, Point2 v) {
    using L = long double;
    const L rx = q.x - p.x, ry = q.y - p.y, sx = v.x - u.x, sy = v.y - u.y;
    const L den = rx * sy - ry * sx;
    const L qpx = u.x - p.x, qpy = u.y - p.y;
    if (den == 0) {
        if (qpx * ry - qpy * rx != 0) return false;
        const L rr = rx * rx + ry * ry;
        const L t0 = (qpx * rx + qpy * ry) / rr;
        const L t1 = t0 + (sx * rx + sy * ry) / rr;
        return std::max(std::min(t0, t1), L(0)) <= std::min(std::max(t0, t1), L(1));
    }
    const L t = (qpx * sy - qpy * sx) / den;
    const L s = (qpx * ry - qpy * rx) / den;
    return t > 0 && t < 1 && s > 0 && s < 1;
}

MapState grid_state(std::size_t side, double sx, double sy) {
    const LatticeGraph g = LatticeGraph::square(side);
    MapState st(g.size(), 2);
    for (UnitId j = 0; j < g.size(); ++j) {
        st.set_coord(0, j, sx * static_cast<double>(g.col_of(j)) + 0.01 * static_cast<double>(g.row_of(j)));
        st.set_coord(1, j, sy * static_cast<double>(g.row_of(j)));
    }
    return st;
}

}  // namespace

TEST_CASE("map_alfa and map_quantization") {
    MapState st(4, 2);
    CHECK_THROWS_AS(map_alfa(st), UndefinedMetric);
    CHECK_THROWS_AS(map_quantization(st), UndefinedMetric);
    st.set_errors(1, 5.0, 0.7, 1);
    CHECK(map_alfa(st) == doctest::Approx(0.7));
    CHECK(map_quantization(st) == 5.0);
    st.set_errors(0, 1.0, 0.2, 3);
    st.set_errors(1, 3.0, 0.4, 3);
    CHECK(map_alfa(st) == doctest::Approx(0.3));
    CHECK(map_quantization(st) == doctest::Approx(2.0));
    MapState zeros(3, 2);
    for (UnitId j = 0; j < 3; ++j) zeros.set_errors(j, 0.0, 0.0, 1);
    CHECK(map_alfa(zeros) == 0.0);
    CHECK(map_quantization(zeros) == 0.0);
}

TEST_CASE("map_alfa is permutation invariant and bounded") {
    Rng rng(3);
    MapState a(25, 2), b(25, 2);
    std::vector<UnitId> perm(25);
    for (UnitId j = 0; j < 25; ++j) perm[j] = j;
    for (UnitId j = 24; j > 0; --j) std::swap(perm[j], perm[rng.below(j + 1)]);
    for (UnitId j = 0; j < 25; ++j) {
        const double alfa = rng.uniform();
        const auto hits = rng.below(3);
        a.set_errors(j, 1.0, alfa, hits);
        b.set_errors(perm[j], 1.0, alfa, hits);
    }
    CHECK(map_alfa(a) == doctest::Approx(map_alfa(b)).epsilon(1e-15));
    CHECK(map_alfa(a) >= 0.0);
    CHECK(map_alfa(a) <= 1.0);
}

TEST_CASE("orientation and segment crossing") {
    CHECK(orientation({0, 0}, {1, 0}, {0, 1}) == 1);
    CHECK(orientation({0, 0}, {0, 1}, {1, 0}) == -1);
    CHECK(orientation({0, 0}, {1, 1}, {2, 2}) == 0);
    // Nearly degenerate: the float filter cannot decide, exact arithmetic can.
    CHECK(orientation({0.5, 0.5}, {12, 12}, {24, 24}) == 0);
    CHECK(orientation({0.1, 0.1}, {0.3, 0.3}, {0.7, 0.7 + 1e-17}) == orientation({0.1, 0.1}, {0.3, 0.3}, {0.7, 0.7}));

    CHECK(segments_cross({0, 0}, {1, 1}, {0, 1}, {1, 0}));
    CHECK_FALSE(segments_cross({0, 0}, {1, 0}, {0, 1}, {1, 1}));
    CHECK_FALSE(segments_cross({0, 0}, {1, 0}, {1, 0}, {2, 5}));  // endpoint touch
    CHECK(segments_cross({0, 0}, {2, 0}, {1, 0}, {3, 0}));        // collinear overlap
    CHECK(segments_cross({0, 0}, {1, 0}, {1, 0}, {2, 0}));        // collinear touch
    CHECK_FALSE(segments_cross({0, 0}, {1, 0}, {2, 0}, {3, 0}));

    Rng rng(9);
    for (int i = 0; i < 20000; ++i) {
        auto pt = [&] { return Point2{static_cast<double>(rng.below(6)), static_cast<double>(rng.below(6))}; };
        const Point2 p = pt(), q = pt(), u = pt(), v = pt();
        if ((p.x == q.x && p.y == q.y) || (u.x == v.x && u.y == v.y)) continue;
        const bool shares = (p.x == u.x && p.y == u.y) || (p.x == v.x && p.y == v.y) ||
                            (q.x == u.x && q.y == u.y) || (q.x == v.x && q.y == v.y);
        const bool collinear = orientation(p, q, u) == 0 && orientation(p, q, v) == 0;
        // Oracle excludes endpoint touches of non-collinear segments by construction.
        const bool touch = !collinear && (orientation(p, q, u) == 0 || orientation(p, q, v) == 0 ||
                                          orientation(u, v, p) == 0 || orientation(u, v, q) == 0);
        if (shares && !collinear) {
            CHECK_FALSE(segments_cross(p, q, u, v));
            continue;
        }
        if (touch) {
            CHECK_FALSE(segments_cross(p, q, u, v));
            continue;
        }
        CHECK(segments_cross(p, q, u, v) == crosses_oracle(p, q, u, v));
    }
}

TEST_CASE("count_edge_crossings examples") {
    const LatticeGraph g = LatticeGraph::square(2);
    MapState st(4, 2);
    st.set_weight(0, std::vector<double>{0, 0});
    st.set_weight(1, std::vector<double>{1, 0});
    st.set_weight(2, std::vector<double>{0, 1});
    st.set_weight(3, std::vector<double>{1, 1});
    CHECK(count_edge_crossings(st, g) == 0);
    // Swapping the diagonal pair is a half-turn of the square: still planar.
    st.set_weight(0, std::vector<double>{1, 1});
    st.set_weight(3, std::vector<double>{0, 0});
    CHECK(count_edge_crossings(st, g) == 0);
    // Swapping an adjacent pair twists the mesh.
    st.set_weight(0, std::vector<double>{1, 0});
    st.set_weight(1, std::vector<double>{0, 0});
    st.set_weight(2, std::vector<double>{0, 1});
    st.set_weight(3, std::vector<double>{1, 1});
    CHECK(count_edge_crossings(st, g) == 1);
    CHECK(count_edge_crossings(st, g) == count_edge_crossings_reference(st, g));
    CHECK(diagnose_tangles(st, g).classified == TangleClass::Tangled);

    MapState three(4, 3);
    CHECK_THROWS_AS(count_edge_crossings(three, g), UnsupportedDimension);
    CHECK_THROWS_AS(diagnose_tangles(three, g), UnsupportedDimension);
}

TEST_CASE("monotone grids never cross") {
    for (std::size_t side : {2, 3, 5, 10, 20, 31}) {
        const MapState st = grid_state(side, 1.0 + 0.1 * static_cast<double>(side), 0.5);
        CHECK(count_edge_crossings(st, LatticeGraph::square(side)) == 0);
    }
}

TEST_CASE("crossings: parallel matches reference and rigid motions") {
    Rng rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t side = 2 + rng.below(9);
        const LatticeGraph g = LatticeGraph::square(side);
        MapState st = grid_state(side, 1.0, 1.0);
        for (UnitId j = 0; j < g.size(); ++j) {
            if (rng.below(3) == 0) {
                st.set_coord(0, j, rng.uniform(0.0, static_cast<double>(side)));
                st.set_coord(1, j, rng.uniform(0.0, static_cast<double>(side)));
            }
        }
        const std::size_t base = count_edge_crossings_reference(st, g);
        CHECK(count_edge_crossings(st, g) == base);
        CHECK(diagnose_tangles(st, g).edge_crossings == base);
        CHECK((diagnose_tangles(st, g).classified == TangleClass::Tangled) == (base > 0));

        const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double tx = rng.uniform(-50.0, 50.0), ty = rng.uniform(-50.0, 50.0);
        MapState moved = st;
        for (UnitId j = 0; j < g.size(); ++j) {
            const double x = st.coord(0, j), y = st.coord(1, j);
            moved.set_coord(0, j, std::cos(theta) * x - std::sin(theta) * y + tx);
            moved.set_coord(1, j, std::sin(theta) * x + std::cos(theta) * y + ty);
        }
        CHECK(count_edge_crossings(moved, g) == base);
    }
}

TEST_CASE("classify_trial") {
    CHECK(classify_trial(0.05, 0.04) == TangleClass::Untangled);
    CHECK(classify_trial(0.8, 0.04) == TangleClass::Tangled);
    CHECK(classify_trial(0.08, 0.04) == TangleClass::Untangled);
    CHECK(classify_trial(0.13, 0.04, 3.0) == TangleClass::Tangled);
    CHECK_THROWS_AS(classify_trial(0.1, 0.0), InvalidInput);
    CHECK_THROWS_AS(classify_trial(0.1, -1.0), InvalidInput);
}
