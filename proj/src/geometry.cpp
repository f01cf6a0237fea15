#include "locsom/geometry.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <utility>

namespace locsom {
namespace {

int orientation_exact(Point2 a, Point2 b, Point2 c) {
    using boost::multiprecision::cpp_rational;
    const cpp_rational det = (cpp_rational(b.x) - a.x) * (cpp_rational(c.y) - a.y) -
                             (cpp_rational(b.y) - a.y) * (cpp_rational(c.x) - a.x);
    return det.sign();
}

bool lex_less(Point2 a, Point2 b) noexcept { return a.x < b.x || (a.x == b.x && a.y < b.y); }

}  // namespace

int orientation(Point2 a, Point2 b, Point2 c) {
    const double left = (b.x - a.x) * (c.y - a.y);
    const double right = (b.y - a.y) * (c.x - a.x);
    const double det = left - right;
    constexpr double eps = std::numeric_limits<double>::epsilon() / 2.0;
    const double bound = (3.0 + 16.0 * eps) * eps * (std::abs(left) + std::abs(right));
    if (det > bound) return 1;
    if (-det > bound) return -1;
    return orientation_exact(a, b, c);
}

bool segments_cross(Point2 p, Point2 q, Point2 u, Point2 v) {
    const int o1 = orientation(p, q, u);
    const int o2 = orientation(p, q, v);
    const int o3 = orientation(u, v, p);
    const int o4 = orientation(u, v, q);

    if (o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0) {
        if (lex_less(q, p)) std::swap(p, q);
        if (lex_less(v, u)) std::swap(u, v);
        const Point2 lo = lex_less(p, u) ? u : p;
        const Point2 hi = lex_less(q, v) ? q : v;
        return !lex_less(hi, lo);
    }
    return o1 * o2 < 0 && o3 * o4 < 0;
}

}  // namespace locsom
