#pragma once

namespace locsom {

struct Point2 {
    double x;
    double y;
};

/// Sign of the signed area of (a, b, c): +1 counter-clockwise, -1
/// clockwise, 0 collinear. Exact: a floating-point filter decides most
/// cases and rational arithmetic settles the rest.
int orientation(Point2 a, Point2 b, Point2 c);

/// True when segments pq and uv cross at a single interior point, or are
/// collinear and share at least one point. Endpoint touches between
/// non-collinear segments do not count.
bool segments_cross(Point2 p, Point2 q, Point2 u, Point2 v);

}  // namespace locsom
