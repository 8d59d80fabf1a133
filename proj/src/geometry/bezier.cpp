#include "creasegen/errors.hpp"
#include "creasegen/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace creasegen::geometry {

Point2 bezier_point(const CreaseSpec& crease, double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw DomainError("bezier_point: t = " + std::to_string(t) + " outside [0, 1]");
    }
    const double u = 1.0 - t;
    const double a = u * u;
    const double b = 2.0 * t * u;
    const double c = t * t;
    return {a * crease.start.x + b * crease.control.x + c * crease.end.x,
            a * crease.start.y + b * crease.control.y + c * crease.end.y};
}

std::vector<Point2> bezier_flatten(const CreaseSpec& crease, double tolerance) {
    if (!(tolerance > 0.0)) {
        throw DomainError("bezier_flatten: tolerance must be positive");
    }
    const double t0 = crease.t0;
    const double t1 = crease.t1;
    if (!(t0 >= 0.0 && t1 <= 1.0 && t0 <= t1)) {
        throw DomainError("bezier_flatten: invalid parameter window");
    }

    const bool degenerate = crease.start == crease.control && crease.control == crease.end;
    if (degenerate || t0 == t1) {
        return {bezier_point(crease, t0)};
    }

    // Second difference s - 2c + e; the curve's deviation from the chord of
    // any sub-span of parameter length h is at most h^2 * |d2| / 4.
    const Point2 d2 = crease.start - 2.0 * crease.control + crease.end;
    const double span = t1 - t0;
    const double segments = std::ceil(span * std::sqrt(d2.length() / (4.0 * tolerance)));
    const auto n = static_cast<std::size_t>(std::max(1.0, segments));

    std::vector<Point2> polyline;
    polyline.reserve(n + 1);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = t0 + span * (static_cast<double>(k) / static_cast<double>(n));
        polyline.push_back(bezier_point(crease, t));
    }
    polyline.push_back(bezier_point(crease, t1));
    return polyline;
}

Point2 start_edge_point(double u) {
    const double s = 2.0 * std::clamp(u, 0.0, 1.0);
    if (s <= 1.0) {
        return {1.0 - s, 0.0};
    }
    return {0.0, s - 1.0};
}

Point2 end_edge_point(double u) {
    const double s = 2.0 * std::clamp(u, 0.0, 1.0);
    if (s <= 1.0) {
        return {1.0, s};
    }
    return {2.0 - s, 1.0};
}

Point2 mirror(Point2 p) {
    return {1.0 - p.x, p.y};
}

CreaseSpec mirror(const CreaseSpec& crease) {
    CreaseSpec out = crease;
    out.start = mirror(crease.start);
    out.control = mirror(crease.control);
    out.end = mirror(crease.end);
    return out;
}

} // namespace creasegen::geometry
