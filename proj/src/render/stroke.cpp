#include "creasegen/renderer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace creasegen::render {

namespace {

struct Vec {
    double x;
    double y;
};

double segment_distance_sq(Vec p, Vec a, Vec b) {
    const double abx = b.x - a.x;
    const double aby = b.y - a.y;
    const double apx = p.x - a.x;
    const double apy = p.y - a.y;
    const double len_sq = abx * abx + aby * aby;
    double t = 0.0;
    if (len_sq > 0.0) {
        t = std::clamp((apx * abx + apy * aby) / len_sq, 0.0, 1.0);
    }
    const double dx = apx - t * abx;
    const double dy = apy - t * aby;
    return dx * dx + dy * dy;
}

// Length of [d - 1/2, d + 1/2] inside [-h, h]: a unit box filter across a
// band of half-width h.
double coverage(double d, double h) {
    return std::max(0.0, std::min(d + 0.5, h) - std::max(d - 0.5, -h));
}

} // namespace

void stroke_polyline(Canvas& canvas, std::span<const geometry::Point2> polyline, double width, Rgb color) {
    if (polyline.empty() || !(width > 0.0)) {
        return;
    }
    const double half = 0.5 * width;
    const double reach = half + 0.5;
    const double sx = canvas.width();
    const double sy = canvas.height();

    std::vector<Vec> pts;
    pts.reserve(polyline.size());
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = min_x;
    double max_x = -min_x;
    double max_y = -min_x;
    for (const auto& p : polyline) {
        const Vec v{p.x * sx, p.y * sy};
        pts.push_back(v);
        min_x = std::min(min_x, v.x);
        min_y = std::min(min_y, v.y);
        max_x = std::max(max_x, v.x);
        max_y = std::max(max_y, v.y);
    }

    // Pixel i has its centre at i + 0.5.
    auto first_px = [](double lo) { return static_cast<long>(std::ceil(lo - 0.5)); };
    auto last_px = [](double hi) { return static_cast<long>(std::floor(hi - 0.5)); };
    const long x0 = std::max(0L, first_px(min_x - reach));
    const long y0 = std::max(0L, first_px(min_y - reach));
    const long x1 = std::min(static_cast<long>(canvas.width()) - 1, last_px(max_x + reach));
    const long y1 = std::min(static_cast<long>(canvas.height()) - 1, last_px(max_y + reach));
    if (x0 > x1 || y0 > y1) {
        return;
    }

    const long bw = x1 - x0 + 1;
    const long bh = y1 - y0 + 1;
    thread_local std::vector<double> dist_sq;
    dist_sq.assign(static_cast<std::size_t>(bw * bh), std::numeric_limits<double>::infinity());

    const std::size_t segments = pts.size() == 1 ? 1 : pts.size() - 1;
    for (std::size_t s = 0; s < segments; ++s) {
        const Vec a = pts[s];
        const Vec b = pts.size() == 1 ? a : pts[s + 1];
        const long sx0 = std::max(x0, first_px(std::min(a.x, b.x) - reach));
        const long sx1 = std::min(x1, last_px(std::max(a.x, b.x) + reach));
        const long sy0 = std::max(y0, first_px(std::min(a.y, b.y) - reach));
        const long sy1 = std::min(y1, last_px(std::max(a.y, b.y) + reach));
        for (long y = sy0; y <= sy1; ++y) {
            double* drow = &dist_sq[static_cast<std::size_t>((y - y0) * bw)];
            for (long x = sx0; x <= sx1; ++x) {
                const double d = segment_distance_sq({x + 0.5, y + 0.5}, a, b);
                double& slot = drow[x - x0];
                if (d < slot) {
                    slot = d;
                }
            }
        }
    }

    const double reach_sq = reach * reach;
    const double cr = color.r;
    const double cg = color.g;
    const double cb = color.b;
    for (long y = y0; y <= y1; ++y) {
        const double* drow = &dist_sq[static_cast<std::size_t>((y - y0) * bw)];
        std::uint8_t* row = canvas.row(static_cast<int>(y));
        for (long x = x0; x <= x1; ++x) {
            const double d_sq = drow[x - x0];
            if (d_sq >= reach_sq) {
                continue;
            }
            const double cov = coverage(std::sqrt(d_sq), half);
            if (cov <= 0.0) {
                continue;
            }
            std::uint8_t* px = row + x * 3;
            if (cov >= 1.0) {
                px[0] = color.r;
                px[1] = color.g;
                px[2] = color.b;
                continue;
            }
            px[0] = to_byte(px[0] + cov * (cr - px[0]));
            px[1] = to_byte(px[1] + cov * (cg - px[1]));
            px[2] = to_byte(px[2] + cov * (cb - px[2]));
        }
    }
}

} // namespace creasegen::render
