#include "creasegen/errors.hpp"
#include "creasegen/roi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace creasegen::roi {

RoiTransform::RoiTransform(const std::array<double, 6>& m) : m_(m) {}

Point2 RoiTransform::apply(Point2 p) const {
    return {m_[0] * p.x + m_[1] * p.y + m_[2], m_[3] * p.x + m_[4] * p.y + m_[5]};
}

RoiTransform RoiTransform::inverse() const {
    const double det = determinant();
    if (det == 0.0 || !std::isfinite(det)) {
        throw DomainError("RoiTransform: singular matrix");
    }
    const double a = m_[4] / det;
    const double b = -m_[1] / det;
    const double c = -m_[3] / det;
    const double d = m_[0] / det;
    return RoiTransform({a, b, -(a * m_[2] + b * m_[5]), c, d, -(c * m_[2] + d * m_[5])});
}

std::array<Point2, 2> landmark_frame(const LandmarkPair& lm) {
    const Point2 ab = lm.b - lm.a;
    const double len = ab.length();
    const Point2 x{ab.x / len, ab.y / len};
    const Point2 y = lm.hand == Hand::Left ? Point2{-x.y, x.x} : Point2{x.y, -x.x};
    return {x, y};
}

RoiTransform roi_transform(const LandmarkPair& lm, int out_size, const RoiGeometry& geom) {
    if (out_size < 1) {
        throw DomainError("roi_transform: out_size must be positive");
    }
    if (!(geom.side > 0.0) || !std::isfinite(geom.x_offset) || !std::isfinite(geom.y_offset)) {
        throw DomainError("roi_transform: crop side must be positive and offsets finite");
    }
    const Point2 ab = lm.b - lm.a;
    const double len = ab.length();
    if (!(len >= kMinLandmarkDistance)) {
        throw DomainError("degenerate landmarks: |AB| = " + std::to_string(len) + " px is below " +
                          std::to_string(kMinLandmarkDistance) + " px");
    }
    const auto [xh, yh] = landmark_frame(lm);
    const Point2 origin = lm.a + xh * (geom.x_offset * len) + yh * (geom.y_offset * len);
    const double scale = geom.side * len / out_size;
    return RoiTransform({xh.x * scale, yh.x * scale, origin.x, xh.y * scale, yh.y * scale, origin.y});
}

std::array<Point2, 4> roi_corners(const LandmarkPair& lm, int out_size, const RoiGeometry& geom) {
    const RoiTransform t = roi_transform(lm, out_size, geom);
    const double n = out_size;
    return {t({0, 0}), t({n, 0}), t({n, n}), t({0, n})};
}

namespace {

/// Strict separating-axis test between a convex quad and [0,w] x [0,h].
bool overlaps(const std::array<Point2, 4>& quad, double w, double h) {
    const std::array<Point2, 4> rect{Point2{0, 0}, Point2{w, 0}, Point2{w, h}, Point2{0, h}};
    std::array<Point2, 4> axes{Point2{1, 0}, Point2{0, 1}, quad[1] - quad[0], quad[3] - quad[0]};
    for (const Point2 axis : axes) {
        double qlo = std::numeric_limits<double>::infinity();
        double qhi = -qlo;
        double rlo = qlo;
        double rhi = -qlo;
        for (const Point2 p : quad) {
            qlo = std::min(qlo, axis.dot(p));
            qhi = std::max(qhi, axis.dot(p));
        }
        for (const Point2 p : rect) {
            rlo = std::min(rlo, axis.dot(p));
            rhi = std::max(rhi, axis.dot(p));
        }
        if (qhi <= rlo || rhi <= qlo) {
            return false;
        }
    }
    return true;
}

} // namespace

Canvas extract_roi(const Canvas& image, const LandmarkPair& lm, int out_size, const RoiGeometry& geom) {
    if (image.empty()) {
        throw DomainError("extract_roi: empty image");
    }
    const RoiTransform t = roi_transform(lm, out_size, geom);
    const double n = out_size;
    if (!overlaps({t({0, 0}), t({n, 0}), t({n, n}), t({0, n})}, image.width(), image.height())) {
        throw OutOfBoundsError("extract_roi: ROI square lies entirely outside the " + std::to_string(image.width()) +
                               "x" + std::to_string(image.height()) + " image");
    }
    Canvas out(out_size, out_size);
    for (int v = 0; v < out_size; ++v) {
        std::uint8_t* row = out.row(v);
        for (int u = 0; u < out_size; ++u) {
            const Point2 p = t({u + 0.5, v + 0.5});
            const auto c = sample_bilinear(image, p.x, p.y);
            row[u * 3] = to_byte(c[0]);
            row[u * 3 + 1] = to_byte(c[1]);
            row[u * 3 + 2] = to_byte(c[2]);
        }
    }
    return out;
}

} // namespace creasegen::roi
