#pragma once

#include <array>

#include "creasegen/geometry.hpp"
#include "creasegen/image.hpp"

namespace creasegen::roi {

using geometry::Hand;
using geometry::Point2;

inline constexpr double kMinLandmarkDistance = 8.0;

/// Two finger-valley landmarks in source pixel coordinates.
/// A: index/little-finger valley, B: ring/middle-finger valley.
struct LandmarkPair {
    Point2 a;
    Point2 b;
    Hand hand = Hand::Left;
};

/// Placement of the crop square in the landmark frame, in units of |AB|.
/// The square spans x in [x_offset, x_offset + side] and
/// y in [y_offset, y_offset + side].
struct RoiGeometry {
    double x_offset = -1.0 / 12.0;
    double y_offset = 1.0 / 6.0;
    double side = 7.0 / 6.0;
};

/// Affine map p' = M * (u, v, 1). For an ROI transform, (u, v) are output
/// pixel coordinates and p' is a source pixel coordinate; output pixel
/// (i, j) covers [i, i+1) x [j, j+1).
class RoiTransform {
public:
    RoiTransform() = default;
    explicit RoiTransform(const std::array<double, 6>& m);

    Point2 apply(Point2 p) const;
    Point2 operator()(Point2 p) const { return apply(p); }

    RoiTransform inverse() const;
    double determinant() const { return m_[0] * m_[4] - m_[1] * m_[3]; }

    /// Row-major {a, b, tx, c, d, ty}.
    const std::array<double, 6>& matrix() const { return m_; }

private:
    std::array<double, 6> m_{1, 0, 0, 0, 1, 0};
};

/// Unit frame axes for the landmarks. x points from A to B; y is the
/// left-hand perpendicular (x.y rotated a quarter turn clockwise in image
/// coordinates) and is negated for a right hand.
std::array<Point2, 2> landmark_frame(const LandmarkPair& lm);

/// Maps the out_size x out_size output grid onto the crop square.
/// Throws DomainError when |AB| < kMinLandmarkDistance or out_size < 1.
RoiTransform roi_transform(const LandmarkPair& lm, int out_size, const RoiGeometry& geom = {});

/// Source-space corners of the crop square in the order (0,0), (N,0), (N,N), (0,N).
std::array<Point2, 4> roi_corners(const LandmarkPair& lm, int out_size, const RoiGeometry& geom = {});

/// Bilinear crop with edge-clamped reads. Throws OutOfBoundsError when the
/// square does not intersect the image.
Canvas extract_roi(const Canvas& image, const LandmarkPair& lm, int out_size, const RoiGeometry& geom = {});

} // namespace creasegen::roi
