#include <gtest/gtest.h>

#include "creasegen/errors.hpp"
#include "creasegen/geometry.hpp"
#include "oracles.hpp"

using namespace creasegen;
using namespace creasegen::geometry;

namespace {

CreaseSpec arch() {
    CreaseSpec c;
    c.start = {0, 0};
    c.control = {0.5, 1};
    c.end = {1, 0};
    return c;
}

} // namespace

TEST(BezierPoint, StartAtZero) {
    EXPECT_EQ(bezier_point(arch(), 0.0), (Point2{0, 0}));
}

TEST(BezierPoint, EndAtOne) {
    EXPECT_EQ(bezier_point(arch(), 1.0), (Point2{1, 0}));
}

TEST(BezierPoint, Midpoint) {
    const Point2 p = bezier_point(arch(), 0.5);
    EXPECT_DOUBLE_EQ(p.x, 0.5);
    EXPECT_DOUBLE_EQ(p.y, 0.5);
}

TEST(BezierPoint, EndpointsExactForArbitraryPoints) {
    CreaseSpec c;
    c.start = {0.123456789, 0.987654321};
    c.control = {-0.2, 1.1};
    c.end = {0.7777, 0.3333};
    const Point2 s = bezier_point(c, 0.0);
    const Point2 e = bezier_point(c, 1.0);
    EXPECT_NEAR(s.x, c.start.x, 1e-12);
    EXPECT_NEAR(s.y, c.start.y, 1e-12);
    EXPECT_NEAR(e.x, c.end.x, 1e-12);
    EXPECT_NEAR(e.y, c.end.y, 1e-12);
}

TEST(BezierPoint, RejectsParameterOutsideUnitInterval) {
    EXPECT_THROW(bezier_point(arch(), -0.01), DomainError);
    EXPECT_THROW(bezier_point(arch(), 1.01), DomainError);
    EXPECT_THROW(bezier_point(arch(), std::nan("")), DomainError);
}

TEST(BezierFlatten, CollinearControlNeedsTwoVertices) {
    CreaseSpec c;
    c.start = {0, 0};
    c.control = {0.5, 0};
    c.end = {1, 0};
    const auto poly = bezier_flatten(c, 0.01);
    ASSERT_EQ(poly.size(), 2u);
    EXPECT_EQ(poly.front(), (Point2{0, 0}));
    EXPECT_EQ(poly.back(), (Point2{1, 0}));
}

TEST(BezierFlatten, ArchWithinToleranceOnDenseSampling) {
    const CreaseSpec c = arch();
    const auto poly = bezier_flatten(c, 1e-3);
    EXPECT_LE(oracle::max_curve_deviation(c, poly, 10000), 1e-3);
}

TEST(BezierFlatten, SegmentMidpointsWithinTolerance) {
    const CreaseSpec c = arch();
    const double tol = 1e-3;
    const auto poly = bezier_flatten(c, tol);
    const std::size_t n = poly.size() - 1;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = (k + 0.5) / static_cast<double>(n);
        const Point2 on_curve = bezier_point(c, t);
        EXPECT_LE(oracle::point_segment_distance(on_curve, poly[k], poly[k + 1]), tol);
    }
}

TEST(BezierFlatten, VerticesLieOnCurve) {
    const CreaseSpec c = arch();
    const auto poly = bezier_flatten(c, 1e-3);
    const std::size_t n = poly.size() - 1;
    for (std::size_t k = 0; k <= n; ++k) {
        const Point2 expected = bezier_point(c, static_cast<double>(k) / static_cast<double>(n));
        EXPECT_NEAR(poly[k].x, expected.x, 1e-15);
        EXPECT_NEAR(poly[k].y, expected.y, 1e-15);
    }
}

TEST(BezierFlatten, TruncatedWindowEndpoints) {
    CreaseSpec c = arch();
    c.t0 = 0.2;
    c.t1 = 0.8;
    const auto poly = bezier_flatten(c, 1e-3);
    EXPECT_EQ(poly.front(), bezier_point(c, 0.2));
    EXPECT_EQ(poly.back(), bezier_point(c, 0.8));
    EXPECT_LE(oracle::max_curve_deviation(c, poly, 10000), 1e-3);
}

TEST(BezierFlatten, DegenerateCurveIsSinglePoint) {
    CreaseSpec c;
    c.start = c.control = c.end = {0.3, 0.4};
    const auto poly = bezier_flatten(c, 1e-3);
    ASSERT_EQ(poly.size(), 1u);
    EXPECT_EQ(poly[0], (Point2{0.3, 0.4}));
}

TEST(BezierFlatten, EmptyWindowIsSinglePoint) {
    CreaseSpec c = arch();
    c.t0 = c.t1 = 0.5;
    EXPECT_EQ(bezier_flatten(c, 1e-3).size(), 1u);
}

TEST(BezierFlatten, RejectsNonPositiveTolerance) {
    EXPECT_THROW(bezier_flatten(arch(), 0.0), DomainError);
    EXPECT_THROW(bezier_flatten(arch(), -1.0), DomainError);
}

TEST(BezierFlatten, RejectsInvertedWindow) {
    CreaseSpec c = arch();
    c.t0 = 0.8;
    c.t1 = 0.2;
    EXPECT_THROW(bezier_flatten(c, 1e-3), DomainError);
}

TEST(BezierFlatten, TighterToleranceAddsVertices) {
    EXPECT_GT(bezier_flatten(arch(), 1e-4).size(), bezier_flatten(arch(), 1e-2).size());
}

TEST(EdgePoints, CornerPolylines) {
    EXPECT_EQ(start_edge_point(0.0), (Point2{1, 0}));
    EXPECT_EQ(start_edge_point(0.5), (Point2{0, 0}));
    EXPECT_EQ(start_edge_point(1.0), (Point2{0, 1}));
    EXPECT_EQ(end_edge_point(0.0), (Point2{1, 0}));
    EXPECT_EQ(end_edge_point(0.5), (Point2{1, 1}));
    EXPECT_EQ(end_edge_point(1.0), (Point2{0, 1}));
    EXPECT_EQ(start_edge_point(0.25), (Point2{0.5, 0}));
    EXPECT_EQ(end_edge_point(0.75), (Point2{0.5, 1}));
}

TEST(EdgePoints, OracleInverse) {
    for (double u = 0.1; u < 0.9; u += 0.05) {
        EXPECT_NEAR(oracle::start_edge_parameter(start_edge_point(u)), u, 1e-12);
        EXPECT_NEAR(oracle::end_edge_parameter(end_edge_point(u)), u, 1e-12);
    }
}

TEST(Mirror, ReflectsX) {
    EXPECT_EQ(mirror(Point2{0.25, 0.6}), (Point2{0.75, 0.6}));
    CreaseSpec c = arch();
    c.t0 = 0.1;
    const CreaseSpec m = mirror(c);
    EXPECT_EQ(m.start, (Point2{1, 0}));
    EXPECT_EQ(m.end, (Point2{0, 0}));
    EXPECT_EQ(m.t0, 0.1);
}
