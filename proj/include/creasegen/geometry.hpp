#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "creasegen/color.hpp"
#include "creasegen/random.hpp"

/// Quadratic Bezier crease model and the seeded samplers that map an
/// identity index to crease parameters and a sample index to a perturbed
/// realization of them.
///
/// Coordinates live in the unit square with image orientation: x grows to
/// the right, y grows downwards, (0, 0) is the top-left corner.
namespace creasegen::geometry {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;

    Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
    Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
    Point2 operator*(double k) const { return {x * k, y * k}; }
    friend Point2 operator*(double k, Point2 p) { return p * k; }

    double dot(Point2 o) const { return x * o.x + y * o.y; }
    double length() const { return std::hypot(x, y); }
};

enum class CreaseRole { Principal, Wrinkle };
enum class Hand { Left, Right };

/// One quadratic Bezier crease drawn over the parameter window [t0, t1].
struct CreaseSpec {
    Point2 start;
    Point2 control;
    Point2 end;
    double t0 = 0.0;
    double t1 = 1.0;
    CreaseRole role = CreaseRole::Wrinkle;

    friend bool operator==(const CreaseSpec&, const CreaseSpec&) = default;
};

struct IdentitySpec {
    std::uint64_t identity_id = 0;
    Hand hand = Hand::Left;
    std::vector<CreaseSpec> principals;
    std::vector<CreaseSpec> wrinkles;

    std::size_t principal_count() const { return principals.size(); }
    std::size_t wrinkle_count() const { return wrinkles.size(); }

    friend bool operator==(const IdentitySpec&, const IdentitySpec&) = default;
};

struct NoiseConfig {
    double mean = 0.0;
    double std_principal = 0.04;
    double std_wrinkle = 0.01;
};

enum class WrinkleControl {
    Rectangle, ///< control drawn from the chord-aligned rectangle
    Uniform,   ///< control drawn uniformly from the unit square
};

enum class HandPolicy { Random, Left, Right };

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Per-identity sampling parameters.
struct GeometryConfig {
    bool principals_enabled = true;
    int principal_min = 3;
    int principal_max = 5;
    bool wrinkles_enabled = true;
    int wrinkle_min = 5;
    int wrinkle_max = 15;
    WrinkleControl wrinkle_control = WrinkleControl::Rectangle;
    HandPolicy hand = HandPolicy::Random;
    /// Principal endpoints are drawn from u in [margin, 1 - margin] along
    /// the corner polylines.
    double edge_margin = 0.1;
    Interval t0_range{0.0, 0.3};
    Interval t1_range{0.7, 1.0};
};

/// Which background a sample is composited onto. `index` addresses the
/// renderer's pool; `kind == None` means a plain white canvas.
struct BackgroundRef {
    enum class Kind { None, Pool };
    Kind kind = Kind::None;
    std::uint32_t index = 0;

    friend bool operator==(const BackgroundRef&, const BackgroundRef&) = default;
};

/// Per-sample appearance parameters.
struct AppearanceConfig {
    NoiseConfig noise;
    Interval principal_width{1.5, 3.0};
    Interval wrinkle_width{0.5, 1.5};
    /// Each RGB channel of a stroke color is drawn independently from this range.
    Interval color_channel{10.0, 90.0};
    double blur_probability = 0.5;
    double blur_sigma_max = 2.0;
    /// Number of backgrounds to choose from; 0 disables backgrounds.
    std::size_t background_pool_size = 1024;
};

struct SampleParams {
    std::uint64_t identity_id = 0;
    std::uint64_t sample_id = 0;
    /// Principals first, then wrinkles. `widths` and `colors` are parallel.
    std::vector<CreaseSpec> creases;
    std::vector<double> widths;
    std::vector<Rgb> colors;
    BackgroundRef background;
    double blur_sigma = 0.0;

    friend bool operator==(const SampleParams&, const SampleParams&) = default;
};

/// Perturbed coordinates are clamped to this range.
inline constexpr double kPerturbedMin = -0.25;
inline constexpr double kPerturbedMax = 1.25;

/// Resampling budget when strict endpoint ordering fails.
inline constexpr int kOrderingAttempts = 100;

// ---------------------------------------------------------------------------
// Curve evaluation

/// (1-t)^2 s + 2t(1-t) c + t^2 e. Throws DomainError for t outside [0, 1].
Point2 bezier_point(const CreaseSpec& crease, double t);

/// Polyline through points of the curve restricted to [t0, t1].
///
/// Vertices are evaluated on the analytic curve at uniformly spaced
/// parameters. The spacing comes from the closed-form deviation bound of a
/// quadratic: over a parameter span h the curve departs from its chord by at
/// most h^2 |s - 2c + e| / 4, so every curve point is within `tolerance` of
/// the polyline. A curve with s = c = e yields one vertex.
std::vector<Point2> bezier_flatten(const CreaseSpec& crease, double tolerance);

// ---------------------------------------------------------------------------
// Corner polylines for principal endpoints (left hand)

/// Point at normalized arclength u in [0, 1] along (1,0) -> (0,0) -> (0,1).
Point2 start_edge_point(double u);

/// Point at normalized arclength u in [0, 1] along (1,0) -> (1,1) -> (0,1).
Point2 end_edge_point(double u);

Point2 mirror(Point2 p);
CreaseSpec mirror(const CreaseSpec& crease);

// ---------------------------------------------------------------------------
// Samplers

/// Control point from the rectangle centred on the chord midpoint, 2/3 L
/// along the chord and 1/3 L across it. Throws DomainError when s == e.
Point2 sample_control_point(Rng& rng, Point2 start, Point2 end);

/// `m` principal lines with co-ordered endpoints. Right hands are the x-mirror
/// of the left-hand draw from the same generator state.
std::vector<CreaseSpec> sample_principal_lines(Rng& rng, std::size_t m, Hand hand,
                                               const GeometryConfig& config = {});

std::vector<CreaseSpec> sample_wrinkles(Rng& rng, std::size_t n,
                                        const GeometryConfig& config = {});

/// Root seed of one identity; every identity and sample stream derives from it.
std::uint64_t identity_seed(std::uint64_t master_seed, std::uint64_t identity_id);

/// Identity template. All randomness is derived from (master_seed, identity_id).
IdentitySpec sample_identity(const GeometryConfig& config, std::uint64_t master_seed,
                             std::uint64_t identity_id);

/// Realization of one sample. All randomness is derived from
/// (master_seed, identity_id, sample_id); t0/t1 are kept from the template.
SampleParams perturb_identity(const IdentitySpec& identity, const AppearanceConfig& config,
                              std::uint64_t master_seed, std::uint64_t sample_id);

} // namespace creasegen::geometry
