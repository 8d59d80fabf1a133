#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "creasegen/geometry.hpp"
#include "creasegen/image.hpp"

namespace creasegen::render {

inline constexpr int kMinCanvasSide = 16;

struct SolidFill {
    Rgb color;
};

/// Base colour plus per-pixel luminance noise drawn from `seed`.
struct NoiseFill {
    Rgb base;
    double stddev = 0.0;
    std::uint64_t seed = 0;
};

/// Linear ramp between two colours along direction `angle` (radians).
struct GradientFill {
    Rgb from;
    Rgb to;
    double angle = 0.0;
};

struct ImageFill {
    std::shared_ptr<const Canvas> image;
    std::string path;
};

using Background = std::variant<SolidFill, NoiseFill, GradientFill, ImageFill>;

enum class ProceduralKind { Solid, GaussianNoise, Gradient };

/// Procedural background whose parameters are a pure function of `seed`.
Background procedural_background(ProceduralKind kind, std::uint64_t seed);

/// Fills the canvas. Image sources are resampled bilinearly to the canvas size.
void composite_background(Canvas& canvas, const Background& background);

/// Read-only set of backgrounds addressed by BackgroundRef::index.
class BackgroundPool {
public:
    /// Plain white canvases only.
    static BackgroundPool none();

    /// `size` procedural backgrounds cycling through the three kinds.
    static BackgroundPool procedural(std::size_t size, std::uint64_t seed);

    /// All PNG/JPEG files under `dir` (recursive), sorted by relative path,
    /// decoded and resized to width x height. Throws ConfigError when the
    /// directory holds no images and IoError when a file cannot be decoded.
    static BackgroundPool from_directory(const std::filesystem::path& dir, int width, int height);

    std::size_t size() const noexcept { return size_; }

    /// Throws ConfigError for an index outside the pool.
    Background resolve(const geometry::BackgroundRef& ref) const;

    const std::vector<std::string>& paths() const noexcept { return paths_; }

private:
    std::size_t size_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<std::shared_ptr<const Canvas>> images_;
    std::vector<std::string> paths_;
};

/// Round-capped, round-joined stroke of a unit-square polyline. Coordinates
/// scale by the canvas size into pixel space. Each pixel blends toward
/// `color` by its box-filtered coverage of the stroke at its centre distance;
/// pixels farther than width/2 + 1/2 from the spine are untouched.
void stroke_polyline(Canvas& canvas, std::span<const geometry::Point2> polyline, double width, Rgb color);

/// Separable Gaussian, radius ceil(3 sigma), clamp-to-edge. sigma == 0 is a no-op.
void apply_blur(Canvas& canvas, double sigma);

struct RenderOptions {
    int canvas_size = 224;
    /// Flattening tolerance in unit-square units.
    double flatten_tolerance = 1e-3;
};

/// Background, then wrinkles, then principals on top, then blur.
Canvas render_sample(const geometry::SampleParams& sample, const BackgroundPool& pool,
                     const RenderOptions& options = {});

} // namespace creasegen::render
