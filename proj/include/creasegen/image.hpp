#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "creasegen/color.hpp"

namespace creasegen {

/// Row-major 8-bit RGB raster.
class Canvas {
public:
    Canvas() = default;
    Canvas(int width, int height, Rgb fill = {255, 255, 255});

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    bool empty() const noexcept { return pixels_.empty(); }

    Rgb at(int x, int y) const {
        const std::uint8_t* p = &pixels_[offset(x, y)];
        return {p[0], p[1], p[2]};
    }
    void set(int x, int y, Rgb c) {
        std::uint8_t* p = &pixels_[offset(x, y)];
        p[0] = c.r;
        p[1] = c.g;
        p[2] = c.b;
    }

    std::uint8_t* row(int y) { return pixels_.data() + offset(0, y); }
    const std::uint8_t* row(int y) const { return pixels_.data() + offset(0, y); }

    std::span<std::uint8_t> bytes() { return pixels_; }
    std::span<const std::uint8_t> bytes() const { return pixels_; }

    void fill(Rgb c);

    friend bool operator==(const Canvas&, const Canvas&) = default;

private:
    std::size_t offset(int x, int y) const {
        return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) * 3;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> pixels_;
};

/// Bilinear sample at continuous pixel coordinates, where pixel (i, j) has
/// its centre at (i + 0.5, j + 0.5). Reads outside the raster clamp to the
/// nearest edge pixel.
std::array<double, 3> sample_bilinear(const Canvas& image, double x, double y);

/// Bilinear resize with pixel-centre alignment.
Canvas resize_bilinear(const Canvas& image, int width, int height);

inline std::uint8_t to_byte(double v) {
    if (v <= 0.0) {
        return 0;
    }
    if (v >= 255.0) {
        return 255;
    }
    return static_cast<std::uint8_t>(v + 0.5);
}

// ---------------------------------------------------------------------------
// Codecs

/// Encodes as 8-bit RGB PNG with fixed settings (no ancillary chunks,
/// adaptive filtering, the given zlib level) so equal rasters give equal bytes.
std::vector<std::uint8_t> encode_png(const Canvas& image, int compression_level = 6);

/// Decodes a PNG or JPEG from memory; format detected from the signature.
Canvas decode_image(std::span<const std::uint8_t> bytes);

/// Reads a PNG or JPEG file. Throws IoError naming the file on failure.
Canvas read_image(const std::filesystem::path& path);

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

} // namespace creasegen
