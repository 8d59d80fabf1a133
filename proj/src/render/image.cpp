#include "creasegen/errors.hpp"
#include "creasegen/image.hpp"

#include <algorithm>
#include <cmath>

namespace creasegen {

Canvas::Canvas(int width, int height, Rgb fill_color) : width_(width), height_(height) {
    if (width <= 0 || height <= 0) {
        throw DomainError("Canvas: dimensions must be positive");
    }
    pixels_.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3);
    fill(fill_color);
}

void Canvas::fill(Rgb c) {
    for (std::size_t i = 0; i < pixels_.size(); i += 3) {
        pixels_[i] = c.r;
        pixels_[i + 1] = c.g;
        pixels_[i + 2] = c.b;
    }
}

std::array<double, 3> sample_bilinear(const Canvas& image, double x, double y) {
    const double fx = x - 0.5;
    const double fy = y - 0.5;
    const double x0f = std::floor(fx);
    const double y0f = std::floor(fy);
    const double ax = fx - x0f;
    const double ay = fy - y0f;

    const int w = image.width();
    const int h = image.height();
    auto clamp_x = [w](double v) { return static_cast<int>(std::clamp(v, 0.0, static_cast<double>(w - 1))); };
    auto clamp_y = [h](double v) { return static_cast<int>(std::clamp(v, 0.0, static_cast<double>(h - 1))); };
    const int x0 = clamp_x(x0f);
    const int x1 = clamp_x(x0f + 1.0);
    const int y0 = clamp_y(y0f);
    const int y1 = clamp_y(y0f + 1.0);

    const std::uint8_t* r0 = image.row(y0);
    const std::uint8_t* r1 = image.row(y1);
    std::array<double, 3> out{};
    for (int c = 0; c < 3; ++c) {
        const double top = r0[x0 * 3 + c] + ax * (r0[x1 * 3 + c] - r0[x0 * 3 + c]);
        const double bottom = r1[x0 * 3 + c] + ax * (r1[x1 * 3 + c] - r1[x0 * 3 + c]);
        out[c] = top + ay * (bottom - top);
    }
    return out;
}

Canvas resize_bilinear(const Canvas& image, int width, int height) {
    Canvas out(width, height);
    const double sx = static_cast<double>(image.width()) / width;
    const double sy = static_cast<double>(image.height()) / height;
    for (int y = 0; y < height; ++y) {
        std::uint8_t* row = out.row(y);
        for (int x = 0; x < width; ++x) {
            const auto v = sample_bilinear(image, (x + 0.5) * sx, (y + 0.5) * sy);
            row[x * 3] = to_byte(v[0]);
            row[x * 3 + 1] = to_byte(v[1]);
            row[x * 3 + 2] = to_byte(v[2]);
        }
    }
    return out;
}

} // namespace creasegen
