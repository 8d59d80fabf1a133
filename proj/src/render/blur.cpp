#include "creasegen/renderer.hpp"

#include <algorithm>
#include <cmath>

namespace creasegen::render {

void apply_blur(Canvas& canvas, double sigma) {
    if (!(sigma > 0.0)) {
        return;
    }
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int k = -radius; k <= radius; ++k) {
        const double w = std::exp(-(k * k) / (2.0 * sigma * sigma));
        kernel[static_cast<std::size_t>(k + radius)] = w;
        sum += w;
    }
    for (double& w : kernel) {
        w /= sum;
    }

    const int w = canvas.width();
    const int h = canvas.height();
    const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3;
    thread_local std::vector<double> horiz;
    horiz.assign(n, 0.0);

    for (int y = 0; y < h; ++y) {
        const std::uint8_t* src = canvas.row(y);
        double* dst = &horiz[static_cast<std::size_t>(y) * w * 3];
        for (int x = 0; x < w; ++x) {
            double acc[3] = {0.0, 0.0, 0.0};
            for (int k = -radius; k <= radius; ++k) {
                const int sx = std::clamp(x + k, 0, w - 1);
                const double kw = kernel[static_cast<std::size_t>(k + radius)];
                acc[0] += kw * src[sx * 3];
                acc[1] += kw * src[sx * 3 + 1];
                acc[2] += kw * src[sx * 3 + 2];
            }
            dst[x * 3] = acc[0];
            dst[x * 3 + 1] = acc[1];
            dst[x * 3 + 2] = acc[2];
        }
    }

    const std::size_t stride = static_cast<std::size_t>(w) * 3;
    std::vector<double> acc(stride);
    for (int y = 0; y < h; ++y) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (int k = -radius; k <= radius; ++k) {
            const int sy = std::clamp(y + k, 0, h - 1);
            const double kw = kernel[static_cast<std::size_t>(k + radius)];
            const double* src = &horiz[static_cast<std::size_t>(sy) * stride];
            for (std::size_t i = 0; i < stride; ++i) {
                acc[i] += kw * src[i];
            }
        }
        std::uint8_t* out = canvas.row(y);
        for (std::size_t i = 0; i < stride; ++i) {
            out[i] = to_byte(acc[i]);
        }
    }
}

} // namespace creasegen::render
