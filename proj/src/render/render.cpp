#include "creasegen/errors.hpp"
#include "creasegen/renderer.hpp"

namespace creasegen::render {

Canvas render_sample(const geometry::SampleParams& sample, const BackgroundPool& pool,
                     const RenderOptions& options) {
    if (options.canvas_size < kMinCanvasSide) {
        throw DomainError("render_sample: canvas size below " + std::to_string(kMinCanvasSide));
    }
    if (sample.widths.size() != sample.creases.size() || sample.colors.size() != sample.creases.size()) {
        throw DomainError("render_sample: widths/colors do not match crease count");
    }

    Canvas canvas(options.canvas_size, options.canvas_size);
    composite_background(canvas, pool.resolve(sample.background));

    auto draw_role = [&](geometry::CreaseRole role) {
        for (std::size_t i = 0; i < sample.creases.size(); ++i) {
            if (sample.creases[i].role != role) {
                continue;
            }
            const auto polyline = geometry::bezier_flatten(sample.creases[i], options.flatten_tolerance);
            stroke_polyline(canvas, polyline, sample.widths[i], sample.colors[i]);
        }
    };
    draw_role(geometry::CreaseRole::Wrinkle);
    draw_role(geometry::CreaseRole::Principal);

    apply_blur(canvas, sample.blur_sigma);
    return canvas;
}

} // namespace creasegen::render
