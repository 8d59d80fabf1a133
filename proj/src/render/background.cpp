#include "creasegen/errors.hpp"
#include "creasegen/renderer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace creasegen::render {

namespace {

// Light, skin-like tones: every channel stays well above crease colours.
Rgb skin_tone(Rng& rng) {
    const auto r = static_cast<std::uint8_t>(rng.uniform_int(190, 245));
    const auto g = static_cast<std::uint8_t>(rng.uniform_int(170, 225));
    const auto b = static_cast<std::uint8_t>(rng.uniform_int(160, 215));
    return {r, g, b};
}

struct Painter {
    Canvas& canvas;

    void operator()(const SolidFill& f) const { canvas.fill(f.color); }

    void operator()(const NoiseFill& f) const {
        Rng rng(f.seed);
        for (int y = 0; y < canvas.height(); ++y) {
            std::uint8_t* row = canvas.row(y);
            for (int x = 0; x < canvas.width(); ++x) {
                const double delta = rng.normal(0.0, f.stddev);
                row[x * 3] = to_byte(f.base.r + delta);
                row[x * 3 + 1] = to_byte(f.base.g + delta);
                row[x * 3 + 2] = to_byte(f.base.b + delta);
            }
        }
    }

    void operator()(const GradientFill& f) const {
        const double dx = std::cos(f.angle);
        const double dy = std::sin(f.angle);
        const double w = canvas.width();
        const double h = canvas.height();
        // Projection of the canvas corners onto the ramp direction.
        const double extent = 0.5 * (std::abs(dx) * w + std::abs(dy) * h);
        for (int y = 0; y < canvas.height(); ++y) {
            std::uint8_t* row = canvas.row(y);
            for (int x = 0; x < canvas.width(); ++x) {
                const double p = ((x + 0.5 - 0.5 * w) * dx + (y + 0.5 - 0.5 * h) * dy) / extent;
                const double t = std::clamp(0.5 + 0.5 * p, 0.0, 1.0);
                row[x * 3] = to_byte(f.from.r + t * (f.to.r - f.from.r));
                row[x * 3 + 1] = to_byte(f.from.g + t * (f.to.g - f.from.g));
                row[x * 3 + 2] = to_byte(f.from.b + t * (f.to.b - f.from.b));
            }
        }
    }

    void operator()(const ImageFill& f) const {
        const Canvas& src = *f.image;
        if (src.width() == canvas.width() && src.height() == canvas.height()) {
            canvas = src;
            return;
        }
        canvas = resize_bilinear(src, canvas.width(), canvas.height());
    }
};

bool is_image_file(const std::filesystem::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

} // namespace

Background procedural_background(ProceduralKind kind, std::uint64_t seed) {
    Rng rng(seed);
    switch (kind) {
    case ProceduralKind::Solid:
        return SolidFill{skin_tone(rng)};
    case ProceduralKind::GaussianNoise: {
        const Rgb base = skin_tone(rng);
        const double stddev = rng.uniform(2.0, 8.0);
        return NoiseFill{base, stddev, rng.next_u64()};
    }
    case ProceduralKind::Gradient: {
        const Rgb from = skin_tone(rng);
        const Rgb to = skin_tone(rng);
        return GradientFill{from, to, rng.uniform(0.0, 2.0 * std::numbers::pi)};
    }
    }
    throw DomainError("procedural_background: unknown kind");
}

void composite_background(Canvas& canvas, const Background& background) {
    std::visit(Painter{canvas}, background);
}

BackgroundPool BackgroundPool::none() {
    return {};
}

BackgroundPool BackgroundPool::procedural(std::size_t size, std::uint64_t seed) {
    BackgroundPool pool;
    pool.size_ = size;
    pool.seed_ = seed;
    return pool;
}

BackgroundPool BackgroundPool::from_directory(const std::filesystem::path& dir, int width, int height) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        throw IoError(dir.string() + ": not a directory");
    }
    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
        if (entry.is_regular_file() && is_image_file(entry.path())) {
            files.push_back(std::filesystem::relative(entry.path(), dir).generic_string());
        }
    }
    if (files.empty()) {
        throw ConfigError("background directory " + dir.string() + " contains no PNG/JPEG images");
    }
    std::sort(files.begin(), files.end());

    BackgroundPool pool;
    pool.size_ = files.size();
    pool.images_.reserve(files.size());
    for (const std::string& rel : files) {
        Canvas img = read_image(dir / rel);
        if (img.width() != width || img.height() != height) {
            img = resize_bilinear(img, width, height);
        }
        pool.images_.push_back(std::make_shared<const Canvas>(std::move(img)));
    }
    pool.paths_ = std::move(files);
    return pool;
}

Background BackgroundPool::resolve(const geometry::BackgroundRef& ref) const {
    if (ref.kind == geometry::BackgroundRef::Kind::None) {
        return SolidFill{{255, 255, 255}};
    }
    if (ref.index >= size_) {
        throw ConfigError("background index " + std::to_string(ref.index) + " outside pool of " +
                          std::to_string(size_));
    }
    if (!images_.empty()) {
        return ImageFill{images_[ref.index], paths_[ref.index]};
    }
    const auto kind = static_cast<ProceduralKind>(ref.index % 3);
    return procedural_background(kind, derive_seed(seed_, {ref.index}));
}

} // namespace creasegen::render
