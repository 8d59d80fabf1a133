#include "creasegen/errors.hpp"
#include "creasegen/geometry.hpp"

#include <algorithm>
#include <string>

namespace creasegen::geometry {

namespace {

// Stream tags: one generator per component.
enum StreamTag : std::uint64_t {
    kIdentityHand = 0x100,
    kIdentityPrincipals = 0x101,
    kIdentityWrinkles = 0x102,
    kSamplePrincipalNoise = 0x200,
    kSampleWrinkleNoise = 0x201,
    kSamplePrincipalLook = 0x202,
    kSampleWrinkleLook = 0x203,
    kSampleScene = 0x204,
};

void sample_window(Rng& rng, const GeometryConfig& config, CreaseSpec& crease) {
    crease.t0 = rng.uniform(config.t0_range.lo, config.t0_range.hi);
    crease.t1 = rng.uniform(config.t1_range.lo, config.t1_range.hi);
}

// m sorted draws from [lo, hi], strictly increasing.
bool draw_ordered(Rng& rng, std::size_t m, double lo, double hi, std::vector<double>& out) {
    out.resize(m);
    for (double& u : out) {
        u = rng.uniform(lo, hi);
    }
    std::sort(out.begin(), out.end());
    return std::adjacent_find(out.begin(), out.end()) == out.end();
}

Point2 perturbed(Rng& rng, Point2 p, double mean, double stddev) {
    const double x = p.x + rng.normal(mean, stddev);
    const double y = p.y + rng.normal(mean, stddev);
    return {std::clamp(x, kPerturbedMin, kPerturbedMax), std::clamp(y, kPerturbedMin, kPerturbedMax)};
}

Rgb sample_color(Rng& rng, Interval channel) {
    const auto lo = static_cast<std::int64_t>(std::ceil(channel.lo));
    const auto hi = static_cast<std::int64_t>(std::floor(channel.hi));
    auto draw = [&] { return static_cast<std::uint8_t>(std::clamp<std::int64_t>(rng.uniform_int(lo, hi), 0, 255)); };
    const std::uint8_t r = draw();
    const std::uint8_t g = draw();
    const std::uint8_t b = draw();
    return {r, g, b};
}

} // namespace

std::uint64_t identity_seed(std::uint64_t master_seed, std::uint64_t identity_id) {
    return derive_seed(master_seed, {identity_id});
}

Point2 sample_control_point(Rng& rng, Point2 start, Point2 end) {
    const Point2 chord = end - start;
    const double length = chord.length();
    if (!(length > 0.0)) {
        throw DomainError("sample_control_point: start and end coincide");
    }
    const Point2 along = chord * (1.0 / length);
    const Point2 across{-along.y, along.x};
    const double a = rng.uniform(-length / 3.0, length / 3.0);
    const double b = rng.uniform(-length / 6.0, length / 6.0);
    const Point2 mid = (start + end) * 0.5;
    return mid + a * along + b * across;
}

std::vector<CreaseSpec> sample_principal_lines(Rng& rng, std::size_t m, Hand hand,
                                               const GeometryConfig& config) {
    if (m == 0) {
        throw DomainError("sample_principal_lines: m must be at least 1");
    }
    const double lo = config.edge_margin;
    const double hi = 1.0 - config.edge_margin;

    std::vector<double> us;
    std::vector<double> ue;
    bool ordered = false;
    for (int attempt = 0; attempt < kOrderingAttempts && !ordered; ++attempt) {
        const bool starts_ok = draw_ordered(rng, m, lo, hi, us);
        const bool ends_ok = draw_ordered(rng, m, lo, hi, ue);
        ordered = starts_ok && ends_ok;
    }
    if (!ordered) {
        throw GenerationError("sample_principal_lines: could not order " + std::to_string(m) +
                              " endpoints after " + std::to_string(kOrderingAttempts) + " attempts");
    }

    std::vector<CreaseSpec> lines(m);
    for (std::size_t k = 0; k < m; ++k) {
        CreaseSpec& line = lines[k];
        line.role = CreaseRole::Principal;
        line.start = start_edge_point(us[k]);
        line.end = end_edge_point(ue[k]);
        line.control = sample_control_point(rng, line.start, line.end);
        sample_window(rng, config, line);
        if (hand == Hand::Right) {
            line = mirror(line);
        }
    }
    return lines;
}

std::vector<CreaseSpec> sample_wrinkles(Rng& rng, std::size_t n, const GeometryConfig& config) {
    std::vector<CreaseSpec> wrinkles(n);
    for (CreaseSpec& w : wrinkles) {
        w.role = CreaseRole::Wrinkle;
        do {
            w.start = {rng.uniform(), rng.uniform()};
            w.end = {rng.uniform(), rng.uniform()};
        } while (w.start == w.end);
        if (config.wrinkle_control == WrinkleControl::Rectangle) {
            w.control = sample_control_point(rng, w.start, w.end);
        } else {
            w.control = {rng.uniform(), rng.uniform()};
        }
        sample_window(rng, config, w);
    }
    return wrinkles;
}

IdentitySpec sample_identity(const GeometryConfig& config, std::uint64_t master_seed,
                             std::uint64_t identity_id) {
    IdentitySpec spec;
    spec.identity_id = identity_id;
    const std::uint64_t seed = identity_seed(master_seed, identity_id);

    switch (config.hand) {
    case HandPolicy::Left:
        spec.hand = Hand::Left;
        break;
    case HandPolicy::Right:
        spec.hand = Hand::Right;
        break;
    case HandPolicy::Random: {
        Rng rng(derive_seed(seed, {kIdentityHand}));
        spec.hand = rng.bernoulli(0.5) ? Hand::Right : Hand::Left;
        break;
    }
    }

    if (config.principals_enabled) {
        Rng rng(derive_seed(seed, {kIdentityPrincipals}));
        const auto m = rng.uniform_int(config.principal_min, config.principal_max);
        spec.principals = sample_principal_lines(rng, static_cast<std::size_t>(m), spec.hand, config);
    }
    if (config.wrinkles_enabled) {
        Rng rng(derive_seed(seed, {kIdentityWrinkles}));
        const auto n = rng.uniform_int(config.wrinkle_min, config.wrinkle_max);
        spec.wrinkles = sample_wrinkles(rng, static_cast<std::size_t>(n), config);
    }
    return spec;
}

SampleParams perturb_identity(const IdentitySpec& identity, const AppearanceConfig& config,
                              std::uint64_t master_seed, std::uint64_t sample_id) {
    const NoiseConfig& noise = config.noise;
    if (noise.std_principal < 0.0 || noise.std_wrinkle < 0.0) {
        throw DomainError("perturb_identity: noise standard deviations must be non-negative");
    }
    const std::uint64_t seed = identity_seed(master_seed, identity.identity_id);
    auto stream = [&](std::uint64_t tag) { return Rng(derive_seed(seed, {sample_id, tag})); };

    SampleParams out;
    out.identity_id = identity.identity_id;
    out.sample_id = sample_id;
    const std::size_t total = identity.principals.size() + identity.wrinkles.size();
    out.creases.reserve(total);
    out.widths.reserve(total);
    out.colors.reserve(total);

    auto add_role = [&](const std::vector<CreaseSpec>& creases, double stddev, Interval width,
                        std::uint64_t noise_tag, std::uint64_t look_tag) {
        Rng noise_rng = stream(noise_tag);
        Rng look_rng = stream(look_tag);
        for (const CreaseSpec& c : creases) {
            CreaseSpec p = c;
            p.start = perturbed(noise_rng, c.start, noise.mean, stddev);
            p.control = perturbed(noise_rng, c.control, noise.mean, stddev);
            p.end = perturbed(noise_rng, c.end, noise.mean, stddev);
            out.creases.push_back(p);
            out.widths.push_back(look_rng.uniform(width.lo, width.hi));
            out.colors.push_back(sample_color(look_rng, config.color_channel));
        }
    };
    add_role(identity.principals, noise.std_principal, config.principal_width, kSamplePrincipalNoise,
             kSamplePrincipalLook);
    add_role(identity.wrinkles, noise.std_wrinkle, config.wrinkle_width, kSampleWrinkleNoise,
             kSampleWrinkleLook);

    Rng scene = stream(kSampleScene);
    if (config.background_pool_size > 0) {
        out.background.kind = BackgroundRef::Kind::Pool;
        out.background.index = static_cast<std::uint32_t>(scene.below(config.background_pool_size));
    }
    if (scene.bernoulli(config.blur_probability)) {
        out.blur_sigma = scene.uniform(0.0, config.blur_sigma_max);
    }
    return out;
}

} // namespace creasegen::geometry
