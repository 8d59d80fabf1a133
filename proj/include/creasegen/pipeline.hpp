#pragma once

#include <cstdint>
#include <functional>

#include "creasegen/config.hpp"
#include "creasegen/image.hpp"
#include "creasegen/manifest.hpp"
#include "creasegen/renderer.hpp"

namespace creasegen::pipeline {

inline constexpr const char* kToolVersion = "1.0.0";

/// Background pool described by the config. Procedural pools are seeded from
/// the master seed.
render::BackgroundPool make_background_pool(const GenConfig& config);

/// Appearance parameters with the pool size filled in from `pool`.
geometry::AppearanceConfig effective_appearance(const GenConfig& config, const render::BackgroundPool& pool);

/// Renders one sample without touching the filesystem.
Canvas render_one(const GenConfig& config, const render::BackgroundPool& pool, std::uint64_t identity_id,
                  std::uint64_t sample_id);

/// "<identity_id>/<sample_id>.png"
std::string sample_path(std::uint64_t identity_id, std::uint64_t sample_id);

/// Called after each identity completes with (identities done, total).
using ProgressFn = std::function<void(std::uint64_t, std::uint64_t)>;

/// Writes num_identities x samples_per_identity PNGs under
/// config.output_dir/<identity_id>/<sample_id>.png plus the manifest.
///
/// Work is partitioned by identity across config.workers threads; every
/// random stream is keyed by (master_seed, identity_id, sample_id), so the
/// bytes on disk do not depend on worker count or scheduling. An INCOMPLETE
/// marker file exists in output_dir until the manifest has been written.
///
/// Throws ValidationError for an invalid config and IoError for filesystem
/// failures.
DatasetManifest generate_dataset(const GenConfig& config, const ProgressFn& progress = {});

} // namespace creasegen::pipeline
