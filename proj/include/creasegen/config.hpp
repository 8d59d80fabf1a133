#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "creasegen/errors.hpp"
#include "creasegen/geometry.hpp"

namespace creasegen::pipeline {

enum class BackgroundMode { Procedural, Directory, None };

/// Dataset generation settings.
///
/// The text form is one `key = value` per line; `#` starts a comment. Every
/// key is optional and defaults to the value below. See README.md for the
/// key list and the canonical serialization the config hash is taken over.
struct GenConfig {
    std::uint64_t num_identities = 4000;
    std::uint64_t samples_per_identity = 100;
    int canvas_size = 224;
    std::uint64_t master_seed = 0;

    geometry::GeometryConfig geometry;
    geometry::AppearanceConfig appearance;

    BackgroundMode background_mode = BackgroundMode::Procedural;
    std::string background_dir;
    std::size_t procedural_pool_size = 1024;

    double flatten_tolerance = 1e-3;
    int png_compression = 6;

    // Runtime settings: excluded from the canonical form and the hash.
    std::filesystem::path output_dir = "synthetic";
    unsigned workers = 0; ///< 0 selects std::thread::hardware_concurrency()
};

/// Raised by generate_dataset when validate_config reports violations.
class ValidationError : public ConfigError {
public:
    explicit ValidationError(std::vector<std::string> violations);

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Parses the key-value form. Unknown keys, malformed lines and unparsable
/// values throw ParseError with the 1-based line number.
GenConfig parse_config(std::string_view text);
GenConfig load_config(const std::filesystem::path& path);

/// Every key in fixed order with shortest round-trip number formatting.
/// Runtime keys (output_dir, workers) are included only on request.
std::string canonical_config(const GenConfig& config, bool include_runtime = false);

/// SHA-256 (hex) of canonical_config(config).
std::string config_hash(const GenConfig& config);

/// One entry per violated constraint, each naming the field. Empty iff valid.
std::vector<std::string> validate_config(const GenConfig& config);

} // namespace creasegen::pipeline
