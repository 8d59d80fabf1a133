#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace creasegen::pipeline {

inline constexpr const char* kManifestFormat = "creasegen-manifest/1";
inline constexpr const char* kManifestFileName = "manifest.jsonl";
inline constexpr const char* kRunInfoFileName = "run.json";
inline constexpr const char* kIncompleteMarker = "INCOMPLETE";

struct ManifestRecord {
    std::uint64_t identity_id = 0;
    std::uint64_t sample_id = 0;
    std::string label;
    /// Hex root seed of the identity (see geometry::identity_seed).
    std::string identity_seed;
    /// Relative to the manifest's directory, '/'-separated.
    std::string path;
    std::string checksum;

    friend bool operator==(const ManifestRecord&, const ManifestRecord&) = default;
};

/// Reproducibility record for a generated dataset.
///
/// Serialized as JSON lines: one header object, then one object per image
/// ordered by (identity_id, sample_id). The header holds only values that are
/// a function of the configuration, so equal configurations give equal files.
/// `created_at` is written to the separate run.json alongside.
struct DatasetManifest {
    std::string format = kManifestFormat;
    std::string tool_version;
    std::string hash_algorithm = "sha256";
    std::string config_hash;
    std::string config_text;
    std::uint64_t master_seed = 0;
    std::uint64_t num_identities = 0;
    std::uint64_t samples_per_identity = 0;
    std::vector<ManifestRecord> records;
    std::string created_at;
};

std::string serialize_manifest(const DatasetManifest& manifest);

/// Parses a manifest file. Throws IoError when unreadable and ParseError
/// (with line number) when malformed.
DatasetManifest read_manifest(const std::filesystem::path& path);

/// Writes manifest.jsonl and run.json into `dir`.
void write_manifest(const std::filesystem::path& dir, const DatasetManifest& manifest);

struct VerifyReport {
    std::size_t checked = 0;
    std::vector<std::string> missing;
    std::vector<std::string> corrupt;

    bool ok() const { return missing.empty() && corrupt.empty(); }
};

/// Recomputes every checksum relative to `root` (default: the manifest's directory).
VerifyReport verify_manifest(const DatasetManifest& manifest, const std::filesystem::path& root);
VerifyReport verify_manifest(const std::filesystem::path& manifest_path);

} // namespace creasegen::pipeline
