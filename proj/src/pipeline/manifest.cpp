#include "creasegen/errors.hpp"
#include "creasegen/image.hpp"
#include "creasegen/manifest.hpp"
#include "creasegen/sha256.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace creasegen::pipeline {

using nlohmann::json;

std::string serialize_manifest(const DatasetManifest& m) {
    std::string out;
    const json header = {
        {"format", m.format},
        {"tool_version", m.tool_version},
        {"hash_algorithm", m.hash_algorithm},
        {"config_hash", m.config_hash},
        {"config", m.config_text},
        {"master_seed", m.master_seed},
        {"num_identities", m.num_identities},
        {"samples_per_identity", m.samples_per_identity},
        {"records", m.records.size()},
    };
    out += header.dump();
    out += '\n';
    for (const ManifestRecord& r : m.records) {
        const json rec = {
            {"identity_id", r.identity_id},
            {"sample_id", r.sample_id},
            {"label", r.label},
            {"identity_seed", r.identity_seed},
            {"path", r.path},
            {"checksum", r.checksum},
        };
        out += rec.dump();
        out += '\n';
    }
    return out;
}

DatasetManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(path.string() + ": cannot open manifest");
    }
    DatasetManifest m;
    std::string line;
    std::size_t line_no = 0;
    std::size_t expected = 0;
    try {
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) {
                continue;
            }
            const json j = json::parse(line);
            if (line_no == 1) {
                m.format = j.at("format").get<std::string>();
                if (m.format != kManifestFormat) {
                    throw ParseError(path.string() + ": unsupported manifest format '" + m.format + "'", line_no);
                }
                m.tool_version = j.at("tool_version").get<std::string>();
                m.hash_algorithm = j.at("hash_algorithm").get<std::string>();
                m.config_hash = j.at("config_hash").get<std::string>();
                m.config_text = j.at("config").get<std::string>();
                m.master_seed = j.at("master_seed").get<std::uint64_t>();
                m.num_identities = j.at("num_identities").get<std::uint64_t>();
                m.samples_per_identity = j.at("samples_per_identity").get<std::uint64_t>();
                expected = j.at("records").get<std::size_t>();
                continue;
            }
            ManifestRecord r;
            r.identity_id = j.at("identity_id").get<std::uint64_t>();
            r.sample_id = j.at("sample_id").get<std::uint64_t>();
            r.label = j.at("label").get<std::string>();
            r.identity_seed = j.at("identity_seed").get<std::string>();
            r.path = j.at("path").get<std::string>();
            r.checksum = j.at("checksum").get<std::string>();
            m.records.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " + e.what(), line_no);
    }
    if (line_no == 0) {
        throw ParseError(path.string() + ": empty manifest", 0);
    }
    if (m.records.size() != expected) {
        throw ParseError(path.string() + ": header declares " + std::to_string(expected) + " records, found " +
                             std::to_string(m.records.size()),
                         line_no);
    }

    std::ifstream run(path.parent_path() / kRunInfoFileName);
    if (run) {
        try {
            const json info = json::parse(run);
            m.created_at = info.value("created_at", "");
        } catch (const json::exception&) {
            // run.json is informational only.
        }
    }
    return m;
}

void write_manifest(const std::filesystem::path& dir, const DatasetManifest& manifest) {
    const std::string text = serialize_manifest(manifest);
    write_file(dir / kManifestFileName,
               std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
    const json info = {{"created_at", manifest.created_at}, {"tool_version", manifest.tool_version}};
    const std::string info_text = info.dump(2) + "\n";
    write_file(dir / kRunInfoFileName,
               std::span(reinterpret_cast<const std::uint8_t*>(info_text.data()), info_text.size()));
}

VerifyReport verify_manifest(const DatasetManifest& manifest, const std::filesystem::path& root) {
    VerifyReport report;
    for (const ManifestRecord& r : manifest.records) {
        ++report.checked;
        const auto file = root / r.path;
        std::error_code ec;
        if (!std::filesystem::is_regular_file(file, ec)) {
            report.missing.push_back(r.path);
            continue;
        }
        std::vector<std::uint8_t> bytes;
        try {
            bytes = read_file(file);
        } catch (const IoError&) {
            report.missing.push_back(r.path);
            continue;
        }
        if (sha256_hex(bytes) != r.checksum) {
            report.corrupt.push_back(r.path);
        }
    }
    return report;
}

VerifyReport verify_manifest(const std::filesystem::path& manifest_path) {
    const DatasetManifest manifest = read_manifest(manifest_path);
    return verify_manifest(manifest, manifest_path.parent_path());
}

} // namespace creasegen::pipeline
