#include "creasegen/pipeline.hpp"
#include "creasegen/sha256.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <exception>
#include <mutex>
#include <thread>

namespace creasegen::pipeline {

namespace {

constexpr std::uint64_t kBackgroundStream = 0xB6;

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError(dir.string() + ": " + ec.message());
    }
}

} // namespace

render::BackgroundPool make_background_pool(const GenConfig& config) {
    switch (config.background_mode) {
    case BackgroundMode::None:
        return render::BackgroundPool::none();
    case BackgroundMode::Procedural:
        return render::BackgroundPool::procedural(config.procedural_pool_size,
                                                  derive_seed(config.master_seed, {kBackgroundStream}));
    case BackgroundMode::Directory:
        return render::BackgroundPool::from_directory(config.background_dir, config.canvas_size, config.canvas_size);
    }
    throw ConfigError("unknown background mode");
}

geometry::AppearanceConfig effective_appearance(const GenConfig& config, const render::BackgroundPool& pool) {
    geometry::AppearanceConfig appearance = config.appearance;
    appearance.background_pool_size = pool.size();
    return appearance;
}

Canvas render_one(const GenConfig& config, const render::BackgroundPool& pool, std::uint64_t identity_id,
                  std::uint64_t sample_id) {
    const auto identity = geometry::sample_identity(config.geometry, config.master_seed, identity_id);
    const auto params =
        geometry::perturb_identity(identity, effective_appearance(config, pool), config.master_seed, sample_id);
    return render::render_sample(params, pool, {config.canvas_size, config.flatten_tolerance});
}

std::string sample_path(std::uint64_t identity_id, std::uint64_t sample_id) {
    return std::to_string(identity_id) + "/" + std::to_string(sample_id) + ".png";
}

DatasetManifest generate_dataset(const GenConfig& config, const ProgressFn& progress) {
    if (auto violations = validate_config(config); !violations.empty()) {
        throw ValidationError(std::move(violations));
    }

    const std::filesystem::path root = config.output_dir;
    ensure_directory(root);
    const auto marker = root / kIncompleteMarker;
    {
        static constexpr std::string_view kNote = "generation in progress or aborted\n";
        write_file(marker, std::span(reinterpret_cast<const std::uint8_t*>(kNote.data()), kNote.size()));
    }

    const render::BackgroundPool pool = make_background_pool(config);
    const geometry::AppearanceConfig appearance = effective_appearance(config, pool);
    const render::RenderOptions options{config.canvas_size, config.flatten_tolerance};

    const std::uint64_t n_ids = config.num_identities;
    const std::uint64_t n_samples = config.samples_per_identity;

    DatasetManifest manifest;
    manifest.tool_version = kToolVersion;
    manifest.config_hash = config_hash(config);
    manifest.config_text = canonical_config(config);
    manifest.master_seed = config.master_seed;
    manifest.num_identities = n_ids;
    manifest.samples_per_identity = n_samples;
    manifest.records.resize(n_ids * n_samples);

    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> done{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::mutex progress_mutex;

    auto work = [&] {
        try {
            for (;;) {
                if (failed.load(std::memory_order_relaxed)) {
                    return;
                }
                const std::uint64_t id = next.fetch_add(1);
                if (id >= n_ids) {
                    return;
                }
                const auto identity = geometry::sample_identity(config.geometry, config.master_seed, id);
                const std::string seed_hex = hex64(geometry::identity_seed(config.master_seed, id));
                ensure_directory(root / std::to_string(id));
                for (std::uint64_t s = 0; s < n_samples; ++s) {
                    const auto params = geometry::perturb_identity(identity, appearance, config.master_seed, s);
                    const Canvas image = render::render_sample(params, pool, options);
                    const auto png = encode_png(image, config.png_compression);
                    ManifestRecord& rec = manifest.records[id * n_samples + s];
                    rec.identity_id = id;
                    rec.sample_id = s;
                    rec.label = std::to_string(id);
                    rec.identity_seed = seed_hex;
                    rec.path = sample_path(id, s);
                    rec.checksum = sha256_hex(png);
                    write_file(root / rec.path, png);
                }
                const std::uint64_t finished = done.fetch_add(1) + 1;
                if (progress) {
                    std::lock_guard lock(progress_mutex);
                    progress(finished, n_ids);
                }
            }
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) {
                error = std::current_exception();
            }
            failed = true;
        }
    };

    unsigned workers = config.workers == 0 ? std::thread::hardware_concurrency() : config.workers;
    workers = std::max(1u, workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            threads.emplace_back(work);
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }

    manifest.created_at = utc_timestamp();
    write_manifest(root, manifest);
    std::error_code ec;
    std::filesystem::remove(marker, ec);
    return manifest;
}

} // namespace creasegen::pipeline
