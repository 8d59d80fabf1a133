// creasegen: synthetic crease dataset generation, verification, preview and
// ROI extraction.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "creasegen/errors.hpp"
#include "creasegen/pipeline.hpp"
#include "creasegen/roi.hpp"

namespace cg = creasegen;
namespace pl = creasegen::pipeline;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitIo = 2;

struct ConfigArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
};

pl::GenConfig load(const ConfigArgs& args) {
    pl::GenConfig config = args.config_path.empty() ? pl::GenConfig{} : pl::load_config(args.config_path);
    if (args.seed) {
        config.master_seed = *args.seed;
    }
    return config;
}

int run_generate(const ConfigArgs& cfg_args, std::optional<unsigned> workers, const std::string& out, bool quiet) {
    pl::GenConfig config = load(cfg_args);
    if (workers) {
        config.workers = *workers;
    }
    if (!out.empty()) {
        config.output_dir = out;
    }
    const std::uint64_t step = std::max<std::uint64_t>(1, config.num_identities / 20);
    pl::ProgressFn progress;
    if (!quiet) {
        progress = [step](std::uint64_t done, std::uint64_t total) {
            if (done % step == 0 || done == total) {
                std::cerr << "identities " << done << "/" << total << "\n";
            }
        };
    }
    const pl::DatasetManifest manifest = pl::generate_dataset(config, progress);
    std::cout << "wrote " << manifest.records.size() << " images to " << config.output_dir.string()
              << " (config " << manifest.config_hash.substr(0, 16) << ")\n";
    return kExitOk;
}

int run_verify(const std::string& manifest_path) {
    const pl::VerifyReport report = pl::verify_manifest(manifest_path);
    for (const std::string& p : report.missing) {
        std::cout << "missing " << p << "\n";
    }
    for (const std::string& p : report.corrupt) {
        std::cout << "corrupt " << p << "\n";
    }
    std::cout << report.checked << " checked, " << report.missing.size() << " missing, " << report.corrupt.size()
              << " corrupt\n";
    return report.ok() ? kExitOk : kExitIo;
}

int run_preview(const ConfigArgs& cfg_args, std::uint64_t identity, std::uint64_t sample, const std::string& out) {
    const pl::GenConfig config = load(cfg_args);
    if (auto violations = pl::validate_config(config); !violations.empty()) {
        throw pl::ValidationError(std::move(violations));
    }
    const auto pool = pl::make_background_pool(config);
    const cg::Canvas image = pl::render_one(config, pool, identity, sample);
    cg::write_file(out, cg::encode_png(image, config.png_compression));
    return kExitOk;
}

cg::geometry::Hand parse_hand(std::string text) {
    std::transform(text.begin(), text.end(), text.begin(), [](unsigned char c) { return std::tolower(c); });
    if (text == "left") {
        return cg::geometry::Hand::Left;
    }
    if (text == "right") {
        return cg::geometry::Hand::Right;
    }
    throw cg::DomainError("hand must be 'left' or 'right', got '" + text + "'");
}

struct RoiArgs {
    std::string image;
    double ax = 0, ay = 0, bx = 0, by = 0;
    std::string hand = "left";
    std::string out;
    std::string batch;
    std::string out_dir;
    int size = 224;
    cg::roi::RoiGeometry geometry;
};

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        const auto b = field.find_first_not_of(" \t\r");
        const auto e = field.find_last_not_of(" \t\r");
        fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    return fields;
}

double parse_coord(const std::string& text, std::size_t line) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) {
        throw cg::ParseError("line " + std::to_string(line) + ": invalid coordinate '" + text + "'", line);
    }
    return v;
}

int run_roi(const RoiArgs& a) {
    if (a.batch.empty()) {
        const cg::roi::LandmarkPair lm{{a.ax, a.ay}, {a.bx, a.by}, parse_hand(a.hand)};
        const cg::Canvas src = cg::read_image(a.image);
        cg::write_file(a.out, cg::encode_png(cg::roi::extract_roi(src, lm, a.size, a.geometry)));
        return kExitOk;
    }

    std::ifstream in(a.batch);
    if (!in) {
        throw cg::IoError(a.batch + ": cannot open batch file");
    }
    const std::filesystem::path base = std::filesystem::path(a.batch).parent_path();
    const std::filesystem::path out_dir = a.out_dir.empty() ? std::filesystem::path(".") : std::filesystem::path(a.out_dir);
    std::filesystem::create_directories(out_dir);
    std::set<std::string> written;
    std::string line;
    std::size_t line_no = 0;
    std::size_t count = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto fields = split_csv(line);
        if (fields.empty() || (fields.size() == 1 && fields[0].empty())) {
            continue;
        }
        if (line_no == 1 && fields[0] == "path") {
            continue;
        }
        if (fields.size() != 6) {
            throw cg::ParseError(a.batch + ":" + std::to_string(line_no) + ": expected path,ax,ay,bx,by,hand",
                                 line_no);
        }
        std::filesystem::path src_path = fields[0];
        if (src_path.is_relative()) {
            src_path = base / src_path;
        }
        const cg::roi::LandmarkPair lm{{parse_coord(fields[1], line_no), parse_coord(fields[2], line_no)},
                                       {parse_coord(fields[3], line_no), parse_coord(fields[4], line_no)},
                                       parse_hand(fields[5])};
        const std::string name = src_path.stem().string() + ".png";
        if (!written.insert(name).second) {
            throw cg::ParseError(a.batch + ":" + std::to_string(line_no) + ": output name '" + name +
                                     "' already used by an earlier row",
                                 line_no);
        }
        const cg::Canvas src = cg::read_image(src_path);
        cg::write_file(out_dir / name, cg::encode_png(cg::roi::extract_roi(src, lm, a.size, a.geometry)));
        ++count;
    }
    std::cout << "wrote " << count << " ROIs to " << out_dir.string() << "\n";
    return kExitOk;
}

int run_config(const ConfigArgs& cfg_args) {
    const pl::GenConfig config = load(cfg_args);
    std::cout << pl::canonical_config(config);
    std::cout << "# hash " << pl::config_hash(config) << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Synthetic palm-crease dataset generator"};
    app.require_subcommand(1);

    ConfigArgs cfg_args;
    auto add_config_opts = [&](CLI::App* sub) {
        sub->add_option("--config", cfg_args.config_path, "Key-value config file");
        sub->add_option("--seed", cfg_args.seed, "Override master_seed");
    };

    std::optional<unsigned> workers;
    std::string out;
    bool quiet = false;
    auto* gen = app.add_subcommand("generate", "Render a dataset and its manifest");
    add_config_opts(gen);
    gen->add_option("--workers", workers, "Worker threads (0 = all cores)");
    gen->add_option("--out", out, "Output directory (overrides output_dir)");
    gen->add_flag("--quiet", quiet, "No progress output");

    std::string manifest_path;
    auto* verify = app.add_subcommand("verify", "Recompute every checksum listed in a manifest");
    verify->add_option("--manifest", manifest_path, "manifest.jsonl")->required();

    std::uint64_t identity = 0;
    std::uint64_t sample = 0;
    std::string preview_out;
    auto* preview = app.add_subcommand("preview", "Render one sample to a PNG");
    add_config_opts(preview);
    preview->add_option("--identity", identity, "Identity id")->required();
    preview->add_option("--sample", sample, "Sample id")->required();
    preview->add_option("--out", preview_out, "Output PNG")->required();

    RoiArgs roi_args;
    auto* roi = app.add_subcommand("roi", "Crop the palm ROI from landmark pairs");
    roi->add_option("--image", roi_args.image, "Source image (PNG or JPEG)");
    roi->add_option("--ax", roi_args.ax, "Landmark A x");
    roi->add_option("--ay", roi_args.ay, "Landmark A y");
    roi->add_option("--bx", roi_args.bx, "Landmark B x");
    roi->add_option("--by", roi_args.by, "Landmark B y");
    roi->add_option("--hand", roi_args.hand, "left or right");
    roi->add_option("--out", roi_args.out, "Output PNG");
    roi->add_option("--batch", roi_args.batch, "CSV of path,ax,ay,bx,by,hand");
    roi->add_option("--out-dir", roi_args.out_dir, "Output directory for --batch");
    roi->add_option("--size", roi_args.size, "Output side in pixels")->check(CLI::PositiveNumber);
    roi->add_option("--x-offset", roi_args.geometry.x_offset, "Square left edge in |AB| units");
    roi->add_option("--y-offset", roi_args.geometry.y_offset, "Square top edge in |AB| units");
    roi->add_option("--side", roi_args.geometry.side, "Square side in |AB| units");

    auto* config = app.add_subcommand("config", "Print the canonical config and its hash");
    add_config_opts(config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (*gen) {
            return run_generate(cfg_args, workers, out, quiet);
        }
        if (*verify) {
            return run_verify(manifest_path);
        }
        if (*preview) {
            return run_preview(cfg_args, identity, sample, preview_out);
        }
        if (*roi) {
            if (roi_args.batch.empty() && (roi_args.image.empty() || roi_args.out.empty())) {
                std::cerr << "roi: --image and --out are required unless --batch is given\n";
                return kExitInvalid;
            }
            return run_roi(roi_args);
        }
        if (*config) {
            return run_config(cfg_args);
        }
    } catch (const pl::ValidationError& e) {
        std::cerr << "invalid configuration:\n";
        for (const std::string& v : e.violations()) {
            std::cerr << "  - " << v << "\n";
        }
        return kExitInvalid;
    } catch (const cg::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitOk;
}
