#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>

#include "creasegen/errors.hpp"
#include "creasegen/pipeline.hpp"
#include "creasegen/sha256.hpp"
#include "temp_dir.hpp"

using namespace creasegen;
using namespace creasegen::pipeline;

namespace {

GenConfig small_config(const std::filesystem::path& out, std::uint64_t n = 2, std::uint64_t s = 3) {
    GenConfig c;
    c.num_identities = n;
    c.samples_per_identity = s;
    c.canvas_size = 64;
    c.master_seed = 11;
    c.procedural_pool_size = 8;
    c.output_dir = out;
    c.workers = 1;
    return c;
}

bool contains(const std::vector<std::string>& v, const std::string& needle) {
    return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

// ---------------------------------------------------------------------------
// SHA-256

TEST(Sha256, KnownVectors) {
    EXPECT_EQ(sha256_hex(std::string_view("")), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    EXPECT_EQ(sha256_hex(std::string_view("abc")), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

// ---------------------------------------------------------------------------
// Config

TEST(ValidateConfig, DefaultIsValid) {
    EXPECT_TRUE(validate_config(GenConfig{}).empty());
}

TEST(ValidateConfig, ZeroSamplesPerIdentity) {
    GenConfig c;
    c.samples_per_identity = 0;
    const auto v = validate_config(c);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0], "samples_per_identity ≥ 1");
}

TEST(ValidateConfig, PrincipalBoundsOrdered) {
    GenConfig c;
    c.geometry.principal_min = 6;
    c.geometry.principal_max = 5;
    EXPECT_TRUE(contains(validate_config(c), "m bounds ordered"));
}

TEST(ValidateConfig, ListsEveryViolation) {
    GenConfig c;
    c.num_identities = 0;
    c.samples_per_identity = 0;
    c.geometry.wrinkle_min = 9;
    c.geometry.wrinkle_max = 2;
    c.appearance.blur_probability = 1.5;
    c.png_compression = 12;
    const auto v = validate_config(c);
    EXPECT_EQ(v.size(), 5u);
    EXPECT_TRUE(contains(v, "num_identities"));
    EXPECT_TRUE(contains(v, "n bounds ordered"));
    EXPECT_TRUE(contains(v, "blur.probability"));
    EXPECT_TRUE(contains(v, "png.compression"));
}

TEST(ValidateConfig, DirectoryModeNeedsDir) {
    GenConfig c;
    c.background_mode = BackgroundMode::Directory;
    EXPECT_TRUE(contains(validate_config(c), "background.dir"));
}

TEST(ParseConfig, ReadsKeysCommentsAndBlankLines) {
    const GenConfig c = parse_config("# comment\n\nnum_identities = 7\n  samples_per_identity=2  # trailing\n"
                                     "wrinkles.enabled = false\nhand = right\nbackground.mode = none\n");
    EXPECT_EQ(c.num_identities, 7u);
    EXPECT_EQ(c.samples_per_identity, 2u);
    EXPECT_FALSE(c.geometry.wrinkles_enabled);
    EXPECT_EQ(c.geometry.hand, geometry::HandPolicy::Right);
    EXPECT_EQ(c.background_mode, BackgroundMode::None);
}

TEST(ParseConfig, ErrorsCarryLineNumbers) {
    auto line_of = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    EXPECT_EQ(line_of("num_identities = 3\nno equals sign\n"), 2u);
    EXPECT_EQ(line_of("\n\nbogus.key = 1\n"), 3u);
    EXPECT_EQ(line_of("canvas_size = big\n"), 1u);
    EXPECT_EQ(line_of("hand = sideways\n"), 1u);
    EXPECT_EQ(line_of("wrinkles.enabled = maybe\n"), 1u);
}

TEST(CanonicalConfig, RoundTripsAndHashIsStable) {
    GenConfig c;
    c.num_identities = 12;
    c.appearance.noise.std_principal = 0.1 + 0.2; // not exactly representable in short decimal
    c.geometry.wrinkle_control = geometry::WrinkleControl::Uniform;
    const std::string text = canonical_config(c);
    const GenConfig back = parse_config(text);
    EXPECT_EQ(canonical_config(back), text);
    EXPECT_EQ(back.appearance.noise.std_principal, c.appearance.noise.std_principal);
    EXPECT_EQ(config_hash(back), config_hash(c));
    EXPECT_EQ(config_hash(c).size(), 64u);
}

TEST(CanonicalConfig, RuntimeKeysExcludedFromHash) {
    GenConfig a;
    GenConfig b;
    b.output_dir = "/elsewhere";
    b.workers = 8;
    EXPECT_EQ(config_hash(a), config_hash(b));
    EXPECT_EQ(canonical_config(a).find("workers"), std::string::npos);
    EXPECT_NE(canonical_config(b, true).find("workers = 8"), std::string::npos);
    b.master_seed = 1;
    EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(LoadConfig, MissingFileIsIoError) {
    testutil::TempDir dir;
    EXPECT_THROW(load_config(dir / "nope.cfg"), IoError);
}

// ---------------------------------------------------------------------------
// Generation and manifest

TEST(SamplePath, Layout) {
    EXPECT_EQ(sample_path(12, 3), "12/3.png");
}

TEST(GenerateDataset, WritesEveryImageAndRecord) {
    testutil::TempDir dir;
    const GenConfig cfg = small_config(dir.path());
    const DatasetManifest m = generate_dataset(cfg);
    ASSERT_EQ(m.records.size(), 6u);
    for (std::uint64_t id = 0; id < 2; ++id) {
        for (std::uint64_t s = 0; s < 3; ++s) {
            const ManifestRecord& r = m.records[id * 3 + s];
            EXPECT_EQ(r.identity_id, id);
            EXPECT_EQ(r.sample_id, s);
            EXPECT_EQ(r.path, sample_path(id, s));
            EXPECT_EQ(r.label, std::to_string(id));
            ASSERT_TRUE(std::filesystem::exists(dir.path() / r.path));
            EXPECT_EQ(sha256_hex(read_file(dir.path() / r.path)), r.checksum);
        }
    }
    EXPECT_TRUE(std::filesystem::exists(dir / kManifestFileName));
    EXPECT_TRUE(std::filesystem::exists(dir / kRunInfoFileName));
    EXPECT_FALSE(std::filesystem::exists(dir / kIncompleteMarker));
    EXPECT_EQ(m.config_hash, config_hash(cfg));
    EXPECT_EQ(m.tool_version, kToolVersion);
}

TEST(GenerateDataset, ImagesMatchRenderOne) {
    testutil::TempDir dir;
    const GenConfig cfg = small_config(dir.path(), 1, 2);
    generate_dataset(cfg);
    const auto pool = make_background_pool(cfg);
    EXPECT_EQ(read_image(dir / sample_path(0, 1)), render_one(cfg, pool, 0, 1));
}

TEST(GenerateDataset, WorkerCountDoesNotChangeBytes) {
    testutil::TempDir a;
    testutil::TempDir b;
    GenConfig ca = small_config(a.path(), 5, 2);
    GenConfig cb = small_config(b.path(), 5, 2);
    ca.workers = 1;
    cb.workers = 8;
    generate_dataset(ca);
    generate_dataset(cb);
    EXPECT_EQ(slurp(a / kManifestFileName), slurp(b / kManifestFileName));
}

TEST(GenerateDataset, ProgressReportsEveryIdentity) {
    testutil::TempDir dir;
    std::vector<std::uint64_t> done;
    generate_dataset(small_config(dir.path(), 3, 1), [&](std::uint64_t d, std::uint64_t total) {
        EXPECT_EQ(total, 3u);
        done.push_back(d);
    });
    EXPECT_EQ(done, (std::vector<std::uint64_t>{1, 2, 3}));
}

TEST(GenerateDataset, InvalidConfigListsAllViolations) {
    testutil::TempDir dir;
    GenConfig cfg = small_config(dir.path());
    cfg.num_identities = 0;
    cfg.samples_per_identity = 0;
    try {
        generate_dataset(cfg);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.violations().size(), 2u);
    }
    EXPECT_FALSE(std::filesystem::exists(dir / kIncompleteMarker));
}

TEST(GenerateDataset, WriteFailureLeavesIncompleteMarker) {
    testutil::TempDir dir;
    std::ofstream(dir / "1") << "a file where identity 1's directory should go";
    EXPECT_THROW(generate_dataset(small_config(dir.path())), IoError);
    EXPECT_TRUE(std::filesystem::exists(dir / kIncompleteMarker));
    EXPECT_FALSE(std::filesystem::exists(dir / kManifestFileName));
}

TEST(Manifest, ReadBackEqualsWritten) {
    testutil::TempDir dir;
    const DatasetManifest m = generate_dataset(small_config(dir.path()));
    const DatasetManifest back = read_manifest(dir / kManifestFileName);
    EXPECT_EQ(back.records, m.records);
    EXPECT_EQ(back.config_hash, m.config_hash);
    EXPECT_EQ(back.config_text, m.config_text);
    EXPECT_EQ(back.master_seed, 11u);
    EXPECT_EQ(back.num_identities, 2u);
    EXPECT_EQ(back.samples_per_identity, 3u);
    EXPECT_EQ(serialize_manifest(back), serialize_manifest(m));
}

TEST(VerifyManifest, UntouchedDatasetIsClean) {
    testutil::TempDir dir;
    generate_dataset(small_config(dir.path()));
    const VerifyReport r = verify_manifest(dir / kManifestFileName);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.checked, 6u);
}

TEST(VerifyManifest, DeletedFileIsNamed) {
    testutil::TempDir dir;
    generate_dataset(small_config(dir.path()));
    std::filesystem::remove(dir / "1/2.png");
    const VerifyReport r = verify_manifest(dir / kManifestFileName);
    EXPECT_EQ(r.missing, (std::vector<std::string>{"1/2.png"}));
    EXPECT_TRUE(r.corrupt.empty());
}

TEST(VerifyManifest, ByteFlipIsChecksumMismatch) {
    testutil::TempDir dir;
    generate_dataset(small_config(dir.path()));
    auto bytes = read_file(dir / "0/1.png");
    bytes[bytes.size() / 2] ^= 0x01;
    write_file(dir / "0/1.png", bytes);
    const VerifyReport r = verify_manifest(dir / kManifestFileName);
    EXPECT_EQ(r.corrupt, (std::vector<std::string>{"0/1.png"}));
    EXPECT_TRUE(r.missing.empty());
}

TEST(VerifyManifest, UnreadableManifestIsIoError) {
    testutil::TempDir dir;
    EXPECT_THROW(verify_manifest(dir / kManifestFileName), IoError);
}

TEST(ReadManifest, MalformedLineIsParseErrorWithLine) {
    testutil::TempDir dir;
    generate_dataset(small_config(dir.path()));
    std::string text = slurp(dir / kManifestFileName);
    const auto second_newline = text.find('\n', text.find('\n') + 1);
    text.insert(second_newline + 1, "{not json\n");
    std::ofstream(dir / "bad.jsonl", std::ios::binary) << text;
    try {
        read_manifest(dir / "bad.jsonl");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(ReadManifest, EmptyFileIsParseError) {
    testutil::TempDir dir;
    std::ofstream(dir / "empty.jsonl") << "";
    EXPECT_THROW(read_manifest(dir / "empty.jsonl"), ParseError);
}

TEST(Ablation, TogglesChangeOutput) {
    testutil::TempDir base_dir;
    const GenConfig base = small_config(base_dir.path(), 1, 1);
    const auto pool = make_background_pool(base);
    const Canvas reference = render_one(base, pool, 0, 0);

    GenConfig no_p = base;
    no_p.geometry.principals_enabled = false;
    GenConfig no_w = base;
    no_w.geometry.wrinkles_enabled = false;
    GenConfig no_b = base;
    no_b.background_mode = BackgroundMode::None;
    EXPECT_TRUE(validate_config(no_p).empty());
    EXPECT_NE(render_one(no_p, make_background_pool(no_p), 0, 0), reference);
    EXPECT_NE(render_one(no_w, make_background_pool(no_w), 0, 0), reference);
    EXPECT_NE(render_one(no_b, make_background_pool(no_b), 0, 0), reference);
}
