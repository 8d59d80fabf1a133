#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

#include "creasegen/image.hpp"
#include "creasegen/manifest.hpp"
#include "oracles.hpp"
#include "temp_dir.hpp"

namespace {

struct RunResult {
    int status = -1;
    std::string out;
};

/// Runs a shell command, capturing stdout; stderr is discarded.
RunResult run(const std::string& cmd) {
    RunResult r;
    FILE* pipe = ::popen((cmd + " 2>/dev/null").c_str(), "r");
    if (pipe == nullptr) {
        return r;
    }
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), n);
    }
    const int raw = ::pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string q(const std::filesystem::path& p) {
    return "'" + p.string() + "'";
}

const std::string kGen = CREASEGEN_BIN;
const std::string kEval = CREASEVAL_BIN;

void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream(p, std::ios::binary) << text;
}

constexpr const char* kSmallConfig =
    "num_identities = 2\nsamples_per_identity = 2\ncanvas_size = 48\nbackground.pool_size = 4\n";

constexpr const char* kEmbeddings = "#dim=2\n"
                                    "a1\tA\t1 0\n"
                                    "a2\tA\t0.9 0.1\n"
                                    "b1\tB\t0 1\n"
                                    "b2\tB\t0.1 0.9\n"
                                    "c1\tC\t-1 0\n"
                                    "c2\tC\t-0.9 -0.2\n";

} // namespace

// ---------------------------------------------------------------------------
// creasegen

TEST(CreasegenCli, GenerateThenVerify) {
    testutil::TempDir dir;
    write_text(dir / "c.cfg", kSmallConfig);
    const auto out = dir / "data";
    EXPECT_EQ(run(kGen + " generate --quiet --config " + q(dir / "c.cfg") + " --out " + q(out) + " --seed 3").status, 0);
    ASSERT_TRUE(std::filesystem::exists(out / "1/1.png"));
    const auto manifest = out / creasegen::pipeline::kManifestFileName;
    const RunResult ok = run(kGen + " verify --manifest " + q(manifest));
    EXPECT_EQ(ok.status, 0);
    EXPECT_NE(ok.out.find("4 checked, 0 missing, 0 corrupt"), std::string::npos) << ok.out;

    std::filesystem::remove(out / "0/1.png");
    const RunResult bad = run(kGen + " verify --manifest " + q(manifest));
    EXPECT_EQ(bad.status, 2);
    EXPECT_NE(bad.out.find("missing 0/1.png"), std::string::npos);
}

TEST(CreasegenCli, ValidationErrorExitsOne) {
    testutil::TempDir dir;
    write_text(dir / "c.cfg", "samples_per_identity = 0\n");
    EXPECT_EQ(run(kGen + " generate --quiet --config " + q(dir / "c.cfg") + " --out " + q(dir / "o")).status, 1);
}

TEST(CreasegenCli, ParseErrorExitsOne) {
    testutil::TempDir dir;
    write_text(dir / "c.cfg", "no_such_key = 3\n");
    EXPECT_EQ(run(kGen + " config --config " + q(dir / "c.cfg")).status, 1);
}

TEST(CreasegenCli, MissingConfigExitsTwo) {
    testutil::TempDir dir;
    EXPECT_EQ(run(kGen + " generate --quiet --config " + q(dir / "absent.cfg")).status, 2);
}

TEST(CreasegenCli, UnwritableOutputExitsTwo) {
    testutil::TempDir dir;
    write_text(dir / "c.cfg", kSmallConfig);
    write_text(dir / "blocker", "file");
    EXPECT_EQ(run(kGen + " generate --quiet --config " + q(dir / "c.cfg") + " --out " + q(dir / "blocker/sub")).status,
              2);
}

TEST(CreasegenCli, UnknownOptionExitsOne) {
    EXPECT_EQ(run(kGen + " generate --bogus").status, 1);
    EXPECT_EQ(run(kGen).status, 1);
}

TEST(CreasegenCli, MissingManifestExitsTwo) {
    testutil::TempDir dir;
    EXPECT_EQ(run(kGen + " verify --manifest " + q(dir / "none.jsonl")).status, 2);
}

TEST(CreasegenCli, PreviewMatchesGeneratedImage) {
    testutil::TempDir dir;
    write_text(dir / "c.cfg", kSmallConfig);
    ASSERT_EQ(run(kGen + " generate --quiet --config " + q(dir / "c.cfg") + " --out " + q(dir / "data")).status, 0);
    ASSERT_EQ(run(kGen + " preview --config " + q(dir / "c.cfg") + " --identity 1 --sample 0 --out " +
                  q(dir / "p.png"))
                  .status,
              0);
    EXPECT_EQ(creasegen::read_file(dir / "p.png"), creasegen::read_file(dir / "data/1/0.png"));
}

TEST(CreasegenCli, ConfigPrintsCanonicalFormAndHash) {
    testutil::TempDir dir;
    write_text(dir / "c.cfg", kSmallConfig);
    const RunResult r = run(kGen + " config --config " + q(dir / "c.cfg") + " --seed 9");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("master_seed = 9\n"), std::string::npos);
    EXPECT_NE(r.out.find("# hash "), std::string::npos);
}

TEST(CreasegenCli, RoiSingleImage) {
    testutil::TempDir dir;
    creasegen::write_file(dir / "img.png", creasegen::encode_png(oracle::checkerboard(320, 320, 8)));
    const std::string base = kGen + " roi --image " + q(dir / "img.png") + " --size 64 --out " + q(dir / "roi.png");
    EXPECT_EQ(run(base + " --ax 100 --ay 100 --bx 200 --by 100 --hand left").status, 0);
    const creasegen::Canvas roi = creasegen::read_image(dir / "roi.png");
    EXPECT_EQ(roi.width(), 64);
    EXPECT_EQ(roi.height(), 64);
    EXPECT_EQ(run(base + " --ax 100 --ay 100 --bx 103 --by 100 --hand left").status, 1);
    EXPECT_EQ(run(base + " --ax 900 --ay 900 --bx 990 --by 900 --hand left").status, 1);
    EXPECT_EQ(run(base + " --ax 100 --ay 100 --bx 200 --by 100 --hand middle").status, 1);
    EXPECT_EQ(run(kGen + " roi --image " + q(dir / "nope.png") +
                  " --ax 100 --ay 100 --bx 200 --by 100 --out " + q(dir / "x.png"))
                  .status,
              2);
}

TEST(CreasegenCli, RoiBatch) {
    testutil::TempDir dir;
    std::filesystem::create_directories(dir / "imgs");
    creasegen::write_file(dir / "imgs/a.png", creasegen::encode_png(oracle::checkerboard(200, 200, 5)));
    creasegen::write_file(dir / "imgs/b.png", creasegen::encode_png(oracle::checkerboard(200, 200, 9)));
    write_text(dir / "lm.csv", "path,ax,ay,bx,by,hand\nimgs/a.png,50,50,120,60,left\nimgs/b.png,150,50,80,60,right\n");
    EXPECT_EQ(run(kGen + " roi --size 32 --batch " + q(dir / "lm.csv") + " --out-dir " + q(dir / "out")).status, 0);
    EXPECT_TRUE(std::filesystem::exists(dir / "out/a.png"));
    EXPECT_TRUE(std::filesystem::exists(dir / "out/b.png"));

    write_text(dir / "bad.csv", "imgs/a.png,50,50,oops,60,left\n");
    EXPECT_EQ(run(kGen + " roi --batch " + q(dir / "bad.csv") + " --out-dir " + q(dir / "out2")).status, 1);
}

// ---------------------------------------------------------------------------
// creaseval

TEST(CreasevalCli, VerificationAndIdentification) {
    testutil::TempDir dir;
    write_text(dir / "e.tsv", kEmbeddings);
    const std::string emb = " --embeddings " + q(dir / "e.tsv");

    const RunResult tar = run(kEval + " tar" + emb + " --far 0.05,0.5");
    EXPECT_EQ(tar.status, 0);
    EXPECT_NE(tar.out.find("far\ttar\tthreshold\tachieved_far"), std::string::npos);
    EXPECT_NE(tar.out.find("under-resolved"), std::string::npos);
    const RunResult eer = run(kEval + " eer" + emb);
    EXPECT_EQ(eer.status, 0);
    EXPECT_NE(eer.out.find("eer\t0.000000"), std::string::npos) << eer.out;

    const RunResult top1 = run(kEval + " top1" + emb + " --seed 2");
    EXPECT_EQ(top1.status, 0);
    EXPECT_NE(top1.out.find("accuracy\t1.000000"), std::string::npos) << top1.out;

    EXPECT_EQ(run(kEval + " roc" + emb + " --points 4 --out " + q(dir / "roc.csv")).status, 0);
    std::ifstream roc(dir / "roc.csv");
    std::string header;
    std::getline(roc, header);
    EXPECT_EQ(header, "far,tar");

    EXPECT_EQ(run(kEval + " tar" + emb + " --pairs-pos 99").status, 1);
}

TEST(CreasevalCli, BadEmbeddingsExitOneMissingExitTwo) {
    testutil::TempDir dir;
    write_text(dir / "bad.tsv", "#dim=2\na\tA\t1 nan\n");
    EXPECT_EQ(run(kEval + " eer --embeddings " + q(dir / "bad.tsv")).status, 1);
    EXPECT_EQ(run(kEval + " eer --embeddings " + q(dir / "missing.tsv")).status, 2);
    write_text(dir / "single.tsv", "#dim=1\na\tA\t1\nb\tA\t2\nc\tB\t1\n");
    EXPECT_EQ(run(kEval + " top1 --embeddings " + q(dir / "single.tsv")).status, 1);
}

TEST(CreasevalCli, SplitAndKfold) {
    testutil::TempDir dir;
    std::string ids = "# identities\n";
    for (int i = 0; i < 8; ++i) {
        ids += "id" + std::to_string(i) + "\n";
    }
    write_text(dir / "ids.txt", ids);
    const RunResult split = run(kEval + " split --ids " + q(dir / "ids.txt") + " --ratio 1:3 --seed 4");
    EXPECT_EQ(split.status, 0);
    std::size_t train = 0;
    std::size_t test = 0;
    for (std::size_t pos = 0; (pos = split.out.find("train\t", pos)) != std::string::npos; ++pos) {
        ++train;
    }
    for (std::size_t pos = 0; (pos = split.out.find("test\t", pos)) != std::string::npos; ++pos) {
        ++test;
    }
    EXPECT_EQ(train, 2u);
    EXPECT_EQ(test, 6u);

    EXPECT_EQ(run(kEval + " split --ids " + q(dir / "ids.txt") + " --ratio 0:1").status, 1);
    EXPECT_EQ(run(kEval + " kfold --ids " + q(dir / "ids.txt") + " --k 3").status, 0);
    EXPECT_EQ(run(kEval + " kfold --ids " + q(dir / "ids.txt") + " --k 9").status, 1);
    EXPECT_EQ(run(kEval + " kfold --ids " + q(dir / "none.txt") + " --k 2").status, 2);
}
