// creaseval: verification and identification metrics over embedding files.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "creasegen/errors.hpp"
#include "creasegen/metrics.hpp"

namespace cg = creasegen;
namespace mx = creasegen::metrics;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitIo = 2;

struct PairArgs {
    std::string embeddings;
    std::optional<std::uint64_t> n_pos;
    std::optional<std::uint64_t> n_neg;
    std::uint64_t seed = 0;
};

void add_pair_opts(CLI::App* sub, PairArgs& args) {
    sub->add_option("--embeddings", args.embeddings, "Embedding file")->required();
    sub->add_option("--pairs-pos", args.n_pos, "Sampled genuine pairs (default: all)");
    sub->add_option("--pairs-neg", args.n_neg, "Sampled impostor pairs (default: all)");
    sub->add_option("--seed", args.seed, "Pair sampling seed");
}

mx::ScoreSet scores_for(const PairArgs& args) {
    const mx::EmbeddingTable table = mx::load_embeddings(args.embeddings);
    if (!args.n_pos && !args.n_neg) {
        return mx::all_pairs(table).scores;
    }
    const mx::PairCapacity cap = mx::pair_capacity(table);
    return mx::build_pairs(table, args.n_pos.value_or(cap.positive), args.n_neg.value_or(cap.negative), args.seed)
        .scores;
}

std::vector<double> parse_fars(const std::string& text) {
    std::vector<double> fars;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) {
            throw cg::DomainError("invalid FAR value '" + item + "'");
        }
        fars.push_back(v);
    }
    return fars;
}

struct IdList {
    std::vector<std::string> ids;
    std::vector<std::pair<std::string, std::string>> grouped;
};

/// One identity per line, optionally "group<TAB>identity".
IdList read_ids(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw cg::IoError(path + ": cannot open identity list");
    }
    IdList list;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            list.ids.push_back(line);
            list.grouped.emplace_back("", line);
        } else {
            list.ids.push_back(line.substr(tab + 1));
            list.grouped.emplace_back(line.substr(0, tab), line.substr(tab + 1));
        }
    }
    return list;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification and identification metrics for embedding files"};
    app.require_subcommand(1);

    PairArgs tar_args;
    std::string fars_text = "1e-1,1e-2,1e-3,1e-4";
    auto* tar = app.add_subcommand("tar", "TAR at target FARs");
    add_pair_opts(tar, tar_args);
    tar->add_option("--far", fars_text, "Comma-separated target FARs");

    PairArgs eer_args;
    auto* eer = app.add_subcommand("eer", "Equal error rate");
    add_pair_opts(eer, eer_args);

    std::string top1_embeddings;
    std::uint64_t top1_seed = 0;
    auto* top1 = app.add_subcommand("top1", "Closed-set top-1 accuracy");
    top1->add_option("--embeddings", top1_embeddings, "Embedding file")->required();
    top1->add_option("--seed", top1_seed, "Registry selection seed");

    PairArgs roc_args;
    std::string roc_out;
    std::size_t roc_points = 50;
    auto* roc = app.add_subcommand("roc", "Write a far,tar CSV");
    add_pair_opts(roc, roc_args);
    roc->add_option("--out", roc_out, "Output CSV")->required();
    roc->add_option("--points", roc_points, "Number of log-spaced FARs");

    std::string ids_path;
    std::string ratio_text = "1:1";
    std::uint64_t split_seed = 0;
    bool stratified = false;
    auto* split = app.add_subcommand("split", "Open-set identity split");
    split->add_option("--ids", ids_path, "Identity list")->required();
    split->add_option("--ratio", ratio_text, "train:test parts");
    split->add_option("--seed", split_seed, "Shuffle seed");
    split->add_flag("--stratified", stratified, "Split each group<TAB>identity group separately");

    std::string fold_ids;
    unsigned folds = 5;
    std::uint64_t fold_seed = 0;
    auto* kfold = app.add_subcommand("kfold", "k-fold partition");
    kfold->add_option("--ids", fold_ids, "Element list")->required();
    kfold->add_option("--k", folds, "Number of folds");
    kfold->add_option("--seed", fold_seed, "Shuffle seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (*tar) {
            const mx::ScoreSet scores = scores_for(tar_args);
            std::printf("far\ttar\tthreshold\tachieved_far\n");
            for (const double far : parse_fars(fars_text)) {
                const mx::TarResult r = mx::tar_at_far(scores, far);
                std::printf("%g\t%.6f\t%.6f\t%g%s\n", r.target_far, r.tar, r.threshold, r.achieved_far,
                            r.under_resolved ? "\tunder-resolved" : "");
            }
        } else if (*eer) {
            const mx::EerResult r = mx::eer(scores_for(eer_args));
            std::printf("eer\t%.6f\nthreshold\t%.6f\n", r.eer, r.threshold);
        } else if (*top1) {
            const mx::Top1Result r = mx::top1_accuracy(mx::load_embeddings(top1_embeddings), top1_seed);
            std::printf("accuracy\t%.6f\ncorrect\t%zu\nqueries\t%zu\n", r.accuracy, r.correct, r.queries);
        } else if (*roc) {
            const std::string csv = mx::roc_csv(mx::roc_curve(scores_for(roc_args), roc_points));
            std::ofstream out(roc_out, std::ios::binary);
            out << csv;
            if (!out) {
                throw cg::IoError(roc_out + ": cannot write");
            }
        } else if (*split) {
            const auto [train_parts, test_parts] = mx::parse_ratio(ratio_text);
            const IdList list = read_ids(ids_path);
            const mx::SplitSpec spec = stratified
                                           ? mx::open_set_split_stratified(list.grouped, train_parts, test_parts,
                                                                           split_seed)
                                           : mx::open_set_split(list.ids, train_parts, test_parts, split_seed);
            for (const std::string& id : spec.train) {
                std::printf("train\t%s\n", id.c_str());
            }
            for (const std::string& id : spec.test) {
                std::printf("test\t%s\n", id.c_str());
            }
        } else if (*kfold) {
            const auto specs = mx::kfold_split(read_ids(fold_ids).ids, folds, fold_seed);
            for (std::size_t f = 0; f < specs.size(); ++f) {
                for (const std::string& id : specs[f].test) {
                    std::printf("%zu\t%s\n", f, id.c_str());
                }
            }
        }
    } catch (const cg::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitOk;
}
