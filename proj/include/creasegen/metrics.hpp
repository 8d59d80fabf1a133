#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "creasegen/embeddings.hpp"

namespace creasegen::metrics {

/// dot(a, b) / (sqrt(a.a) * sqrt(b.b)), clamped to [-1, 1].
/// Throws DomainError on a dimension mismatch or a zero-norm vector.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

struct ScoreSet {
    std::vector<double> genuine;
    std::vector<double> impostor;
};

/// Row indices into an EmbeddingTable, i < j.
struct Pair {
    std::size_t i = 0;
    std::size_t j = 0;

    friend bool operator==(const Pair&, const Pair&) = default;
};

struct PairSet {
    std::vector<Pair> positive;
    std::vector<Pair> negative;
    ScoreSet scores;
};

struct PairCapacity {
    std::uint64_t positive = 0;
    std::uint64_t negative = 0;
};

/// Number of distinct same-label and cross-label unordered pairs.
PairCapacity pair_capacity(const EmbeddingTable& table);

/// Samples n_pos distinct same-label pairs and n_neg distinct cross-label
/// pairs uniformly without replacement, then scores them. Pairs are returned
/// in a fixed enumeration order, so the output depends only on the table
/// contents and the seed. Throws CapacityError when a request exceeds the
/// number of distinct pairs.
PairSet build_pairs(const EmbeddingTable& table, std::uint64_t n_pos, std::uint64_t n_neg, std::uint64_t seed);

/// Every same-label and cross-label pair, scored.
PairSet all_pairs(const EmbeddingTable& table);

struct TarResult {
    double target_far = 0.0;
    double tar = 0.0;
    double threshold = 0.0;
    double achieved_far = 0.0;
    /// target_far * N_impostor < 1: the threshold is the largest impostor
    /// score and the requested rate cannot be resolved at this sample size.
    bool under_resolved = false;
};

/// Threshold tau is the k-th largest impostor score (0-based) with k the
/// largest index satisfying k / N_impostor <= far, clamped to N_impostor - 1.
/// FAR and TAR count scores strictly above tau.
/// Throws DomainError unless 0 < far <= 1 and both lists are non-empty.
TarResult tar_at_far(const ScoreSet& scores, double far);

struct EerResult {
    double eer = 0.0;
    double threshold = 0.0;
};

/// Equal error rate on the empirical step functions FAR(t) = |impostor > t| / N
/// and FRR(t) = |genuine <= t| / P, swept over the sorted distinct scores.
/// A sign change of FAR - FRR between adjacent thresholds is interpolated
/// linearly; a run of thresholds with FAR == FRR reports the midpoint between
/// the first of them and the next distinct score. The sweep starts from a
/// virtual point below every score with FAR = 1, FRR = 0.
EerResult eer(const ScoreSet& scores);

struct Top1Result {
    double accuracy = 0.0;
    std::size_t queries = 0;
    std::size_t correct = 0;
    /// Row index of the registry sample chosen for each label (ascending label).
    std::vector<std::size_t> registry;
};

/// Closed-set identification. One registry sample per identity is drawn
/// uniformly with the seed; every other sample is a query. A query is correct
/// when its most similar registry sample has its label; equal similarities go
/// to the lexicographically smallest registry key. Throws ProtocolError when
/// an identity has fewer than two samples.
Top1Result top1_accuracy(const EmbeddingTable& table, std::uint64_t seed);

/// Row indices of the registry for the given seed, one per label (ascending).
std::vector<std::size_t> choose_registry(const EmbeddingTable& table, std::uint64_t seed);

struct RocPoint {
    double far = 0.0;
    double tar = 0.0;
    double threshold = 0.0;
    double achieved_far = 0.0;
};

/// n_points target FARs log-spaced from 1 / N_impostor to 1, each evaluated
/// with tar_at_far. Throws DomainError when n_points < 2.
std::vector<RocPoint> roc_curve(const ScoreSet& scores, std::size_t n_points);

/// "far,tar" header plus one row per point.
std::string roc_csv(const std::vector<RocPoint>& curve);

struct SplitSpec {
    std::vector<std::string> train;
    std::vector<std::string> test;
    std::string ratio;
};

/// Parses "a:b" with positive integers.
std::pair<unsigned, unsigned> parse_ratio(const std::string& text);

/// Shuffles the distinct identities with the seed and assigns
/// floor(n * train_parts / (train_parts + test_parts)) to train. Both output
/// lists are sorted. Throws DomainError for fewer than two identities or a
/// zero ratio part.
SplitSpec open_set_split(std::vector<std::string> identities, unsigned train_parts, unsigned test_parts,
                         std::uint64_t seed);

/// (group, identity) pairs: each group is split on its own with the same
/// rounding rule and the results are merged.
SplitSpec open_set_split_stratified(const std::vector<std::pair<std::string, std::string>>& grouped,
                                    unsigned train_parts, unsigned test_parts, std::uint64_t seed);

/// k folds of near-equal size (the first n mod k folds get one extra).
/// Fold i is the test set of the i-th split. Throws DomainError when k < 2
/// or the population is smaller than k.
std::vector<SplitSpec> kfold_split(std::vector<std::string> population, unsigned k, std::uint64_t seed);

} // namespace creasegen::metrics
