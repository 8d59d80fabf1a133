#include "creasegen/errors.hpp"
#include "creasegen/metrics.hpp"
#include "creasegen/random.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace creasegen::metrics {

namespace {

constexpr std::uint64_t kPositiveStream = 1;
constexpr std::uint64_t kNegativeStream = 2;

/// Rows regrouped by label; each group is a contiguous range of `order`.
struct Grouping {
    std::vector<std::size_t> order;
    std::vector<std::size_t> group_end;   // per position in `order`
    std::vector<std::size_t> group_begin; // per group
    std::vector<std::uint64_t> pos_prefix; // per group, exclusive prefix of C(size, 2)
    std::vector<std::uint64_t> neg_prefix; // per position, exclusive prefix of later cross rows
    std::uint64_t positives = 0;
    std::uint64_t negatives = 0;
};

Grouping group_rows(const EmbeddingTable& table) {
    Grouping g;
    const std::size_t n = table.size();
    g.order.resize(n);
    std::iota(g.order.begin(), g.order.end(), std::size_t{0});
    std::stable_sort(g.order.begin(), g.order.end(),
                     [&](std::size_t a, std::size_t b) { return table[a].label < table[b].label; });

    g.group_end.resize(n);
    for (std::size_t begin = 0; begin < n;) {
        std::size_t end = begin;
        while (end < n && table[g.order[end]].label == table[g.order[begin]].label) {
            ++end;
        }
        const std::uint64_t size = end - begin;
        g.group_begin.push_back(begin);
        g.pos_prefix.push_back(g.positives);
        g.positives += size * (size - 1) / 2;
        for (std::size_t k = begin; k < end; ++k) {
            g.group_end[k] = end;
        }
        begin = end;
    }
    g.group_begin.push_back(n);

    g.neg_prefix.resize(n + 1);
    for (std::size_t k = 0; k < n; ++k) {
        g.neg_prefix[k] = g.negatives;
        g.negatives += n - g.group_end[k];
    }
    g.neg_prefix[n] = g.negatives;
    return g;
}

/// Floyd's algorithm: `count` distinct values from [0, total), ascending.
std::vector<std::uint64_t> sample_indices(std::uint64_t total, std::uint64_t count, Rng& rng) {
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(count);
    for (std::uint64_t j = total - count; j < total; ++j) {
        const std::uint64_t t = rng.below(j + 1);
        if (!chosen.insert(t).second) {
            chosen.insert(j);
        }
    }
    std::vector<std::uint64_t> out(chosen.begin(), chosen.end());
    std::sort(out.begin(), out.end());
    return out;
}

Pair ordered(std::size_t a, std::size_t b) { return a < b ? Pair{a, b} : Pair{b, a}; }

Pair decode_positive(const Grouping& g, std::uint64_t index) {
    const auto it = std::upper_bound(g.pos_prefix.begin(), g.pos_prefix.end(), index);
    const std::size_t group = static_cast<std::size_t>(it - g.pos_prefix.begin()) - 1;
    const std::size_t begin = g.group_begin[group];
    const std::uint64_t size = g.group_begin[group + 1] - begin;
    std::uint64_t q = index - g.pos_prefix[group];
    std::uint64_t a = 0;
    while (q >= size - 1 - a) {
        q -= size - 1 - a;
        ++a;
    }
    return ordered(g.order[begin + a], g.order[begin + a + 1 + q]);
}

Pair decode_negative(const Grouping& g, std::uint64_t index) {
    const auto it = std::upper_bound(g.neg_prefix.begin(), g.neg_prefix.end(), index);
    const std::size_t k = static_cast<std::size_t>(it - g.neg_prefix.begin()) - 1;
    const std::size_t partner = g.group_end[k] + (index - g.neg_prefix[k]);
    return ordered(g.order[k], g.order[partner]);
}

void score(const EmbeddingTable& table, PairSet& set) {
    set.scores.genuine.reserve(set.positive.size());
    for (const Pair& p : set.positive) {
        set.scores.genuine.push_back(cosine_similarity(table.vector(p.i), table.vector(p.j)));
    }
    set.scores.impostor.reserve(set.negative.size());
    for (const Pair& p : set.negative) {
        set.scores.impostor.push_back(cosine_similarity(table.vector(p.i), table.vector(p.j)));
    }
}

} // namespace

PairCapacity pair_capacity(const EmbeddingTable& table) {
    const Grouping g = group_rows(table);
    return {g.positives, g.negatives};
}

PairSet build_pairs(const EmbeddingTable& table, std::uint64_t n_pos, std::uint64_t n_neg, std::uint64_t seed) {
    const Grouping g = group_rows(table);
    if (n_pos > g.positives) {
        throw CapacityError("requested " + std::to_string(n_pos) + " positive pairs but only " +
                                std::to_string(g.positives) + " distinct same-identity pairs exist",
                            g.positives);
    }
    if (n_neg > g.negatives) {
        throw CapacityError("requested " + std::to_string(n_neg) + " negative pairs but only " +
                                std::to_string(g.negatives) + " distinct cross-identity pairs exist",
                            g.negatives);
    }
    PairSet set;
    Rng pos_rng(derive_seed(seed, {kPositiveStream}));
    for (const std::uint64_t idx : sample_indices(g.positives, n_pos, pos_rng)) {
        set.positive.push_back(decode_positive(g, idx));
    }
    Rng neg_rng(derive_seed(seed, {kNegativeStream}));
    for (const std::uint64_t idx : sample_indices(g.negatives, n_neg, neg_rng)) {
        set.negative.push_back(decode_negative(g, idx));
    }
    score(table, set);
    return set;
}

PairSet all_pairs(const EmbeddingTable& table) {
    PairSet set;
    for (std::size_t i = 0; i < table.size(); ++i) {
        for (std::size_t j = i + 1; j < table.size(); ++j) {
            (table[i].label == table[j].label ? set.positive : set.negative).push_back({i, j});
        }
    }
    score(table, set);
    return set;
}

} // namespace creasegen::metrics
