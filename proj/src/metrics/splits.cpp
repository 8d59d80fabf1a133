#include "creasegen/errors.hpp"
#include "creasegen/metrics.hpp"
#include "creasegen/random.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace creasegen::metrics {

namespace {

constexpr std::uint64_t kSplitStream = 4;
constexpr std::uint64_t kFoldStream = 5;

void shuffle(std::vector<std::string>& items, Rng& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::swap(items[i - 1], items[rng.below(i)]);
    }
}

std::vector<std::string> canonical(std::vector<std::string> items) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    return items;
}

std::string ratio_tag(unsigned a, unsigned b) { return std::to_string(a) + ":" + std::to_string(b); }

void check_parts(unsigned train_parts, unsigned test_parts) {
    if (train_parts == 0 || test_parts == 0) {
        throw DomainError("split ratio parts must be positive");
    }
}

/// Shuffles `ids` and appends the train and test portions to `out`.
void split_into(std::vector<std::string> ids, unsigned train_parts, unsigned test_parts, Rng& rng,
                SplitSpec& out) {
    shuffle(ids, rng);
    const std::size_t n_train = ids.size() * train_parts / (train_parts + test_parts);
    out.train.insert(out.train.end(), ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n_train));
    out.test.insert(out.test.end(), ids.begin() + static_cast<std::ptrdiff_t>(n_train), ids.end());
}

} // namespace

std::pair<unsigned, unsigned> parse_ratio(const std::string& text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos) {
        throw DomainError("ratio '" + text + "' is not of the form a:b");
    }
    auto parse_part = [&](std::size_t begin, std::size_t end) {
        unsigned v = 0;
        const auto [ptr, ec] = std::from_chars(text.data() + begin, text.data() + end, v);
        if (ec != std::errc() || ptr != text.data() + end || v == 0) {
            throw DomainError("ratio '" + text + "' needs two positive integers");
        }
        return v;
    };
    return {parse_part(0, colon), parse_part(colon + 1, text.size())};
}

SplitSpec open_set_split(std::vector<std::string> identities, unsigned train_parts, unsigned test_parts,
                         std::uint64_t seed) {
    check_parts(train_parts, test_parts);
    identities = canonical(std::move(identities));
    if (identities.size() < 2) {
        throw DomainError("open_set_split needs at least 2 identities");
    }
    SplitSpec spec;
    spec.ratio = ratio_tag(train_parts, test_parts);
    Rng rng(derive_seed(seed, {kSplitStream}));
    split_into(std::move(identities), train_parts, test_parts, rng, spec);
    std::sort(spec.train.begin(), spec.train.end());
    std::sort(spec.test.begin(), spec.test.end());
    return spec;
}

SplitSpec open_set_split_stratified(const std::vector<std::pair<std::string, std::string>>& grouped,
                                    unsigned train_parts, unsigned test_parts, std::uint64_t seed) {
    check_parts(train_parts, test_parts);
    std::map<std::string, std::vector<std::string>> groups;
    std::vector<std::string> all;
    for (const auto& [group, id] : grouped) {
        groups[group].push_back(id);
        all.push_back(id);
    }
    all = canonical(std::move(all));
    if (all.size() < 2) {
        throw DomainError("open_set_split needs at least 2 identities");
    }
    std::size_t listed = 0;
    for (auto& [group, ids] : groups) {
        ids = canonical(std::move(ids));
        listed += ids.size();
    }
    if (listed != all.size()) {
        throw DomainError("an identity is listed under more than one group");
    }

    SplitSpec spec;
    spec.ratio = ratio_tag(train_parts, test_parts);
    std::uint64_t index = 0;
    for (auto& [group, ids] : groups) {
        Rng rng(derive_seed(seed, {kSplitStream, index++}));
        split_into(std::move(ids), train_parts, test_parts, rng, spec);
    }
    std::sort(spec.train.begin(), spec.train.end());
    std::sort(spec.test.begin(), spec.test.end());
    return spec;
}

std::vector<SplitSpec> kfold_split(std::vector<std::string> population, unsigned k, std::uint64_t seed) {
    if (k < 2) {
        throw DomainError("kfold_split: k must be at least 2");
    }
    std::sort(population.begin(), population.end());
    if (population.size() < k) {
        throw DomainError("kfold_split: population of " + std::to_string(population.size()) +
                          " is smaller than k = " + std::to_string(k));
    }
    Rng rng(derive_seed(seed, {kFoldStream}));
    shuffle(population, rng);

    const std::size_t base = population.size() / k;
    const std::size_t extra = population.size() % k;
    std::vector<std::size_t> bounds{0};
    for (unsigned f = 0; f < k; ++f) {
        bounds.push_back(bounds.back() + base + (f < extra ? 1 : 0));
    }

    std::vector<SplitSpec> folds(k);
    for (unsigned f = 0; f < k; ++f) {
        SplitSpec& spec = folds[f];
        spec.ratio = ratio_tag(k - 1, 1);
        for (unsigned g = 0; g < k; ++g) {
            auto& dest = g == f ? spec.test : spec.train;
            dest.insert(dest.end(), population.begin() + static_cast<std::ptrdiff_t>(bounds[g]),
                        population.begin() + static_cast<std::ptrdiff_t>(bounds[g + 1]));
        }
        std::sort(spec.train.begin(), spec.train.end());
        std::sort(spec.test.begin(), spec.test.end());
    }
    return folds;
}

} // namespace creasegen::metrics
