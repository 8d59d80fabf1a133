#include "creasegen/errors.hpp"
#include "creasegen/metrics.hpp"
#include "creasegen/random.hpp"

#include <map>

namespace creasegen::metrics {

namespace {

constexpr std::uint64_t kRegistryStream = 3;

} // namespace

std::vector<std::size_t> choose_registry(const EmbeddingTable& table, std::uint64_t seed) {
    std::map<std::string, std::vector<std::size_t>> by_label;
    for (std::size_t i = 0; i < table.size(); ++i) {
        by_label[table[i].label].push_back(i);
    }
    Rng rng(derive_seed(seed, {kRegistryStream}));
    std::vector<std::size_t> registry;
    registry.reserve(by_label.size());
    for (const auto& [label, rows] : by_label) {
        if (rows.size() < 2) {
            throw ProtocolError("identity '" + label + "' has " + std::to_string(rows.size()) +
                                " sample; closed-set evaluation needs at least 2 per identity");
        }
        registry.push_back(rows[rng.below(rows.size())]);
    }
    return registry;
}

Top1Result top1_accuracy(const EmbeddingTable& table, std::uint64_t seed) {
    if (table.empty()) {
        throw ProtocolError("top1_accuracy: empty embedding table");
    }
    Top1Result result;
    result.registry = choose_registry(table, seed);
    std::vector<bool> is_registry(table.size(), false);
    for (const std::size_t r : result.registry) {
        is_registry[r] = true;
    }
    for (std::size_t q = 0; q < table.size(); ++q) {
        if (is_registry[q]) {
            continue;
        }
        std::size_t best = result.registry.front();
        double best_score = cosine_similarity(table.vector(q), table.vector(best));
        for (std::size_t k = 1; k < result.registry.size(); ++k) {
            const std::size_t r = result.registry[k];
            const double s = cosine_similarity(table.vector(q), table.vector(r));
            if (s > best_score || (s == best_score && table[r].key < table[best].key)) {
                best = r;
                best_score = s;
            }
        }
        ++result.queries;
        if (table[best].label == table[q].label) {
            ++result.correct;
        }
    }
    result.accuracy = static_cast<double>(result.correct) / static_cast<double>(result.queries);
    return result;
}

} // namespace creasegen::metrics
