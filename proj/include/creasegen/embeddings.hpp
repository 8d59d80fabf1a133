#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace creasegen::metrics {

inline constexpr std::size_t kDefaultEmbeddingDim = 512;

struct EmbeddingRow {
    std::string key;
    std::string label;
    std::vector<double> vector;
};

/// Feature vectors keyed by sample, in canonical order (ascending key).
///
/// Construction validates that keys are unique and non-empty, labels are
/// non-empty, every vector has the same non-zero dimension and every
/// component is finite. Violations throw DomainError.
class EmbeddingTable {
public:
    EmbeddingTable() = default;
    explicit EmbeddingTable(std::vector<EmbeddingRow> rows);

    std::size_t size() const noexcept { return rows_.size(); }
    bool empty() const noexcept { return rows_.empty(); }
    std::size_t dim() const noexcept { return dim_; }

    const EmbeddingRow& operator[](std::size_t i) const { return rows_[i]; }
    const std::vector<EmbeddingRow>& rows() const noexcept { return rows_; }
    std::span<const double> vector(std::size_t i) const { return rows_[i].vector; }

    /// Distinct labels, ascending.
    std::vector<std::string> labels() const;

private:
    std::vector<EmbeddingRow> rows_;
    std::size_t dim_ = 0;
};

/// Parses the embedding text format:
///
///     #dim=<D>
///     <sample_key>\t<identity_label>\t<v1> <v2> ... <vD>
///
/// Blank lines are ignored. Malformed rows, non-finite values and duplicate
/// keys raise ParseError; a row whose dimension differs from the header raises
/// SchemaError. Both carry the 1-based file line number.
EmbeddingTable parse_embeddings(std::istream& in, std::string_view source = "<stream>");
EmbeddingTable load_embeddings(const std::filesystem::path& path);

/// Writes the same format with shortest round-trip decimal values.
std::string serialize_embeddings(const EmbeddingTable& table);
void write_embeddings(const std::filesystem::path& path, const EmbeddingTable& table);

} // namespace creasegen::metrics
