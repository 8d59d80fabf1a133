#include "creasegen/embeddings.hpp"
#include "creasegen/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <unordered_set>

namespace creasegen::metrics {

EmbeddingTable::EmbeddingTable(std::vector<EmbeddingRow> rows) : rows_(std::move(rows)) {
    std::sort(rows_.begin(), rows_.end(), [](const EmbeddingRow& a, const EmbeddingRow& b) { return a.key < b.key; });
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const EmbeddingRow& r = rows_[i];
        if (r.key.empty() || r.label.empty()) {
            throw DomainError("embedding rows need a non-empty key and label");
        }
        if (i > 0 && rows_[i - 1].key == r.key) {
            throw DomainError("duplicate sample key '" + r.key + "'");
        }
        if (r.vector.empty()) {
            throw DomainError("sample '" + r.key + "' has an empty vector");
        }
        if (i == 0) {
            dim_ = r.vector.size();
        } else if (r.vector.size() != dim_) {
            throw DomainError("sample '" + r.key + "' has dimension " + std::to_string(r.vector.size()) +
                              ", expected " + std::to_string(dim_));
        }
        if (!std::all_of(r.vector.begin(), r.vector.end(), [](double v) { return std::isfinite(v); })) {
            throw DomainError("sample '" + r.key + "' has a non-finite component");
        }
    }
}

std::vector<std::string> EmbeddingTable::labels() const {
    std::set<std::string> unique;
    for (const EmbeddingRow& r : rows_) {
        unique.insert(r.label);
    }
    return {unique.begin(), unique.end()};
}

namespace {

std::string located(std::string_view source, std::size_t line, const std::string& msg) {
    return std::string(source) + ":" + std::to_string(line) + ": " + msg;
}

std::size_t parse_header(const std::string& line, std::string_view source) {
    constexpr std::string_view kPrefix = "#dim=";
    if (line.rfind(kPrefix, 0) != 0) {
        throw ParseError(located(source, 1, "expected header '#dim=<D>'"), 1);
    }
    std::size_t dim = 0;
    const char* first = line.data() + kPrefix.size();
    const char* last = line.data() + line.size();
    const auto [ptr, ec] = std::from_chars(first, last, dim);
    if (ec != std::errc() || ptr != last || dim == 0) {
        throw ParseError(located(source, 1, "invalid dimension in header"), 1);
    }
    return dim;
}

} // namespace

EmbeddingTable parse_embeddings(std::istream& in, std::string_view source) {
    std::string line;
    std::size_t line_no = 0;
    std::size_t dim = 0;
    std::vector<EmbeddingRow> rows;
    std::unordered_set<std::string> keys;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line_no == 1) {
            dim = parse_header(line, source);
            continue;
        }
        if (line.empty()) {
            continue;
        }
        const std::size_t tab1 = line.find('\t');
        const std::size_t tab2 = tab1 == std::string::npos ? tab1 : line.find('\t', tab1 + 1);
        if (tab2 == std::string::npos) {
            throw ParseError(located(source, line_no, "expected <key>\\t<label>\\t<values>"), line_no);
        }
        EmbeddingRow row;
        row.key = line.substr(0, tab1);
        row.label = line.substr(tab1 + 1, tab2 - tab1 - 1);
        if (row.key.empty() || row.label.empty()) {
            throw ParseError(located(source, line_no, "empty sample key or identity label"), line_no);
        }
        if (!keys.insert(row.key).second) {
            throw ParseError(located(source, line_no, "duplicate sample key '" + row.key + "'"), line_no);
        }

        const char* p = line.data() + tab2 + 1;
        const char* end = line.data() + line.size();
        row.vector.reserve(dim);
        for (;;) {
            while (p < end && (*p == ' ' || *p == '\t')) {
                ++p;
            }
            if (p == end) {
                break;
            }
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(p, end, v);
            if (ec != std::errc() || (ptr != end && *ptr != ' ' && *ptr != '\t')) {
                throw ParseError(located(source, line_no, "invalid number in component " +
                                                              std::to_string(row.vector.size() + 1)),
                                 line_no);
            }
            if (!std::isfinite(v)) {
                throw ParseError(located(source, line_no, "non-finite value in component " +
                                                              std::to_string(row.vector.size() + 1)),
                                 line_no);
            }
            row.vector.push_back(v);
            p = ptr;
        }
        if (row.vector.size() != dim) {
            throw SchemaError(located(source, line_no,
                                      "row " + std::to_string(rows.size() + 1) + " has dimension " +
                                          std::to_string(row.vector.size()) + ", header declares " +
                                          std::to_string(dim)),
                              line_no);
        }
        rows.push_back(std::move(row));
    }
    if (line_no == 0) {
        throw ParseError(located(source, 0, "empty embedding file"), 0);
    }
    return EmbeddingTable(std::move(rows));
}

EmbeddingTable load_embeddings(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(path.string() + ": cannot open embedding file");
    }
    return parse_embeddings(in, path.string());
}

std::string serialize_embeddings(const EmbeddingTable& table) {
    std::string out = "#dim=" + std::to_string(table.dim()) + "\n";
    char buf[64];
    for (const EmbeddingRow& r : table.rows()) {
        out += r.key;
        out += '\t';
        out += r.label;
        out += '\t';
        for (std::size_t i = 0; i < r.vector.size(); ++i) {
            if (i > 0) {
                out += ' ';
            }
            const auto res = std::to_chars(buf, buf + sizeof(buf), r.vector[i]);
            out.append(buf, res.ptr);
        }
        out += '\n';
    }
    return out;
}

void write_embeddings(const std::filesystem::path& path, const EmbeddingTable& table) {
    std::ofstream out(path, std::ios::binary);
    const std::string text = serialize_embeddings(table);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw IoError(path.string() + ": cannot write embedding file");
    }
}

} // namespace creasegen::metrics
