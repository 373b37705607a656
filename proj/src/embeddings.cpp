#include "lexret/embeddings.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lexret/errors.hpp"

namespace lexret {
namespace {

std::string line_error(std::size_t line_no, const std::string& what) {
    return "embedding file line " + std::to_string(line_no) + ": " + what;
}

} // namespace

void EmbeddingStore::add(const std::string& id, std::size_t chunk_index, DenseVector vector) {
    if (id.empty()) {
        throw FormatError("embedding id must not be empty");
    }
    if (vector.empty()) {
        throw FormatError("embedding for '" + id + "' has no components");
    }
    if (dimension_ == 0) {
        dimension_ = vector.size();
    } else if (vector.size() != dimension_) {
        throw FormatError("embedding for '" + id + "' chunk " + std::to_string(chunk_index) +
                          " has dimension " + std::to_string(vector.size()) + ", expected " +
                          std::to_string(dimension_));
    }
    auto& chunks = chunks_[id];
    if (chunk_index >= chunks.size()) {
        chunks.resize(chunk_index + 1);
    } else if (!chunks[chunk_index].empty()) {
        throw FormatError("duplicate embedding for '" + id + "' chunk " +
                          std::to_string(chunk_index));
    }
    chunks[chunk_index] = std::move(vector);
}

void EmbeddingStore::validate() const {
    for (const auto& [id, chunks] : chunks_) {
        for (std::size_t i = 0; i < chunks.size(); ++i) {
            if (chunks[i].empty()) {
                throw FormatError("embedding for '" + id + "' is missing chunk " +
                                  std::to_string(i));
            }
        }
    }
}

EmbeddingStore EmbeddingStore::parse(std::string_view text) {
    EmbeddingStore store;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        auto line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto tab1 = line.find('\t');
        const auto tab2 = tab1 == std::string_view::npos ? tab1 : line.find('\t', tab1 + 1);
        if (tab2 == std::string_view::npos) {
            throw FormatError(line_error(line_no, "expected id<TAB>chunk_index<TAB>vector"));
        }
        const auto id = line.substr(0, tab1);
        const auto index_text = line.substr(tab1 + 1, tab2 - tab1 - 1);
        std::size_t chunk_index = 0;
        auto [iptr, iec] =
            std::from_chars(index_text.data(), index_text.data() + index_text.size(), chunk_index);
        if (iec != std::errc{} || iptr != index_text.data() + index_text.size()) {
            throw FormatError(line_error(line_no, "bad chunk index '" + std::string(index_text) + "'"));
        }

        DenseVector vec;
        const char* p = line.data() + tab2 + 1;
        const char* last = line.data() + line.size();
        while (p < last) {
            while (p < last && (*p == ' ' || *p == '\t')) {
                ++p;
            }
            if (p == last) {
                break;
            }
            double value = 0.0;
            auto [next, ec] = std::from_chars(p, last, value);
            if (ec != std::errc{} || !std::isfinite(value) ||
                (next < last && *next != ' ' && *next != '\t')) {
                throw FormatError(line_error(line_no, "bad vector component"));
            }
            vec.push_back(value);
            p = next;
        }
        try {
            store.add(std::string(id), chunk_index, std::move(vec));
        } catch (const FormatError& e) {
            throw FormatError(line_error(line_no, e.what()));
        }
    }
    store.validate();
    return store;
}

EmbeddingStore EmbeddingStore::from_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read embedding file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse(buf.str());
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

bool EmbeddingStore::contains(std::string_view id) const {
    return chunks_.find(id) != chunks_.end();
}

const std::vector<DenseVector>* EmbeddingStore::find(std::string_view id) const {
    auto it = chunks_.find(id);
    return it == chunks_.end() ? nullptr : &it->second;
}

double dense_cosine(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw DomainError("dense_cosine: dimension mismatch (" + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()) + ")");
    }
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) {
        return 0.0;
    }
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

double aggregate_chunk_similarity(std::span<const double> query,
                                  std::span<const DenseVector> chunks) {
    if (chunks.empty()) {
        throw DomainError("aggregate_chunk_similarity: no chunks");
    }
    double sum = 0.0;
    for (const auto& chunk : chunks) {
        sum += dense_cosine(query, chunk);
    }
    return sum / static_cast<double>(chunks.size());
}

std::vector<TokenStream> chunk_tokens(const TokenStream& tokens, std::size_t max_len) {
    if (max_len < 1) {
        throw DomainError("chunk_tokens: max_len must be at least 1");
    }
    std::vector<TokenStream> chunks;
    for (std::size_t start = 0; start < tokens.size(); start += max_len) {
        const auto end = std::min(tokens.size(), start + max_len);
        chunks.emplace_back(tokens.begin() + static_cast<std::ptrdiff_t>(start),
                            tokens.begin() + static_cast<std::ptrdiff_t>(end));
    }
    return chunks;
}

} // namespace lexret
