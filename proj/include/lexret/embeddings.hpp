#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexret/textproc.hpp"

namespace lexret {

using DenseVector = std::vector<double>;

/// Precomputed chunk embeddings keyed by document or query id. All vectors
/// share one dimension and every id owns chunks 0..n-1 without gaps.
class EmbeddingStore {
public:
    EmbeddingStore() = default;

    /// Throws FormatError on dimension mismatch, empty vectors or duplicate chunks.
    void add(const std::string& id, std::size_t chunk_index, DenseVector vector);

    /// Sidecar format: `id<TAB>chunk_index<TAB>v1 v2 ... vD` per line.
    static EmbeddingStore parse(std::string_view text);
    static EmbeddingStore from_file(const std::filesystem::path& path);

    /// Throws FormatError if some id has a gap in its chunk indices.
    void validate() const;

    [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
    [[nodiscard]] std::size_t size() const noexcept { return chunks_.size(); }
    [[nodiscard]] bool contains(std::string_view id) const;
    /// nullptr when the id is unknown.
    [[nodiscard]] const std::vector<DenseVector>* find(std::string_view id) const;

private:
    std::size_t dimension_ = 0;
    std::map<std::string, std::vector<DenseVector>, std::less<>> chunks_;
};

/// Cosine of two dense vectors; 0 when either has zero norm.
double dense_cosine(std::span<const double> a, std::span<const double> b);

/// Mean over chunks of cosine(query, chunk). Throws DomainError for an empty
/// chunk list or a dimension mismatch.
double aggregate_chunk_similarity(std::span<const double> query,
                                  std::span<const DenseVector> chunks);

/// Consecutive non-overlapping chunks of at most max_len tokens.
std::vector<TokenStream> chunk_tokens(const TokenStream& tokens, std::size_t max_len = 512);

} // namespace lexret
