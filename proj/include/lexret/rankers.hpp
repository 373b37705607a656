#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexret/analyzer.hpp"
#include "lexret/embeddings.hpp"
#include "lexret/index.hpp"

namespace lexret {

enum class Variant { Atire, Okapi, BM25L, BM25Plus };

std::string_view to_string(Variant variant) noexcept;

struct BM25Params {
    double k1 = 1.5;
    double b = 0.75;
    /// Okapi only: negative idf is replaced by epsilon * mean idf.
    double epsilon = 0.25;
    /// Unset means the variant default: 0.5 for BM25L, 1.0 for BM25Plus.
    std::optional<double> delta;

    [[nodiscard]] double delta_for(Variant variant) const noexcept;
    /// Throws DomainError unless k1 > 0, 0 <= b <= 1, epsilon >= 0, delta >= 0.
    void validate() const;
};

/// Collection statistics for scoring one term in one document.
struct TermContext {
    std::uint64_t num_docs = 0;
    double doc_len = 0.0;
    double avg_len = 0.0;
    /// Mean raw Okapi idf over the vocabulary; only read by Variant::Okapi.
    double okapi_mean_idf = 0.0;
};

/// tf * ln(N / df). Throws DomainError unless N >= 1 and 1 <= df <= N.
double tfidf_weight(std::uint64_t tf, std::uint64_t num_docs, std::uint64_t df);

/// Idf of a BM25 variant before any flooring. Throws DomainError unless 1 <= df <= N.
double bm25_idf(Variant variant, std::uint64_t num_docs, std::uint64_t df);

/// Contribution of one query term to a document's BM25 score.
///
///   Atire    ln(N/df) * (k1+1) tf / (k1 (1-b+b L/avg) + tf)
///   Okapi    idf * (k1+1) tf / (k1 (1-b+b L/avg) + tf),
///            idf = ln((N-df+0.5)/(df+0.5)), negative idf -> epsilon * mean idf
///   BM25L    ln((N+1)/(df+0.5)) * (k1+1)(c+delta) / (k1+c+delta),
///            c = tf / (1-b+b L/avg)
///   BM25Plus ln((N+1)/df) * ((k1+1) tf / (k1 (1-b+b L/avg) + tf) + delta)
///
/// Every variant returns 0 when tf = 0.
double bm25_term_score(std::uint64_t tf, std::uint64_t df, const TermContext& context,
                       const BM25Params& params, Variant variant);

double fuse_product(double bm25, double cosine) noexcept;

/// Sparse term-weight vector; zero weights are never stored.
class SparseVector {
public:
    SparseVector() = default;
    SparseVector(std::initializer_list<std::pair<const std::string, double>> entries);

    void set(const std::string& term, double weight);
    void add(const std::string& term, double weight);
    [[nodiscard]] double get(std::string_view term) const;
    [[nodiscard]] double norm() const;
    [[nodiscard]] std::size_t size() const noexcept { return weights_.size(); }
    [[nodiscard]] const std::map<std::string, double, std::less<>>& entries() const noexcept {
        return weights_;
    }

private:
    std::map<std::string, double, std::less<>> weights_;
};

/// Sum a_i b_i / (|a| |b|), or 0 when either norm is 0.
double cosine_similarity(const SparseVector& a, const SparseVector& b);

enum class ScorerKind { TfidfCos, BM25, Fused, RakeTfidf, CommonWordsBM25, Embed };

struct Scorer {
    ScorerKind kind = ScorerKind::BM25;
    /// Only meaningful for ScorerKind::BM25.
    Variant variant = Variant::Atire;

    /// tfidf_cos, bm25 (= bm25_atire), bm25_okapi, bm25l, bm25plus, fused,
    /// rake_tfidf, commonwords_bm25, embed. Throws ConfigError otherwise.
    static Scorer parse(std::string_view name);
    static std::vector<Scorer> parse_list(std::string_view comma_separated);
    [[nodiscard]] std::string name() const;

    bool operator==(const Scorer&) const = default;
};

struct ScoredDoc {
    std::string doc_id;
    double score = 0.0;

    bool operator==(const ScoredDoc&) const = default;
};

/// Descending score, ties by ascending doc id.
using Ranking = std::vector<ScoredDoc>;

bool ranks_before(const ScoredDoc& a, const ScoredDoc& b) noexcept;
void sort_ranking(Ranking& ranking);

/// Scores queries against a frozen index. Construction precomputes the
/// per-document TF-IDF norms and the Okapi mean idf; after that the object
/// is read-only and may be shared between threads.
class Searcher {
public:
    explicit Searcher(const CorpusIndex& index, BM25Params params = {},
                      const EmbeddingStore* embeddings = nullptr);

    /// Full ranking over every document. Throws PipelineMismatchError when the
    /// query fingerprint differs from the index, ConfigError for EMBED without
    /// embeddings or with ids missing from the store.
    [[nodiscard]] Ranking rank(const AnalyzedQuery& query, Scorer scorer) const;

    /// Raw scores indexed by DocOrdinal.
    [[nodiscard]] std::vector<double> scores(const AnalyzedQuery& query, Scorer scorer) const;

    [[nodiscard]] const CorpusIndex& index() const noexcept { return index_; }
    [[nodiscard]] const BM25Params& params() const noexcept { return params_; }
    [[nodiscard]] double okapi_mean_idf() const noexcept { return okapi_mean_idf_; }

private:
    [[nodiscard]] std::vector<double> bm25_scores(const AnalyzedQuery& query, Variant variant) const;
    [[nodiscard]] std::vector<double> cosine_scores(const std::vector<std::string>& terms,
                                                    bool keywords_only) const;
    [[nodiscard]] std::vector<double> common_word_counts(const AnalyzedQuery& query) const;
    [[nodiscard]] std::vector<double> embedding_scores(const AnalyzedQuery& query) const;

    const CorpusIndex& index_;
    BM25Params params_;
    const EmbeddingStore* embeddings_;
    std::vector<double> idf_;          // ln(N/df) per term
    std::vector<double> tfidf_norm_;   // per document
    std::vector<double> keyword_norm_; // per document, keyword vocabulary only
    double okapi_mean_idf_ = 0.0;
};

Ranking score_query(const AnalyzedQuery& query, const CorpusIndex& index, Scorer scorer,
                    const BM25Params& params = {}, const EmbeddingStore* embeddings = nullptr);

/// First n entries (all of them when n exceeds the ranking).
Ranking top_n(Ranking ranking, std::size_t n);

} // namespace lexret
