#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lexret/index.hpp"
#include "lexret/textproc.hpp"

namespace lexret {

/// A query after normalization, stamped with the fingerprint of the pipeline
/// that produced it.
struct AnalyzedQuery {
    std::string id;
    TokenStream tokens;
    /// Normalized unigram terms of the query's RAKE keyword phrases.
    std::vector<std::string> keyword_terms;
    std::uint64_t fingerprint = 0;
};

struct AnalyzedDocument {
    std::string id;
    TokenStream tokens;
    std::vector<std::string> keyword_terms;
};

/// Pipeline configuration bound to a stopword list. Documents and queries
/// must go through the same Analyzer.
class Analyzer {
public:
    Analyzer(PipelineConfig config, StopwordList stopwords);

    [[nodiscard]] const PipelineConfig& config() const noexcept { return config_; }
    [[nodiscard]] const StopwordList& stopwords() const noexcept { return stopwords_; }
    [[nodiscard]] std::uint64_t fingerprint() const noexcept { return fingerprint_; }

    [[nodiscard]] TokenStream tokenize(std::string_view raw) const;

    /// Source tokens whose lowercase form belongs to one of the top-k RAKE
    /// phrases, pushed through the pipeline, deduplicated and sorted.
    /// top_k = 0 selects rake_default_top_k.
    [[nodiscard]] std::vector<std::string> keyword_terms(std::string_view raw,
                                                         std::size_t top_k = 0) const;

    [[nodiscard]] AnalyzedQuery analyze_query(std::string id, std::string_view raw) const;
    [[nodiscard]] AnalyzedDocument analyze_document(std::string id, std::string_view raw) const;

private:
    PipelineConfig config_;
    StopwordList stopwords_;
    std::uint64_t fingerprint_;
};

struct RawDocument {
    std::string id;
    std::string text;
};

/// Analyzes every document (optionally on several threads) and builds the
/// index, including the corpus keyword vocabulary.
CorpusIndex build_corpus_index(const std::vector<RawDocument>& docs, const Analyzer& analyzer,
                               unsigned threads = 1);

} // namespace lexret
