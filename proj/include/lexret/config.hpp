#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lexret/eval.hpp"
#include "lexret/rankers.hpp"
#include "lexret/textproc.hpp"

namespace lexret {

/// Settings shared by every CLI command. Loaded from a `key = value` file
/// ('#' starts a comment) and then overridden by command-line flags.
///
/// Keys: preset, lowercase, remove_noise, remove_stopwords, stem,
/// min_token_len, stopwords, k1, b, epsilon, delta, scorer, scorers, top_n,
/// k, f1_mode, threads, corpus, queries, qrels, embeddings, index, out, run,
/// runs_dir, tag.
struct RunConfig {
    PipelineConfig pipeline = PipelineConfig::standard();
    BM25Params bm25;
    Scorer scorer;
    std::vector<Scorer> scorers = {Scorer::parse("fused"), Scorer::parse("tfidf_cos"),
                                   Scorer::parse("bm25"), Scorer::parse("rake_tfidf")};
    std::size_t top_n = 100;
    std::vector<std::size_t> ks = {1, 3, 5, 10};
    F1Mode f1_mode = F1Mode::PerQuery;
    unsigned threads = 1;
    std::string tag; // empty: scorer name

    std::filesystem::path corpus;
    std::filesystem::path queries;
    std::filesystem::path qrels;
    std::filesystem::path embeddings;
    std::filesystem::path stopwords;
    std::filesystem::path index;
    std::filesystem::path out;
    std::filesystem::path run;
    std::filesystem::path runs_dir;

    /// Throws ConfigError for unknown keys or unparsable values.
    void apply(std::string_view key, std::string_view value);

    /// Parses a config file body and applies it on top of *this.
    void merge(std::string_view text);
    static RunConfig from_file(const std::filesystem::path& path);

    /// Throws ConfigError unless top_n >= 1 and the BM25 parameters are valid.
    void validate() const;

    [[nodiscard]] StopwordList load_stopwords() const;
};

/// "1,3,5,10" -> {1, 3, 5, 10}. Throws ConfigError.
std::vector<std::size_t> parse_cutoffs(std::string_view text);

bool parse_bool(std::string_view text);

} // namespace lexret
