#include "lexret/analyzer.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "lexret/parallel.hpp"
#include "lexret/rake.hpp"

namespace lexret {
namespace {

constexpr bool is_ascii_alnum(char c) noexcept {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

} // namespace

Analyzer::Analyzer(PipelineConfig config, StopwordList stopwords)
    : config_(config), stopwords_(std::move(stopwords)),
      fingerprint_(pipeline_fingerprint(config_, stopwords_)) {}

TokenStream Analyzer::tokenize(std::string_view raw) const {
    return tokenize_normalize(raw, config_, stopwords_);
}

std::vector<std::string> Analyzer::keyword_terms(std::string_view raw, std::size_t top_k) const {
    const auto phrases =
        top_k == 0 ? rake_extract_default(raw, stopwords_) : rake_extract(raw, stopwords_, top_k);
    std::unordered_set<std::string_view> words;
    for (const auto& kw : phrases) {
        const std::string_view phrase = kw.phrase;
        std::size_t pos = 0;
        while (pos < phrase.size()) {
            auto end = phrase.find(' ', pos);
            if (end == std::string_view::npos) {
                end = phrase.size();
            }
            words.insert(phrase.substr(pos, end - pos));
            pos = end + 1;
        }
    }
    if (words.empty()) {
        return {};
    }

    // Map back onto source tokens so the keyword terms go through exactly
    // the pipeline the document tokens did (case included).
    const auto lower = ascii_lower(raw);
    std::unordered_set<std::string_view> sources;
    std::size_t i = 0;
    while (i < raw.size()) {
        while (i < raw.size() && !is_ascii_alnum(raw[i])) {
            ++i;
        }
        const auto start = i;
        while (i < raw.size() && is_ascii_alnum(raw[i])) {
            ++i;
        }
        if (i == start) {
            break;
        }
        if (words.contains(std::string_view(lower).substr(start, i - start))) {
            sources.insert(raw.substr(start, i - start));
        }
    }
    std::vector<std::string> terms;
    terms.reserve(sources.size());
    for (const auto token : sources) {
        if (auto term = normalize_token(std::string(token), config_, stopwords_)) {
            terms.push_back(std::move(*term));
        }
    }
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    return terms;
}

AnalyzedQuery Analyzer::analyze_query(std::string id, std::string_view raw) const {
    return {std::move(id), tokenize(raw), keyword_terms(raw), fingerprint_};
}

AnalyzedDocument Analyzer::analyze_document(std::string id, std::string_view raw) const {
    return {std::move(id), tokenize(raw), keyword_terms(raw)};
}

CorpusIndex build_corpus_index(const std::vector<RawDocument>& docs, const Analyzer& analyzer,
                               unsigned threads) {
    std::vector<AnalyzedDocument> analyzed(docs.size());
    parallel_for(docs.size(), threads, [&](std::size_t i) {
        analyzed[i] = analyzer.analyze_document(docs[i].id, docs[i].text);
    });

    std::set<std::string> vocabulary;
    std::vector<DocumentInput> inputs;
    inputs.reserve(analyzed.size());
    for (auto& doc : analyzed) {
        vocabulary.insert(doc.keyword_terms.begin(), doc.keyword_terms.end());
        inputs.push_back({std::move(doc.id), std::move(doc.tokens)});
    }
    return build_index(std::move(inputs), analyzer.fingerprint(),
                       std::vector<std::string>(vocabulary.begin(), vocabulary.end()));
}

} // namespace lexret
