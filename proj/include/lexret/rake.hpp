#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lexret/textproc.hpp"

namespace lexret {

struct KeywordPhrase {
    std::string phrase; // lowercase words joined by single spaces
    double score = 0.0;

    bool operator==(const KeywordPhrase&) const = default;
};

/// Rapid Automatic Keyword Extraction.
///
/// Candidate phrases are maximal runs of words that are neither stopwords nor
/// separated by punctuation. Each word scores deg(w)/freq(w), where deg(w)
/// sums the lengths of the candidate phrases w occurs in and freq(w) counts
/// its occurrences. A phrase scores the sum of its word scores. Distinct
/// phrases are returned best first, ties by phrase text.
///
/// Throws DomainError when top_k < 1.
std::vector<KeywordPhrase> rake_extract(std::string_view raw, const StopwordList& stopwords,
                                        std::size_t top_k);

/// rake_extract with top_k = rake_default_top_k(raw, stopwords), in one pass.
std::vector<KeywordPhrase> rake_extract_default(std::string_view raw, const StopwordList& stopwords);

/// Number of distinct content words in the candidate phrases of raw.
std::size_t rake_content_word_count(std::string_view raw, const StopwordList& stopwords);

/// max(10, ceil(content words / 3)).
std::size_t rake_default_top_k(std::string_view raw, const StopwordList& stopwords);

} // namespace lexret
