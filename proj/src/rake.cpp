#include "lexret/rake.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>

#include "lexret/errors.hpp"

namespace lexret {
namespace {

constexpr bool is_alnum(char c) noexcept {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

constexpr bool is_space(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Content words of the candidate phrases, as offsets into a lowercased copy
// of the input. phrases holds [begin, end) ranges into words, in source order;
// repeated phrases appear repeatedly.
struct Candidates {
    std::string lower;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> words; // offset, length
    std::vector<std::pair<std::uint32_t, std::uint32_t>> phrases;

    [[nodiscard]] std::string_view word(std::size_t i) const {
        return std::string_view(lower).substr(words[i].first, words[i].second);
    }
};

Candidates candidate_phrases(std::string_view raw, const StopwordList& stopwords) {
    Candidates c;
    c.lower = ascii_lower(raw);
    const std::string_view text = c.lower;
    std::uint32_t phrase_start = 0;
    auto flush = [&] {
        const auto n = static_cast<std::uint32_t>(c.words.size());
        if (n > phrase_start) {
            c.phrases.emplace_back(phrase_start, n);
        }
        phrase_start = n;
    };

    std::size_t i = 0;
    while (i < text.size()) {
        bool punctuation = false;
        while (i < text.size() && !is_alnum(text[i])) {
            punctuation = punctuation || !is_space(text[i]);
            ++i;
        }
        if (punctuation) {
            flush();
        }
        const auto start = i;
        while (i < text.size() && is_alnum(text[i])) {
            ++i;
        }
        if (i == start) {
            break;
        }
        if (stopwords.contains(text.substr(start, i - start))) {
            flush();
        } else {
            c.words.emplace_back(static_cast<std::uint32_t>(start), static_cast<std::uint32_t>(i - start));
        }
    }
    flush();
    return c;
}

std::size_t distinct_words(const Candidates& c) {
    std::unordered_set<std::string_view> seen;
    for (std::size_t i = 0; i < c.words.size(); ++i) {
        seen.insert(c.word(i));
    }
    return seen.size();
}

std::size_t default_top_k(std::size_t content_words) {
    return std::max<std::size_t>(10, (content_words + 2) / 3);
}

std::vector<KeywordPhrase> score_phrases(const Candidates& c, std::size_t top_k) {
    struct Stats {
        double degree = 0.0;
        double frequency = 0.0;
    };
    std::unordered_map<std::string_view, Stats> stats;
    for (const auto& [b, e] : c.phrases) {
        const auto len = static_cast<double>(e - b);
        for (auto i = b; i < e; ++i) {
            auto& s = stats[c.word(i)];
            s.degree += len;
            s.frequency += 1.0;
        }
    }

    std::unordered_map<std::string, double, StringHash, std::equal_to<>> unique;
    std::string text;
    for (const auto& [b, e] : c.phrases) {
        text.clear();
        for (auto i = b; i < e; ++i) {
            if (i > b) {
                text += ' ';
            }
            text += c.word(i);
        }
        if (unique.find(std::string_view(text)) != unique.end()) {
            continue;
        }
        double score = 0.0;
        for (auto i = b; i < e; ++i) {
            const auto& s = stats.at(c.word(i));
            score += s.degree / s.frequency;
        }
        unique.emplace(text, score);
    }

    std::vector<KeywordPhrase> out;
    out.reserve(unique.size());
    for (auto& [phrase, score] : unique) {
        out.push_back({phrase, score});
    }
    const auto better = [](const KeywordPhrase& a, const KeywordPhrase& b) {
        if (a.score != b.score) {
            return a.score > b.score;
        }
        return a.phrase < b.phrase;
    };
    const auto keep = std::min(top_k, out.size());
    std::partial_sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(keep), out.end(), better);
    out.resize(keep);
    return out;
}

} // namespace

std::vector<KeywordPhrase> rake_extract(std::string_view raw, const StopwordList& stopwords,
                                        std::size_t top_k) {
    if (top_k < 1) {
        throw DomainError("rake_extract: top_k must be at least 1");
    }
    return score_phrases(candidate_phrases(raw, stopwords), top_k);
}

std::vector<KeywordPhrase> rake_extract_default(std::string_view raw, const StopwordList& stopwords) {
    const auto c = candidate_phrases(raw, stopwords);
    return score_phrases(c, default_top_k(distinct_words(c)));
}

std::size_t rake_content_word_count(std::string_view raw, const StopwordList& stopwords) {
    return distinct_words(candidate_phrases(raw, stopwords));
}

std::size_t rake_default_top_k(std::string_view raw, const StopwordList& stopwords) {
    return default_top_k(rake_content_word_count(raw, stopwords));
}

} // namespace lexret
