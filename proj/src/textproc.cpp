#include "lexret/textproc.hpp"

#include <algorithm>
#include <optional>
#include <array>
#include <fstream>
#include <sstream>

#include "lexret/errors.hpp"

namespace lexret {
namespace {

// 179 entries. Entries with apostrophes never match a token produced by the
// splitter; they are kept so the list stays identical to its source.
constexpr std::array<std::string_view, 179> kEnglishStopwords = {
    "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "you're", "you've",
    "you'll", "you'd", "your", "yours", "yourself", "yourselves", "he", "him", "his",
    "himself", "she", "she's", "her", "hers", "herself", "it", "it's", "its", "itself", "they",
    "them", "their", "theirs", "themselves", "what", "which", "who", "whom", "this", "that",
    "that'll", "these", "those", "am", "is", "are", "was", "were", "be", "been", "being",
    "have", "has", "had", "having", "do", "does", "did", "doing", "a", "an", "the", "and",
    "but", "if", "or", "because", "as", "until", "while", "of", "at", "by", "for", "with",
    "about", "against", "between", "into", "through", "during", "before", "after", "above",
    "below", "to", "from", "up", "down", "in", "out", "on", "off", "over", "under", "again",
    "further", "then", "once", "here", "there", "when", "where", "why", "how", "all", "any",
    "both", "each", "few", "more", "most", "other", "some", "such", "no", "nor", "not", "only",
    "own", "same", "so", "than", "too", "very", "s", "t", "can", "will", "just", "don",
    "don't", "should", "should've", "now", "d", "ll", "m", "o", "re", "ve", "y", "ain", "aren",
    "aren't", "couldn", "couldn't", "didn", "didn't", "doesn", "doesn't", "hadn", "hadn't",
    "hasn", "hasn't", "haven", "haven't", "isn", "isn't", "ma", "mightn", "mightn't", "mustn",
    "mustn't", "needn", "needn't", "shan", "shan't", "shouldn", "shouldn't", "wasn", "wasn't",
    "weren", "weren't", "won", "won't", "wouldn", "wouldn't",
};

constexpr bool is_alnum(char c) noexcept {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

constexpr char to_lower(char c) noexcept {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool is_lower_alpha(std::string_view s) noexcept {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void fnv1a(std::uint64_t& h, std::string_view bytes) noexcept {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= kFnvPrime;
    }
}

} // namespace

PipelineConfig PipelineConfig::none() {
    return {.lowercase = false, .remove_noise = false, .remove_stopwords = false, .stem = false};
}

PipelineConfig PipelineConfig::standard() {
    return {.lowercase = true, .remove_noise = true, .remove_stopwords = true, .stem = false};
}

PipelineConfig PipelineConfig::full() {
    return {.lowercase = true, .remove_noise = true, .remove_stopwords = true, .stem = true};
}

PipelineConfig PipelineConfig::preset(std::string_view name) {
    const auto lowered = ascii_lower(name);
    if (lowered == "none") {
        return none();
    }
    if (lowered == "standard") {
        return standard();
    }
    if (lowered == "full") {
        return full();
    }
    throw ConfigError("unknown pipeline preset '" + std::string(name) +
                      "' (expected none, standard or full)");
}

StopwordList::StopwordList(std::initializer_list<std::string> words)
    : words_(words.begin(), words.end()) {}

StopwordList::StopwordList(StringSet words) : words_(std::move(words)) {}

const StopwordList& StopwordList::english() {
    static const StopwordList list = [] {
        StringSet words;
        for (auto w : kEnglishStopwords) {
            words.emplace(w);
        }
        return StopwordList(std::move(words));
    }();
    return list;
}

StopwordList StopwordList::parse(std::string_view text) {
    StringSet words;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        auto line = trim(text.substr(pos, end - pos));
        if (!line.empty() && line.front() != '#') {
            words.emplace(line);
        }
        pos = end + 1;
    }
    return StopwordList(std::move(words));
}

StopwordList StopwordList::from_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read stopword file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

bool StopwordList::contains(std::string_view word) const {
    return words_.find(word) != words_.end();
}

std::vector<std::string> StopwordList::sorted() const {
    std::vector<std::string> out(words_.begin(), words_.end());
    std::sort(out.begin(), out.end());
    return out;
}

bool is_all_digits(std::string_view token) noexcept {
    return !token.empty() &&
           std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), to_lower);
    return out;
}

TokenStream split_alnum(std::string_view raw) {
    TokenStream tokens;
    std::size_t i = 0;
    while (i < raw.size()) {
        while (i < raw.size() && !is_alnum(raw[i])) {
            ++i;
        }
        const auto start = i;
        while (i < raw.size() && is_alnum(raw[i])) {
            ++i;
        }
        if (i > start) {
            tokens.emplace_back(raw.substr(start, i - start));
        }
    }
    return tokens;
}

std::optional<std::string> normalize_token(std::string token, const PipelineConfig& config,
                                           const StopwordList& stopwords) {
    if (config.lowercase) {
        std::transform(token.begin(), token.end(), token.begin(), to_lower);
    }
    if (config.remove_noise && (is_all_digits(token) || token.size() < config.min_token_len)) {
        return std::nullopt;
    }
    if (config.remove_stopwords && stopwords.contains(token)) {
        return std::nullopt;
    }
    if (config.stem && is_lower_alpha(token)) {
        token = porter_stem(token);
    }
    return token;
}

TokenStream tokenize_normalize(std::string_view raw, const PipelineConfig& config,
                               const StopwordList& stopwords) {
    TokenStream tokens = split_alnum(raw);
    TokenStream out;
    out.reserve(tokens.size());
    for (auto& token : tokens) {
        if (auto t = normalize_token(std::move(token), config, stopwords)) {
            out.push_back(std::move(*t));
        }
    }
    return out;
}

std::uint64_t pipeline_fingerprint(const PipelineConfig& config, const StopwordList& stopwords) {
    std::uint64_t h = kFnvOffset;
    std::ostringstream head;
    head << "lexret-pipeline-v1|lc=" << config.lowercase << "|noise=" << config.remove_noise
         << "|stop=" << config.remove_stopwords << "|stem=" << config.stem
         << "|min=" << config.min_token_len << '|';
    fnv1a(h, head.str());
    for (const auto& w : stopwords.sorted()) {
        fnv1a(h, w);
        fnv1a(h, "\n");
    }
    return h;
}

} // namespace lexret
