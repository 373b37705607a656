#pragma once

#include <cstdint>
#include <functional>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace lexret {

using TokenStream = std::vector<std::string>;

/// Transparent hash so string-keyed unordered containers accept string_view lookups.
struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
        return std::hash<std::string_view>{}(s);
    }
};

using StringSet = std::unordered_set<std::string, StringHash, std::equal_to<>>;

/// Switches for the normalization pipeline. Stages run in a fixed order:
/// split, lowercase, noise removal, stopword removal, stemming.
struct PipelineConfig {
    bool lowercase = true;
    /// Drop all-digit tokens and tokens shorter than min_token_len.
    bool remove_noise = true;
    bool remove_stopwords = true;
    bool stem = false;
    std::size_t min_token_len = 2;

    static PipelineConfig none();
    static PipelineConfig standard();
    static PipelineConfig full();

    /// Accepts "none", "standard" or "full".
    static PipelineConfig preset(std::string_view name);

    bool operator==(const PipelineConfig&) const = default;
};

class StopwordList {
public:
    StopwordList() = default;
    StopwordList(std::initializer_list<std::string> words);
    explicit StopwordList(StringSet words);

    /// The bundled 179-word English list.
    static const StopwordList& english();

    /// One word per line, '#' lines and blank lines ignored.
    static StopwordList from_file(const std::filesystem::path& path);
    static StopwordList parse(std::string_view text);

    [[nodiscard]] bool contains(std::string_view word) const;
    [[nodiscard]] std::size_t size() const noexcept { return words_.size(); }
    [[nodiscard]] bool empty() const noexcept { return words_.empty(); }

    /// Words in ascending order; used for fingerprinting.
    [[nodiscard]] std::vector<std::string> sorted() const;

private:
    StringSet words_;
};

/// Maximal runs of ASCII alphanumerics, in source order, without normalization.
TokenStream split_alnum(std::string_view raw);

/// One token through lowercase, noise, stopword and stem stages; nullopt when
/// a stage drops it.
std::optional<std::string> normalize_token(std::string token, const PipelineConfig& config,
                                           const StopwordList& stopwords);

TokenStream tokenize_normalize(std::string_view raw, const PipelineConfig& config,
                               const StopwordList& stopwords);

/// Porter (1980) stemmer, reference-implementation behaviour. Input must be a
/// lowercase alphabetic word; anything else is returned unchanged.
std::string porter_stem(std::string_view word);

/// Stable 64-bit fingerprint of a pipeline configuration plus its stopword list.
std::uint64_t pipeline_fingerprint(const PipelineConfig& config, const StopwordList& stopwords);

bool is_all_digits(std::string_view token) noexcept;
std::string ascii_lower(std::string_view s);

} // namespace lexret
