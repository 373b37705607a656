#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexret/textproc.hpp"

namespace lexret {

/// Dense document number. Ordinals follow ascending DocId order, so sorting
/// postings by ordinal sorts them by DocId.
using DocOrdinal = std::uint32_t;
using TermOrdinal = std::uint32_t;

struct Posting {
    DocOrdinal doc = 0;
    std::uint32_t tf = 0;

    bool operator==(const Posting&) const = default;
};

struct DocumentInput {
    std::string id;
    TokenStream tokens;
};

/// True when id is non-empty and contains no whitespace.
bool is_valid_doc_id(std::string_view id) noexcept;

/// Immutable inverted index with the collection statistics the rankers need:
/// N, per-term df and postings (doc, tf), per-document length and the mean
/// document length.
class CorpusIndex {
public:
    CorpusIndex() = default;
    CorpusIndex(const CorpusIndex& other);
    CorpusIndex& operator=(const CorpusIndex& other);
    CorpusIndex(CorpusIndex&&) noexcept = default;
    CorpusIndex& operator=(CorpusIndex&&) noexcept = default;
    ~CorpusIndex() = default;

    [[nodiscard]] std::size_t num_docs() const noexcept { return doc_ids_.size(); }
    [[nodiscard]] std::span<const std::string> doc_ids() const noexcept { return doc_ids_; }
    [[nodiscard]] const std::string& doc_id(DocOrdinal doc) const { return doc_ids_.at(doc); }
    [[nodiscard]] std::optional<DocOrdinal> find_doc(std::string_view id) const;
    [[nodiscard]] std::uint32_t doc_len(DocOrdinal doc) const { return doc_len_.at(doc); }
    [[nodiscard]] double avg_len() const noexcept { return avg_len_; }
    [[nodiscard]] std::uint64_t total_tokens() const noexcept { return total_tokens_; }

    /// Vocabulary in ascending order.
    [[nodiscard]] std::span<const std::string> terms() const noexcept { return terms_; }
    [[nodiscard]] std::size_t num_terms() const noexcept { return terms_.size(); }
    [[nodiscard]] std::optional<TermOrdinal> find_term(std::string_view term) const;
    [[nodiscard]] std::span<const Posting> postings(TermOrdinal term) const;
    [[nodiscard]] std::uint32_t df(TermOrdinal term) const;
    /// 0 for terms outside the vocabulary.
    [[nodiscard]] std::uint32_t df(std::string_view term) const;

    /// Whether the term belongs to the corpus keyword vocabulary (RAKE).
    [[nodiscard]] bool is_keyword(TermOrdinal term) const { return keyword_.at(term) != 0; }
    [[nodiscard]] std::size_t num_keywords() const noexcept;

    [[nodiscard]] std::uint64_t fingerprint() const noexcept { return fingerprint_; }

    bool operator==(const CorpusIndex& other) const;

private:
    friend CorpusIndex build_index(std::vector<DocumentInput>, std::uint64_t,
                                   const std::vector<std::string>&);
    friend CorpusIndex deserialize_index(std::string_view bytes);

    void finalize();

    std::uint64_t fingerprint_ = 0;
    std::vector<std::string> doc_ids_;
    std::vector<std::uint32_t> doc_len_;
    std::vector<std::string> terms_;
    std::vector<std::uint8_t> keyword_;
    std::vector<std::uint64_t> offsets_; // terms_.size() + 1 entries into postings_
    std::vector<Posting> postings_;

    // Derived on build / load. The lookups view into doc_ids_ and terms_,
    // which is why copies rebuild them.
    double avg_len_ = 0.0;
    std::uint64_t total_tokens_ = 0;
    std::unordered_map<std::string_view, TermOrdinal> term_lookup_;
    std::unordered_map<std::string_view, DocOrdinal> doc_lookup_;
};

/// Builds the index. Tokens must already be normalized. keyword_terms marks
/// the RAKE keyword vocabulary; entries that never occur in the corpus are
/// ignored.
///
/// Throws IndexBuildError on an empty corpus, an invalid DocId or a duplicate
/// DocId (the message names the id).
CorpusIndex build_index(std::vector<DocumentInput> docs, std::uint64_t fingerprint,
                        const std::vector<std::string>& keyword_terms = {});

/// Versioned little-endian binary layout, see docs/index_format.md.
inline constexpr std::uint32_t kIndexFormatVersion = 1;

std::string serialize_index(const CorpusIndex& index);
CorpusIndex deserialize_index(std::string_view bytes);

void save_index(const CorpusIndex& index, const std::filesystem::path& path);
CorpusIndex load_index(const std::filesystem::path& path);

} // namespace lexret
