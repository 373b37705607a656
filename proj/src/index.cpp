#include "lexret/index.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "lexret/errors.hpp"

namespace lexret {
namespace {

constexpr std::string_view kMagic{"LEXRIDX\0", 8};

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv1a(std::string_view bytes) noexcept {
    std::uint64_t h = kFnvOffset;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= kFnvPrime;
    }
    return h;
}

class Writer {
public:
    void bytes(std::string_view s) { out_.append(s); }

    template <typename T>
    void uint(T value) {
        for (std::size_t i = 0; i < sizeof(T); ++i) {
            out_.push_back(static_cast<char>((value >> (8 * i)) & 0xFFU));
        }
    }

    void string(std::string_view s) {
        uint(static_cast<std::uint32_t>(s.size()));
        bytes(s);
    }

    std::string take() { return std::move(out_); }
    [[nodiscard]] std::string_view view() const { return out_; }

private:
    std::string out_;
};

class Reader {
public:
    explicit Reader(std::string_view data) : data_(data) {}

    std::string_view bytes(std::size_t n) {
        if (n > data_.size() - pos_) {
            throw FormatError("corrupt index file: truncated at byte " + std::to_string(pos_));
        }
        auto out = data_.substr(pos_, n);
        pos_ += n;
        return out;
    }

    template <typename T>
    T uint() {
        auto raw = bytes(sizeof(T));
        T value = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i) {
            value |= static_cast<T>(static_cast<unsigned char>(raw[i])) << (8 * i);
        }
        return value;
    }

    std::string string() {
        const auto len = uint<std::uint32_t>();
        return std::string(bytes(len));
    }

    [[nodiscard]] std::size_t position() const noexcept { return pos_; }
    [[nodiscard]] std::size_t remaining() const noexcept { return data_.size() - pos_; }

private:
    std::string_view data_;
    std::size_t pos_ = 0;
};

[[noreturn]] void corrupt(const std::string& what) {
    throw FormatError("corrupt index file: " + what);
}

} // namespace

bool is_valid_doc_id(std::string_view id) noexcept {
    return !id.empty() && std::none_of(id.begin(), id.end(), [](char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    });
}

CorpusIndex::CorpusIndex(const CorpusIndex& other)
    : fingerprint_(other.fingerprint_), doc_ids_(other.doc_ids_), doc_len_(other.doc_len_),
      terms_(other.terms_), keyword_(other.keyword_), offsets_(other.offsets_),
      postings_(other.postings_) {
    finalize();
}

CorpusIndex& CorpusIndex::operator=(const CorpusIndex& other) {
    if (this != &other) {
        CorpusIndex copy(other);
        *this = std::move(copy);
    }
    return *this;
}

std::optional<DocOrdinal> CorpusIndex::find_doc(std::string_view id) const {
    if (auto it = doc_lookup_.find(id); it != doc_lookup_.end()) {
        return it->second;
    }
    return std::nullopt;
}

std::optional<TermOrdinal> CorpusIndex::find_term(std::string_view term) const {
    if (auto it = term_lookup_.find(term); it != term_lookup_.end()) {
        return it->second;
    }
    return std::nullopt;
}

std::span<const Posting> CorpusIndex::postings(TermOrdinal term) const {
    const auto begin = offsets_.at(term);
    const auto end = offsets_.at(term + 1);
    return std::span<const Posting>(postings_).subspan(begin, end - begin);
}

std::uint32_t CorpusIndex::df(TermOrdinal term) const {
    return static_cast<std::uint32_t>(offsets_.at(term + 1) - offsets_.at(term));
}

std::uint32_t CorpusIndex::df(std::string_view term) const {
    const auto t = find_term(term);
    return t ? df(*t) : 0;
}

std::size_t CorpusIndex::num_keywords() const noexcept {
    return static_cast<std::size_t>(std::count(keyword_.begin(), keyword_.end(), 1));
}

bool CorpusIndex::operator==(const CorpusIndex& other) const {
    return fingerprint_ == other.fingerprint_ && doc_ids_ == other.doc_ids_ &&
           doc_len_ == other.doc_len_ && terms_ == other.terms_ && keyword_ == other.keyword_ &&
           offsets_ == other.offsets_ && postings_ == other.postings_;
}

void CorpusIndex::finalize() {
    total_tokens_ = 0;
    for (auto len : doc_len_) {
        total_tokens_ += len;
    }
    avg_len_ = doc_ids_.empty() ? 0.0
                                : static_cast<double>(total_tokens_) /
                                      static_cast<double>(doc_ids_.size());
    term_lookup_.clear();
    term_lookup_.reserve(terms_.size());
    for (TermOrdinal t = 0; t < terms_.size(); ++t) {
        term_lookup_.emplace(terms_[t], t);
    }
    doc_lookup_.clear();
    doc_lookup_.reserve(doc_ids_.size());
    for (DocOrdinal d = 0; d < doc_ids_.size(); ++d) {
        doc_lookup_.emplace(doc_ids_[d], d);
    }
}

CorpusIndex build_index(std::vector<DocumentInput> docs, std::uint64_t fingerprint,
                        const std::vector<std::string>& keyword_terms) {
    if (docs.empty()) {
        throw IndexBuildError("nothing to index: the corpus has no documents");
    }
    for (const auto& doc : docs) {
        if (!is_valid_doc_id(doc.id)) {
            throw IndexBuildError("invalid document id '" + doc.id +
                                  "': ids must be non-empty and contain no whitespace");
        }
    }
    std::sort(docs.begin(), docs.end(),
              [](const DocumentInput& a, const DocumentInput& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < docs.size(); ++i) {
        if (docs[i].id == docs[i - 1].id) {
            throw IndexBuildError("duplicate document id '" + docs[i].id + "'");
        }
    }

    CorpusIndex index;
    index.fingerprint_ = fingerprint;
    index.doc_ids_.reserve(docs.size());
    index.doc_len_.reserve(docs.size());

    std::unordered_map<std::string, std::vector<Posting>, StringHash, std::equal_to<>> lists;
    std::unordered_map<std::string_view, std::uint32_t> counts;
    for (DocOrdinal d = 0; d < docs.size(); ++d) {
        const auto& doc = docs[d];
        index.doc_ids_.push_back(doc.id);
        index.doc_len_.push_back(static_cast<std::uint32_t>(doc.tokens.size()));
        counts.clear();
        for (const auto& token : doc.tokens) {
            ++counts[token];
        }
        for (const auto& [term, tf] : counts) {
            auto it = lists.find(term);
            if (it == lists.end()) {
                it = lists.emplace(std::string(term), std::vector<Posting>{}).first;
            }
            it->second.push_back({d, tf});
        }
    }

    index.terms_.reserve(lists.size());
    for (const auto& entry : lists) {
        index.terms_.push_back(entry.first);
    }
    std::sort(index.terms_.begin(), index.terms_.end());

    const StringSet keywords(keyword_terms.begin(), keyword_terms.end());
    index.offsets_.reserve(index.terms_.size() + 1);
    index.offsets_.push_back(0);
    index.keyword_.reserve(index.terms_.size());
    for (const auto& term : index.terms_) {
        const auto& list = lists.find(term)->second;
        index.postings_.insert(index.postings_.end(), list.begin(), list.end());
        index.offsets_.push_back(index.postings_.size());
        index.keyword_.push_back(keywords.contains(term) ? 1 : 0);
    }
    index.finalize();
    return index;
}

std::string serialize_index(const CorpusIndex& index) {
    Writer w;
    w.bytes(kMagic);
    w.uint(kIndexFormatVersion);
    w.uint(index.fingerprint());
    w.uint(static_cast<std::uint32_t>(index.num_docs()));
    for (DocOrdinal d = 0; d < index.num_docs(); ++d) {
        w.string(index.doc_id(d));
        w.uint(index.doc_len(d));
    }
    w.uint(static_cast<std::uint32_t>(index.num_terms()));
    for (TermOrdinal t = 0; t < index.num_terms(); ++t) {
        w.string(index.terms()[t]);
        w.uint(static_cast<std::uint8_t>(index.is_keyword(t) ? 1 : 0));
        const auto list = index.postings(t);
        w.uint(static_cast<std::uint32_t>(list.size()));
        for (const auto& p : list) {
            w.uint(p.doc);
            w.uint(p.tf);
        }
    }
    w.uint(fnv1a(w.view()));
    return w.take();
}

CorpusIndex deserialize_index(std::string_view bytes) {
    Reader r(bytes);
    if (bytes.size() < kMagic.size() || r.bytes(kMagic.size()) != kMagic) {
        corrupt("bad magic, not an index file");
    }
    const auto version = r.uint<std::uint32_t>();
    if (version != kIndexFormatVersion) {
        throw VersionError("index format version " + std::to_string(version) +
                           " is not supported (expected " +
                           std::to_string(kIndexFormatVersion) + ")");
    }

    CorpusIndex index;
    index.fingerprint_ = r.uint<std::uint64_t>();
    const auto num_docs = r.uint<std::uint32_t>();
    if (num_docs == 0) {
        corrupt("zero documents");
    }
    // Every document needs at least 8 bytes; reject absurd counts early.
    if (num_docs > r.remaining() / 8) {
        corrupt("truncated document table");
    }
    index.doc_ids_.reserve(num_docs);
    index.doc_len_.reserve(num_docs);
    for (std::uint32_t d = 0; d < num_docs; ++d) {
        auto id = r.string();
        if (!is_valid_doc_id(id) || (d > 0 && !(index.doc_ids_.back() < id))) {
            corrupt("document ids are not valid, unique and sorted");
        }
        index.doc_ids_.push_back(std::move(id));
        index.doc_len_.push_back(r.uint<std::uint32_t>());
    }

    const auto num_terms = r.uint<std::uint32_t>();
    if (num_terms > r.remaining() / 9) {
        corrupt("truncated term table");
    }
    std::vector<std::uint64_t> tf_sum(num_docs, 0);
    index.terms_.reserve(num_terms);
    index.offsets_.reserve(num_terms + 1);
    index.offsets_.push_back(0);
    for (std::uint32_t t = 0; t < num_terms; ++t) {
        auto term = r.string();
        if (term.empty() || (t > 0 && !(index.terms_.back() < term))) {
            corrupt("terms are not unique and sorted");
        }
        index.terms_.push_back(std::move(term));
        const auto keyword = r.uint<std::uint8_t>();
        if (keyword > 1) {
            corrupt("bad keyword flag");
        }
        index.keyword_.push_back(keyword);
        const auto df = r.uint<std::uint32_t>();
        if (df == 0 || df > num_docs) {
            corrupt("document frequency out of range for term '" + index.terms_.back() + "'");
        }
        for (std::uint32_t i = 0; i < df; ++i) {
            Posting p{r.uint<std::uint32_t>(), r.uint<std::uint32_t>()};
            if (p.doc >= num_docs || p.tf == 0 ||
                (i > 0 && index.postings_.back().doc >= p.doc)) {
                corrupt("bad posting list for term '" + index.terms_.back() + "'");
            }
            tf_sum[p.doc] += p.tf;
            index.postings_.push_back(p);
        }
        index.offsets_.push_back(index.postings_.size());
    }

    const auto checked = bytes.substr(0, r.position());
    const auto checksum = r.uint<std::uint64_t>();
    if (checksum != fnv1a(checked)) {
        corrupt("checksum mismatch");
    }
    if (r.remaining() != 0) {
        corrupt("trailing bytes after checksum");
    }
    for (std::uint32_t d = 0; d < num_docs; ++d) {
        if (tf_sum[d] != index.doc_len_[d]) {
            corrupt("document length of '" + index.doc_ids_[d] + "' disagrees with its postings");
        }
    }
    index.finalize();
    return index;
}

void save_index(const CorpusIndex& index, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write index file " + path.string());
    }
    const auto bytes = serialize_index(index);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("failed writing index file " + path.string());
    }
}

CorpusIndex load_index(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read index file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return deserialize_index(buf.str());
    } catch (const VersionError& e) {
        throw VersionError(path.string() + ": " + e.what());
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

} // namespace lexret
