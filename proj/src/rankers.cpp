#include "lexret/rankers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lexret/errors.hpp"

namespace lexret {
namespace {

void check_df(std::uint64_t num_docs, std::uint64_t df, const char* where) {
    if (num_docs == 0 || df == 0 || df > num_docs) {
        throw DomainError(std::string(where) + ": document frequency " + std::to_string(df) +
                          " outside [1, " + std::to_string(num_docs) + "]");
    }
}

double length_norm(const TermContext& ctx, const BM25Params& p) {
    return 1.0 - p.b + p.b * (ctx.doc_len / ctx.avg_len);
}

// Query term -> occurrence count, in term order.
std::map<std::string, std::uint32_t, std::less<>> term_counts(const TokenStream& tokens) {
    std::map<std::string, std::uint32_t, std::less<>> counts;
    for (const auto& t : tokens) {
        ++counts[t];
    }
    return counts;
}

} // namespace

std::string_view to_string(Variant variant) noexcept {
    switch (variant) {
    case Variant::Atire:
        return "atire";
    case Variant::Okapi:
        return "okapi";
    case Variant::BM25L:
        return "bm25l";
    case Variant::BM25Plus:
        return "bm25plus";
    }
    return "unknown";
}

double BM25Params::delta_for(Variant variant) const noexcept {
    if (delta) {
        return *delta;
    }
    switch (variant) {
    case Variant::BM25L:
        return 0.5;
    case Variant::BM25Plus:
        return 1.0;
    default:
        return 0.0;
    }
}

void BM25Params::validate() const {
    if (!(k1 > 0.0) || !std::isfinite(k1)) {
        throw DomainError("BM25 k1 must be > 0");
    }
    if (!(b >= 0.0 && b <= 1.0)) {
        throw DomainError("BM25 b must lie in [0, 1]");
    }
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw DomainError("BM25 epsilon must be >= 0");
    }
    if (delta && (!(*delta >= 0.0) || !std::isfinite(*delta))) {
        throw DomainError("BM25 delta must be >= 0");
    }
}

double tfidf_weight(std::uint64_t tf, std::uint64_t num_docs, std::uint64_t df) {
    check_df(num_docs, df, "tfidf_weight");
    return static_cast<double>(tf) *
           std::log(static_cast<double>(num_docs) / static_cast<double>(df));
}

double bm25_idf(Variant variant, std::uint64_t num_docs, std::uint64_t df) {
    check_df(num_docs, df, "bm25_idf");
    const auto n = static_cast<double>(num_docs);
    const auto f = static_cast<double>(df);
    switch (variant) {
    case Variant::Atire:
        return std::log(n / f);
    case Variant::Okapi:
        return std::log((n - f + 0.5) / (f + 0.5));
    case Variant::BM25L:
        return std::log((n + 1.0) / (f + 0.5));
    case Variant::BM25Plus:
        return std::log((n + 1.0) / f);
    }
    return 0.0;
}

double bm25_term_score(std::uint64_t tf, std::uint64_t df, const TermContext& context,
                       const BM25Params& params, Variant variant) {
    double idf = bm25_idf(variant, context.num_docs, df);
    if (!(context.avg_len > 0.0)) {
        throw DomainError("bm25_term_score: average document length must be > 0");
    }
    if (tf == 0) {
        return 0.0;
    }
    const auto f = static_cast<double>(tf);
    const auto k1 = params.k1;
    const auto norm = length_norm(context, params);
    switch (variant) {
    case Variant::Atire:
        return idf * ((k1 + 1.0) * f) / (k1 * norm + f);
    case Variant::Okapi:
        if (idf < 0.0) {
            idf = params.epsilon * context.okapi_mean_idf;
        }
        return idf * ((k1 + 1.0) * f) / (k1 * norm + f);
    case Variant::BM25L: {
        const auto ctd = f / norm;
        const auto delta = params.delta_for(variant);
        return idf * (k1 + 1.0) * (ctd + delta) / (k1 + ctd + delta);
    }
    case Variant::BM25Plus:
        return idf * (((k1 + 1.0) * f) / (k1 * norm + f) + params.delta_for(variant));
    }
    return 0.0;
}

double fuse_product(double bm25, double cosine) noexcept {
    return bm25 * cosine;
}

SparseVector::SparseVector(std::initializer_list<std::pair<const std::string, double>> entries) {
    for (const auto& [term, weight] : entries) {
        set(term, weight);
    }
}

void SparseVector::set(const std::string& term, double weight) {
    if (weight == 0.0) {
        weights_.erase(term);
    } else {
        weights_[term] = weight;
    }
}

void SparseVector::add(const std::string& term, double weight) {
    set(term, get(term) + weight);
}

double SparseVector::get(std::string_view term) const {
    auto it = weights_.find(term);
    return it == weights_.end() ? 0.0 : it->second;
}

double SparseVector::norm() const {
    double sum = 0.0;
    for (const auto& [_, w] : weights_) {
        sum += w * w;
    }
    return std::sqrt(sum);
}

double cosine_similarity(const SparseVector& a, const SparseVector& b) {
    const auto na = a.norm();
    const auto nb = b.norm();
    if (na == 0.0 || nb == 0.0) {
        return 0.0;
    }
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& large = a.size() <= b.size() ? b : a;
    double dot = 0.0;
    for (const auto& [term, w] : small.entries()) {
        dot += w * large.get(term);
    }
    return dot / (na * nb);
}

Scorer Scorer::parse(std::string_view name) {
    const auto n = ascii_lower(name);
    if (n == "tfidf_cos" || n == "tfidf") {
        return {ScorerKind::TfidfCos};
    }
    if (n == "bm25" || n == "bm25_atire") {
        return {ScorerKind::BM25, Variant::Atire};
    }
    if (n == "bm25_okapi" || n == "okapi") {
        return {ScorerKind::BM25, Variant::Okapi};
    }
    if (n == "bm25l") {
        return {ScorerKind::BM25, Variant::BM25L};
    }
    if (n == "bm25plus" || n == "bm25+") {
        return {ScorerKind::BM25, Variant::BM25Plus};
    }
    if (n == "fused") {
        return {ScorerKind::Fused};
    }
    if (n == "rake_tfidf") {
        return {ScorerKind::RakeTfidf};
    }
    if (n == "commonwords_bm25") {
        return {ScorerKind::CommonWordsBM25};
    }
    if (n == "embed") {
        return {ScorerKind::Embed};
    }
    throw ConfigError("unknown scorer '" + std::string(name) +
                      "' (expected tfidf_cos, bm25, bm25_okapi, bm25l, bm25plus, fused, "
                      "rake_tfidf, commonwords_bm25 or embed)");
}

std::vector<Scorer> Scorer::parse_list(std::string_view comma_separated) {
    std::vector<Scorer> out;
    std::size_t pos = 0;
    while (pos <= comma_separated.size()) {
        auto end = comma_separated.find(',', pos);
        if (end == std::string_view::npos) {
            end = comma_separated.size();
        }
        auto item = comma_separated.substr(pos, end - pos);
        while (!item.empty() && item.front() == ' ') {
            item.remove_prefix(1);
        }
        while (!item.empty() && item.back() == ' ') {
            item.remove_suffix(1);
        }
        if (!item.empty()) {
            out.push_back(parse(item));
        }
        pos = end + 1;
    }
    if (out.empty()) {
        throw ConfigError("empty scorer list");
    }
    return out;
}

std::string Scorer::name() const {
    switch (kind) {
    case ScorerKind::TfidfCos:
        return "tfidf_cos";
    case ScorerKind::BM25:
        switch (variant) {
        case Variant::Atire:
            return "bm25";
        case Variant::Okapi:
            return "bm25_okapi";
        case Variant::BM25L:
            return "bm25l";
        case Variant::BM25Plus:
            return "bm25plus";
        }
        break;
    case ScorerKind::Fused:
        return "fused";
    case ScorerKind::RakeTfidf:
        return "rake_tfidf";
    case ScorerKind::CommonWordsBM25:
        return "commonwords_bm25";
    case ScorerKind::Embed:
        return "embed";
    }
    return "unknown";
}

bool ranks_before(const ScoredDoc& a, const ScoredDoc& b) noexcept {
    if (a.score != b.score) {
        return a.score > b.score;
    }
    return a.doc_id < b.doc_id;
}

void sort_ranking(Ranking& ranking) {
    std::sort(ranking.begin(), ranking.end(), ranks_before);
}

Ranking top_n(Ranking ranking, std::size_t n) {
    if (ranking.size() > n) {
        ranking.resize(n);
    }
    return ranking;
}

Searcher::Searcher(const CorpusIndex& index, BM25Params params, const EmbeddingStore* embeddings)
    : index_(index), params_(params), embeddings_(embeddings) {
    params_.validate();
    const auto n = index_.num_docs();
    if (n == 0) {
        throw DomainError("cannot search an empty index");
    }
    idf_.resize(index_.num_terms());
    std::vector<double> tfidf_sq(n, 0.0);
    std::vector<double> keyword_sq(n, 0.0);
    double okapi_sum = 0.0;
    for (TermOrdinal t = 0; t < index_.num_terms(); ++t) {
        const auto df = index_.df(t);
        idf_[t] = std::log(static_cast<double>(n) / static_cast<double>(df));
        okapi_sum += bm25_idf(Variant::Okapi, n, df);
        const bool keyword = index_.is_keyword(t);
        for (const auto& p : index_.postings(t)) {
            const double w = static_cast<double>(p.tf) * idf_[t];
            tfidf_sq[p.doc] += w * w;
            if (keyword) {
                keyword_sq[p.doc] += w * w;
            }
        }
    }
    okapi_mean_idf_ = index_.num_terms() == 0 ? 0.0
                                               : okapi_sum / static_cast<double>(index_.num_terms());
    tfidf_norm_.resize(n);
    keyword_norm_.resize(n);
    for (std::size_t d = 0; d < n; ++d) {
        tfidf_norm_[d] = std::sqrt(tfidf_sq[d]);
        keyword_norm_[d] = std::sqrt(keyword_sq[d]);
    }
}

std::vector<double> Searcher::bm25_scores(const AnalyzedQuery& query, Variant variant) const {
    std::vector<double> acc(index_.num_docs(), 0.0);
    TermContext ctx;
    ctx.num_docs = index_.num_docs();
    ctx.avg_len = index_.avg_len();
    ctx.okapi_mean_idf = okapi_mean_idf_;
    if (!(ctx.avg_len > 0.0)) {
        return acc; // every document is empty, nothing can match
    }
    for (const auto& [term, count] : term_counts(query.tokens)) {
        const auto t = index_.find_term(term);
        if (!t) {
            continue;
        }
        const auto df = index_.df(*t);
        for (const auto& p : index_.postings(*t)) {
            ctx.doc_len = index_.doc_len(p.doc);
            acc[p.doc] += count * bm25_term_score(p.tf, df, ctx, params_, variant);
        }
    }
    return acc;
}

std::vector<double> Searcher::cosine_scores(const std::vector<std::string>& terms,
                                            bool keywords_only) const {
    // terms here are the tokens to weight; callers pre-filter for RAKE.
    std::vector<double> dot(index_.num_docs(), 0.0);
    double query_sq = 0.0;
    for (const auto& [term, count] : term_counts(terms)) {
        const auto t = index_.find_term(term);
        if (!t || idf_[*t] == 0.0 || (keywords_only && !index_.is_keyword(*t))) {
            continue;
        }
        const double qw = count * idf_[*t];
        query_sq += qw * qw;
        for (const auto& p : index_.postings(*t)) {
            dot[p.doc] += qw * (static_cast<double>(p.tf) * idf_[*t]);
        }
    }
    const auto& norms = keywords_only ? keyword_norm_ : tfidf_norm_;
    const double query_norm = std::sqrt(query_sq);
    for (std::size_t d = 0; d < dot.size(); ++d) {
        if (query_norm == 0.0 || norms[d] == 0.0) {
            dot[d] = 0.0;
        } else {
            dot[d] = std::clamp(dot[d] / (query_norm * norms[d]), 0.0, 1.0);
        }
    }
    return dot;
}

std::vector<double> Searcher::common_word_counts(const AnalyzedQuery& query) const {
    std::vector<double> counts(index_.num_docs(), 0.0);
    for (const auto& [term, _] : term_counts(query.tokens)) {
        if (const auto t = index_.find_term(term)) {
            for (const auto& p : index_.postings(*t)) {
                counts[p.doc] += 1.0;
            }
        }
    }
    return counts;
}

std::vector<double> Searcher::embedding_scores(const AnalyzedQuery& query) const {
    if (embeddings_ == nullptr) {
        throw ConfigError("scorer 'embed' needs an embedding store");
    }
    const auto* query_chunks = embeddings_->find(query.id);
    if (query_chunks == nullptr || query_chunks->empty()) {
        throw ConfigError("no embedding for query '" + query.id + "'");
    }
    const auto& query_vec = query_chunks->front();
    std::vector<double> scores(index_.num_docs(), 0.0);
    for (DocOrdinal d = 0; d < index_.num_docs(); ++d) {
        const auto* chunks = embeddings_->find(index_.doc_id(d));
        if (chunks == nullptr) {
            throw ConfigError("no embedding for document '" + index_.doc_id(d) + "'");
        }
        scores[d] = aggregate_chunk_similarity(query_vec, *chunks);
    }
    return scores;
}

std::vector<double> Searcher::scores(const AnalyzedQuery& query, Scorer scorer) const {
    if (query.fingerprint != index_.fingerprint()) {
        throw PipelineMismatchError(
            "query '" + query.id +
            "' was analysed with a different pipeline than the index (fingerprint mismatch)");
    }
    switch (scorer.kind) {
    case ScorerKind::TfidfCos:
        return cosine_scores(query.tokens, false);
    case ScorerKind::BM25:
        return bm25_scores(query, scorer.variant);
    case ScorerKind::Fused: {
        auto bm25 = bm25_scores(query, Variant::Atire);
        const auto cos = cosine_scores(query.tokens, false);
        for (std::size_t d = 0; d < bm25.size(); ++d) {
            bm25[d] = fuse_product(bm25[d], cos[d]);
        }
        return bm25;
    }
    case ScorerKind::RakeTfidf: {
        const StringSet keywords(query.keyword_terms.begin(), query.keyword_terms.end());
        TokenStream restricted;
        for (const auto& t : query.tokens) {
            if (keywords.contains(t)) {
                restricted.push_back(t);
            }
        }
        return cosine_scores(restricted, true);
    }
    case ScorerKind::CommonWordsBM25: {
        auto bm25 = bm25_scores(query, Variant::Atire);
        const auto common = common_word_counts(query);
        for (std::size_t d = 0; d < bm25.size(); ++d) {
            bm25[d] *= common[d];
        }
        return bm25;
    }
    case ScorerKind::Embed:
        return embedding_scores(query);
    }
    throw ConfigError("unsupported scorer");
}

Ranking Searcher::rank(const AnalyzedQuery& query, Scorer scorer) const {
    const auto raw = scores(query, scorer);
    std::vector<DocOrdinal> order(raw.size());
    std::iota(order.begin(), order.end(), DocOrdinal{0});
    // Ordinals follow DocId order, so ties fall back to ascending DocId.
    std::sort(order.begin(), order.end(), [&](DocOrdinal a, DocOrdinal b) {
        if (raw[a] != raw[b]) {
            return raw[a] > raw[b];
        }
        return a < b;
    });
    Ranking ranking;
    ranking.reserve(order.size());
    for (auto d : order) {
        ranking.push_back({index_.doc_id(d), raw[d]});
    }
    return ranking;
}

Ranking score_query(const AnalyzedQuery& query, const CorpusIndex& index, Scorer scorer,
                    const BM25Params& params, const EmbeddingStore* embeddings) {
    return Searcher(index, params, embeddings).rank(query, scorer);
}

} // namespace lexret
