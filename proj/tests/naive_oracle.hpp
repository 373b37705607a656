#pragma once

// Brute-force reference scorers for tests. Everything is recomputed from the
// raw token lists with no inverted index: N, df, lengths and weights come
// straight from the documents for every (query, document) pair.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lexret/embeddings.hpp"
#include "lexret/rankers.hpp"

namespace naive {

struct Doc {
    std::string id;
    std::vector<std::string> tokens;
    std::vector<std::string> keyword_terms;
};

struct Corpus {
    std::vector<Doc> docs;

    [[nodiscard]] std::size_t df(const std::string& term) const {
        std::size_t n = 0;
        for (const auto& d : docs) {
            if (std::find(d.tokens.begin(), d.tokens.end(), term) != d.tokens.end()) {
                ++n;
            }
        }
        return n;
    }

    [[nodiscard]] double avg_len() const {
        double total = 0.0;
        for (const auto& d : docs) {
            total += static_cast<double>(d.tokens.size());
        }
        return total / static_cast<double>(docs.size());
    }

    [[nodiscard]] std::set<std::string> vocabulary() const {
        std::set<std::string> v;
        for (const auto& d : docs) {
            v.insert(d.tokens.begin(), d.tokens.end());
        }
        return v;
    }
};

inline std::size_t count(const std::vector<std::string>& tokens, const std::string& term) {
    return static_cast<std::size_t>(std::count(tokens.begin(), tokens.end(), term));
}

inline std::map<std::string, std::size_t> counts(const std::vector<std::string>& tokens) {
    std::map<std::string, std::size_t> c;
    for (const auto& t : tokens) {
        ++c[t];
    }
    return c;
}

inline double okapi_mean_idf(const Corpus& c) {
    const auto vocab = c.vocabulary();
    if (vocab.empty()) {
        return 0.0;
    }
    const double n = static_cast<double>(c.docs.size());
    double sum = 0.0;
    for (const auto& t : vocab) {
        const double df = static_cast<double>(c.df(t));
        sum += std::log((n - df + 0.5) / (df + 0.5));
    }
    return sum / static_cast<double>(vocab.size());
}

inline double bm25(const Corpus& c, const std::vector<std::string>& query, const Doc& doc,
                   lexret::Variant variant, const lexret::BM25Params& p = {}) {
    const double n = static_cast<double>(c.docs.size());
    const double avg = c.avg_len();
    const double len = static_cast<double>(doc.tokens.size());
    const double mean_idf = okapi_mean_idf(c);
    double score = 0.0;
    for (const auto& [term, qtf] : counts(query)) {
        const double df = static_cast<double>(c.df(term));
        const double tf = static_cast<double>(count(doc.tokens, term));
        if (df == 0.0 || tf == 0.0) {
            continue;
        }
        const double k1 = p.k1;
        const double b = p.b;
        const double norm = 1.0 - b + b * len / avg;
        double s = 0.0;
        switch (variant) {
        case lexret::Variant::Atire:
            s = std::log(n / df) * (k1 + 1.0) * tf / (k1 * norm + tf);
            break;
        case lexret::Variant::Okapi: {
            double idf = std::log((n - df + 0.5) / (df + 0.5));
            if (idf < 0.0) {
                idf = p.epsilon * mean_idf;
            }
            s = idf * (k1 + 1.0) * tf / (k1 * norm + tf);
            break;
        }
        case lexret::Variant::BM25L: {
            const double delta = p.delta.value_or(0.5);
            const double ctd = tf / norm;
            s = std::log((n + 1.0) / (df + 0.5)) * (k1 + 1.0) * (ctd + delta) / (k1 + ctd + delta);
            break;
        }
        case lexret::Variant::BM25Plus: {
            const double delta = p.delta.value_or(1.0);
            s = std::log((n + 1.0) / df) * ((k1 + 1.0) * tf / (k1 * norm + tf) + delta);
            break;
        }
        }
        score += static_cast<double>(qtf) * s;
    }
    return score;
}

/// TF-IDF vector, optionally restricted to an allowed term set.
inline std::map<std::string, double> tfidf_vector(const Corpus& c,
                                                  const std::vector<std::string>& tokens,
                                                  const std::set<std::string>* allowed = nullptr) {
    const double n = static_cast<double>(c.docs.size());
    std::map<std::string, double> v;
    for (const auto& [term, tf] : counts(tokens)) {
        if (allowed != nullptr && !allowed->contains(term)) {
            continue;
        }
        const double df = static_cast<double>(c.df(term));
        if (df == 0.0) {
            continue;
        }
        const double w = static_cast<double>(tf) * std::log(n / df);
        if (w != 0.0) {
            v[term] = w;
        }
    }
    return v;
}

inline double cosine(const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (const auto& [t, w] : a) {
        na += w * w;
        if (auto it = b.find(t); it != b.end()) {
            dot += w * it->second;
        }
    }
    for (const auto& [_, w] : b) {
        nb += w * w;
    }
    if (na == 0.0 || nb == 0.0) {
        return 0.0;
    }
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

inline double dense_cos(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) {
        return 0.0;
    }
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

struct Query {
    std::string id;
    std::vector<std::string> tokens;
    std::vector<std::string> keyword_terms;
};

inline double score(const Corpus& c, const Query& q, const Doc& d, lexret::Scorer scorer,
                    const lexret::BM25Params& p, const lexret::EmbeddingStore* store) {
    using lexret::ScorerKind;
    switch (scorer.kind) {
    case ScorerKind::TfidfCos:
        return cosine(tfidf_vector(c, q.tokens), tfidf_vector(c, d.tokens));
    case ScorerKind::BM25:
        return bm25(c, q.tokens, d, scorer.variant, p);
    case ScorerKind::Fused:
        return bm25(c, q.tokens, d, lexret::Variant::Atire, p) *
               cosine(tfidf_vector(c, q.tokens), tfidf_vector(c, d.tokens));
    case ScorerKind::RakeTfidf: {
        std::set<std::string> vocab;
        for (const auto& doc : c.docs) {
            vocab.insert(doc.keyword_terms.begin(), doc.keyword_terms.end());
        }
        std::set<std::string> query_allowed;
        for (const auto& t : q.keyword_terms) {
            if (vocab.contains(t)) {
                query_allowed.insert(t);
            }
        }
        return cosine(tfidf_vector(c, q.tokens, &query_allowed), tfidf_vector(c, d.tokens, &vocab));
    }
    case ScorerKind::CommonWordsBM25: {
        const std::set<std::string> qs(q.tokens.begin(), q.tokens.end());
        const std::set<std::string> ds(d.tokens.begin(), d.tokens.end());
        std::size_t common = 0;
        for (const auto& t : qs) {
            common += ds.contains(t) ? 1 : 0;
        }
        return static_cast<double>(common) * bm25(c, q.tokens, d, lexret::Variant::Atire, p);
    }
    case ScorerKind::Embed: {
        const auto& qv = store->find(q.id)->front();
        const auto& chunks = *store->find(d.id);
        double sum = 0.0;
        for (const auto& ch : chunks) {
            sum += dense_cos(qv, ch);
        }
        return sum / static_cast<double>(chunks.size());
    }
    }
    return 0.0;
}

inline lexret::Ranking rank(const Corpus& c, const Query& q, lexret::Scorer scorer,
                            const lexret::BM25Params& p = {},
                            const lexret::EmbeddingStore* store = nullptr) {
    lexret::Ranking out;
    for (const auto& d : c.docs) {
        out.push_back({d.id, score(c, q, d, scorer, p, store)});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.score != b.score) {
            return a.score > b.score;
        }
        return a.doc_id < b.doc_id;
    });
    return out;
}

} // namespace naive
