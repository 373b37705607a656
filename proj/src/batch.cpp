#include "lexret/batch.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "lexret/errors.hpp"
#include "lexret/parallel.hpp"

namespace lexret {
namespace {

std::string fixed(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", value);
    return buf;
}

} // namespace

Run search_all(const Searcher& searcher, const Analyzer& analyzer,
               const std::vector<QueryText>& queries, Scorer scorer, std::size_t n,
               unsigned threads) {
    if (analyzer.fingerprint() != searcher.index().fingerprint()) {
        throw PipelineMismatchError(
            "the query pipeline does not match the pipeline the index was built with "
            "(check preset, min_token_len and stopword list)");
    }
    std::vector<Ranking> rankings(queries.size());
    parallel_for(queries.size(), threads, [&](std::size_t i) {
        const auto query = analyzer.analyze_query(queries[i].id, queries[i].text);
        rankings[i] = top_n(searcher.rank(query, scorer), n);
    });
    Run run;
    for (std::size_t i = 0; i < queries.size(); ++i) {
        run.emplace(queries[i].id, std::move(rankings[i]));
    }
    return run;
}

void sort_comparison(std::vector<ComparisonRow>& rows) {
    std::sort(rows.begin(), rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
        if (a.p10 != b.p10) {
            return a.p10 > b.p10;
        }
        return a.method < b.method;
    });
}

std::vector<ComparisonRow> compare_scorers(const Searcher& searcher, const Analyzer& analyzer,
                                           const std::vector<QueryText>& queries,
                                           const Qrels& qrels, const std::vector<Scorer>& scorers,
                                           std::size_t n, std::vector<std::size_t> ks,
                                           F1Mode f1_mode, unsigned threads,
                                           std::vector<Run>* runs) {
    if (std::find(ks.begin(), ks.end(), 10U) == ks.end()) {
        ks.push_back(10);
    }
    std::vector<ComparisonRow> rows;
    for (const auto& scorer : scorers) {
        auto run = search_all(searcher, analyzer, queries, scorer, n, threads);
        ComparisonRow row;
        row.method = scorer.name();
        row.report = evaluate_run(run, qrels, ks, f1_mode);
        const auto& at10 = row.report.mean.at(10);
        row.p10 = at10.precision;
        row.r10 = at10.recall;
        row.f1 = at10.f1;
        row.mrr = row.report.mrr;
        row.histogram = relevant_rank_histogram(run, qrels, 10, n);
        rows.push_back(std::move(row));
        if (runs != nullptr) {
            runs->push_back(std::move(run));
        }
    }
    sort_comparison(rows);
    return rows;
}

std::string format_comparison(const std::vector<ComparisonRow>& rows) {
    std::ostringstream out;
    std::size_t width = 6;
    for (const auto& r : rows) {
        width = std::max(width, r.method.size());
    }
    auto pad = [&](const std::string& s) { return s + std::string(width - s.size() + 2, ' '); };
    out << pad("method") << "P@10    R@10    F1      MRR\n";
    for (const auto& r : rows) {
        out << pad(r.method) << fixed(r.p10) << "  " << fixed(r.r10) << "  " << fixed(r.f1)
            << "  " << fixed(r.mrr) << '\n';
    }
    if (rows.empty()) {
        return out.str();
    }
    out << "\nrelevant documents per rank bucket\n" << pad("method");
    const auto& first = rows.front().histogram;
    for (std::size_t i = 0; i < first.counts.size(); ++i) {
        out << (i * first.bucket_width + 1) << '-' << ((i + 1) * first.bucket_width) << '\t';
    }
    out << "missed\n";
    for (const auto& r : rows) {
        out << pad(r.method);
        for (auto c : r.histogram.counts) {
            out << c << '\t';
        }
        out << r.histogram.not_retrieved << '\n';
    }
    return out.str();
}

} // namespace lexret
