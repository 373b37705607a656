#pragma once

#include <string>
#include <vector>

#include "lexret/analyzer.hpp"
#include "lexret/eval.hpp"
#include "lexret/io.hpp"
#include "lexret/rankers.hpp"

namespace lexret {

/// Scores every query and keeps the top n documents of each ranking.
/// Queries are spread over `threads` workers; the result does not depend on
/// the thread count. Throws PipelineMismatchError before scoring anything if
/// the analyzer does not match the index.
Run search_all(const Searcher& searcher, const Analyzer& analyzer,
               const std::vector<QueryText>& queries, Scorer scorer, std::size_t n,
               unsigned threads = 1);

struct ComparisonRow {
    std::string method;
    double p10 = 0.0;
    double r10 = 0.0;
    double f1 = 0.0;
    double mrr = 0.0;
    EvalReport report;
    RankHistogram histogram;
};

/// One row per scorer, sorted by descending P@10 then method name.
std::vector<ComparisonRow> compare_scorers(const Searcher& searcher, const Analyzer& analyzer,
                                           const std::vector<QueryText>& queries,
                                           const Qrels& qrels, const std::vector<Scorer>& scorers,
                                           std::size_t n, std::vector<std::size_t> ks,
                                           F1Mode f1_mode = F1Mode::PerQuery,
                                           unsigned threads = 1,
                                           std::vector<Run>* runs = nullptr);

void sort_comparison(std::vector<ComparisonRow>& rows);

/// Method / P@10 / R@10 / F1 / MRR table followed by the rank-bucket counts.
std::string format_comparison(const std::vector<ComparisonRow>& rows);

} // namespace lexret
