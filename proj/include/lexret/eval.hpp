#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lexret/errors.hpp"
#include "lexret/rankers.hpp"

namespace lexret {

using RelevantSet = std::set<std::string, std::less<>>;

/// query id -> judged-relevant doc ids. A query may map to an empty set.
using Qrels = std::map<std::string, RelevantSet, std::less<>>;

/// query id -> ranking, best first.
using Run = std::map<std::string, Ranking, std::less<>>;

/// A run query has no entry in the qrels.
class MissingQrelsError : public Error {
public:
    MissingQrelsError(const std::vector<std::string>& ids);
    [[nodiscard]] const std::vector<std::string>& missing() const noexcept { return missing_; }

private:
    std::vector<std::string> missing_;
};

/// Relevant documents among the first k entries.
std::size_t hits_at_k(const Ranking& ranking, const RelevantSet& relevant, std::size_t k);

/// hits / k; positions past the end of a short ranking count as misses.
double precision_at_k(const Ranking& ranking, const RelevantSet& relevant, std::size_t k);

/// hits / |relevant|, or nullopt when nothing is relevant.
std::optional<double> recall_at_k(const Ranking& ranking, const RelevantSet& relevant,
                                  std::size_t k);

/// Harmonic mean, 0 when p + r = 0.
double f1_at_k(double precision, double recall) noexcept;

/// 1 / rank of the first relevant document, 0 if none is retrieved.
double reciprocal_rank(const Ranking& ranking, const RelevantSet& relevant);

enum class F1Mode {
    /// F1 per query, then averaged.
    PerQuery,
    /// Harmonic mean of mean precision and mean recall.
    OfMeans,
};

struct CutoffMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct QueryEvaluation {
    std::string query_id;
    std::size_t num_relevant = 0;
    /// Empty judgments: recall undefined, left out of every mean.
    bool excluded = false;
    std::map<std::size_t, CutoffMetrics> at;
    double reciprocal_rank = 0.0;
};

struct EvalReport {
    std::vector<std::size_t> ks;
    F1Mode f1_mode = F1Mode::PerQuery;
    std::vector<QueryEvaluation> queries; // in query id order
    std::map<std::size_t, CutoffMetrics> mean;
    double mrr = 0.0;
    std::size_t num_evaluated = 0;
    std::vector<std::string> excluded;
};

/// Per-query and mean metrics for every cutoff in ks.
/// Throws MissingQrelsError naming every run query absent from qrels, and
/// DomainError when ks is empty or contains 0.
EvalReport evaluate_run(const Run& run, const Qrels& qrels, std::vector<std::size_t> ks,
                        F1Mode f1_mode = F1Mode::PerQuery);

/// Aligned table for humans.
std::string format_report_table(const EvalReport& report);

/// `metric<TAB>query_id<TAB>value` lines, aggregate rows use query id "all".
std::string format_report_lines(const EvalReport& report);

/// Where relevant documents land: counts[i] covers ranks
/// [i*width + 1, (i+1)*width] up to max_rank; the rest are not_retrieved.
struct RankHistogram {
    std::size_t bucket_width = 10;
    std::vector<std::size_t> counts;
    std::size_t not_retrieved = 0;
};

RankHistogram relevant_rank_histogram(const Run& run, const Qrels& qrels,
                                      std::size_t bucket_width, std::size_t max_rank);

} // namespace lexret
