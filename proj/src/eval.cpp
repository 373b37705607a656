#include "lexret/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace lexret {
namespace {

std::string join_ids(const std::vector<std::string>& ids) {
    std::string out;
    for (const auto& id : ids) {
        if (!out.empty()) {
            out += ", ";
        }
        out += id;
    }
    return out;
}

std::string fixed(double value, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, value);
    return buf;
}

} // namespace

MissingQrelsError::MissingQrelsError(const std::vector<std::string>& ids)
    : Error("run queries missing from qrels: " + join_ids(ids)), missing_(ids) {}

std::size_t hits_at_k(const Ranking& ranking, const RelevantSet& relevant, std::size_t k) {
    const auto depth = std::min(k, ranking.size());
    std::size_t hits = 0;
    for (std::size_t i = 0; i < depth; ++i) {
        if (relevant.contains(ranking[i].doc_id)) {
            ++hits;
        }
    }
    return hits;
}

double precision_at_k(const Ranking& ranking, const RelevantSet& relevant, std::size_t k) {
    if (k < 1) {
        throw DomainError("precision_at_k: k must be at least 1");
    }
    return static_cast<double>(hits_at_k(ranking, relevant, k)) / static_cast<double>(k);
}

std::optional<double> recall_at_k(const Ranking& ranking, const RelevantSet& relevant,
                                  std::size_t k) {
    if (k < 1) {
        throw DomainError("recall_at_k: k must be at least 1");
    }
    if (relevant.empty()) {
        return std::nullopt;
    }
    return static_cast<double>(hits_at_k(ranking, relevant, k)) /
           static_cast<double>(relevant.size());
}

double f1_at_k(double precision, double recall) noexcept {
    const auto sum = precision + recall;
    return sum == 0.0 ? 0.0 : 2.0 * precision * recall / sum;
}

double reciprocal_rank(const Ranking& ranking, const RelevantSet& relevant) {
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        if (relevant.contains(ranking[i].doc_id)) {
            return 1.0 / static_cast<double>(i + 1);
        }
    }
    return 0.0;
}

EvalReport evaluate_run(const Run& run, const Qrels& qrels, std::vector<std::size_t> ks,
                        F1Mode f1_mode) {
    if (ks.empty()) {
        throw DomainError("evaluate_run: no cutoffs requested");
    }
    if (std::find(ks.begin(), ks.end(), 0U) != ks.end()) {
        throw DomainError("evaluate_run: cutoffs must be at least 1");
    }
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

    std::vector<std::string> missing;
    for (const auto& [qid, _] : run) {
        if (!qrels.contains(qid)) {
            missing.push_back(qid);
        }
    }
    if (!missing.empty()) {
        throw MissingQrelsError(missing);
    }

    EvalReport report;
    report.ks = ks;
    report.f1_mode = f1_mode;
    std::map<std::size_t, CutoffMetrics> sums;
    double rr_sum = 0.0;

    for (const auto& [qid, ranking] : run) {
        const auto& relevant = qrels.find(qid)->second;
        QueryEvaluation q;
        q.query_id = qid;
        q.num_relevant = relevant.size();
        q.excluded = relevant.empty();
        q.reciprocal_rank = reciprocal_rank(ranking, relevant);
        for (auto k : ks) {
            CutoffMetrics m;
            m.precision = precision_at_k(ranking, relevant, k);
            m.recall = recall_at_k(ranking, relevant, k).value_or(0.0);
            m.f1 = f1_at_k(m.precision, m.recall);
            q.at[k] = m;
            if (!q.excluded) {
                sums[k].precision += m.precision;
                sums[k].recall += m.recall;
                sums[k].f1 += m.f1;
            }
        }
        if (q.excluded) {
            report.excluded.push_back(qid);
        } else {
            rr_sum += q.reciprocal_rank;
            ++report.num_evaluated;
        }
        report.queries.push_back(std::move(q));
    }

    const auto n = static_cast<double>(report.num_evaluated);
    for (auto k : ks) {
        CutoffMetrics m;
        if (report.num_evaluated > 0) {
            m.precision = sums[k].precision / n;
            m.recall = sums[k].recall / n;
            m.f1 = f1_mode == F1Mode::PerQuery ? sums[k].f1 / n : f1_at_k(m.precision, m.recall);
        }
        report.mean[k] = m;
    }
    report.mrr = report.num_evaluated > 0 ? rr_sum / n : 0.0;
    return report;
}

std::string format_report_table(const EvalReport& report) {
    std::ostringstream out;
    out << "query";
    for (auto k : report.ks) {
        out << "\tP@" << k << "\tR@" << k << "\tF1@" << k;
    }
    out << "\tRR\n";
    auto row = [&](const std::string& name, const std::map<std::size_t, CutoffMetrics>& at,
                   double rr, std::string_view note) {
        out << name;
        for (auto k : report.ks) {
            const auto& m = at.at(k);
            out << '\t' << fixed(m.precision) << '\t' << fixed(m.recall) << '\t' << fixed(m.f1);
        }
        out << '\t' << fixed(rr);
        if (!note.empty()) {
            out << '\t' << note;
        }
        out << '\n';
    };
    for (const auto& q : report.queries) {
        row(q.query_id, q.at, q.reciprocal_rank, q.excluded ? "(no relevant documents, excluded)" : "");
    }
    row("mean", report.mean, report.mrr, "");
    out << "evaluated queries: " << report.num_evaluated;
    if (!report.excluded.empty()) {
        out << ", excluded: " << join_ids(report.excluded);
    }
    out << "\nF1 averaging: "
        << (report.f1_mode == F1Mode::PerQuery ? "per query, then mean"
                                               : "harmonic mean of mean P and mean R")
        << '\n';
    return out.str();
}

std::string format_report_lines(const EvalReport& report) {
    std::ostringstream out;
    auto emit = [&](const std::string& metric, const std::string& qid, double value) {
        out << metric << '\t' << qid << '\t' << fixed(value, 6) << '\n';
    };
    for (const auto& q : report.queries) {
        if (q.excluded) {
            out << "excluded\t" << q.query_id << "\tno_relevant\n";
            continue;
        }
        for (auto k : report.ks) {
            const auto& m = q.at.at(k);
            emit("P_" + std::to_string(k), q.query_id, m.precision);
            emit("R_" + std::to_string(k), q.query_id, m.recall);
            emit("F1_" + std::to_string(k), q.query_id, m.f1);
        }
        emit("RR", q.query_id, q.reciprocal_rank);
    }
    for (auto k : report.ks) {
        const auto& m = report.mean.at(k);
        emit("P_" + std::to_string(k), "all", m.precision);
        emit("R_" + std::to_string(k), "all", m.recall);
        emit("F1_" + std::to_string(k), "all", m.f1);
    }
    emit("MRR", "all", report.mrr);
    out << "num_q\tall\t" << report.num_evaluated << '\n';
    return out.str();
}

RankHistogram relevant_rank_histogram(const Run& run, const Qrels& qrels,
                                      std::size_t bucket_width, std::size_t max_rank) {
    if (bucket_width < 1) {
        throw DomainError("relevant_rank_histogram: bucket width must be at least 1");
    }
    RankHistogram hist;
    hist.bucket_width = bucket_width;
    hist.counts.assign((max_rank + bucket_width - 1) / bucket_width, 0);
    for (const auto& [qid, ranking] : run) {
        auto it = qrels.find(qid);
        if (it == qrels.end()) {
            continue;
        }
        const auto& relevant = it->second;
        std::size_t found = 0;
        for (std::size_t i = 0; i < ranking.size() && i < max_rank; ++i) {
            if (relevant.contains(ranking[i].doc_id)) {
                ++hist.counts[i / bucket_width];
                ++found;
            }
        }
        hist.not_retrieved += relevant.size() - found;
    }
    return hist;
}

} // namespace lexret
