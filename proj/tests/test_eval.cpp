#include "catch_amalgamated.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <random>
#include <sstream>

#include "lexret/errors.hpp"
#include "lexret/eval.hpp"
#include "lexret/io.hpp"

using namespace lexret;
using Catch::Approx;

namespace {

const std::string kData = std::string(LEXRET_DATA_DIR) + "/synthetic/";

Ranking ranking_of(std::initializer_list<const char*> ids) {
    Ranking r;
    double score = static_cast<double>(ids.size());
    for (const char* id : ids) {
        r.push_back({id, score--});
    }
    return r;
}

double fraction(const std::string& text) {
    const auto slash = text.find('/');
    return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
}

} // namespace

TEST_CASE("precision, recall and F1 at k") {
    const auto r = ranking_of({"a", "x", "b", "y", "z", "c", "u", "v", "w", "t"});
    const RelevantSet rel{"a", "b", "c", "d", "e", "f"};
    CHECK(hits_at_k(r, rel, 10) == 3);
    CHECK(precision_at_k(r, rel, 10) == Approx(0.3));
    CHECK(*recall_at_k(r, rel, 10) == Approx(0.5));
    CHECK(f1_at_k(0.3, 0.5) == Approx(0.375));
    CHECK(f1_at_k(0.0, 0.0) == 0.0);
}

TEST_CASE("short rankings count missing positions as misses") {
    const auto r = ranking_of({"a", "b"});
    const RelevantSet rel{"a", "b", "c", "d"};
    CHECK(precision_at_k(r, rel, 5) == Approx(0.4));
    CHECK(*recall_at_k(r, rel, 5) == Approx(0.5));
    CHECK(f1_at_k(0.4, 0.5) == Approx(4.0 / 9.0));
}

TEST_CASE("F1 of one third") {
    const auto r = ranking_of({"x", "a", "y"});
    const RelevantSet rel{"a", "b", "c"};
    CHECK(f1_at_k(precision_at_k(r, rel, 3), *recall_at_k(r, rel, 3)) == Approx(1.0 / 3.0));
}

TEST_CASE("reciprocal rank") {
    CHECK(reciprocal_rank(ranking_of({"x", "y", "z", "a"}), {"a"}) == Approx(0.25));
    CHECK(reciprocal_rank(ranking_of({"x"}), {"a"}) == 0.0);
    CHECK(reciprocal_rank({}, {"a"}) == 0.0);
}

TEST_CASE("recall is undefined without relevant documents") {
    CHECK_FALSE(recall_at_k(ranking_of({"a"}), {}, 1).has_value());
    CHECK_THROWS_AS(precision_at_k(ranking_of({"a"}), {"a"}, 0), DomainError);
}

TEST_CASE("mean reciprocal rank over queries") {
    const Run run{{"q1", ranking_of({"a", "x"})}, {"q2", ranking_of({"x", "y", "b"})},
                  {"q3", ranking_of({"x", "y", "z"})}, {"q4", ranking_of({"x", "d"})}};
    const Qrels qrels{{"q1", {"a"}}, {"q2", {"b"}}, {"q3", {"c"}}, {"q4", {"d"}}};
    // (1 + 1/3 + 0 + 1/2) / 4
    const auto report = evaluate_run(run, qrels, {1});
    CHECK(report.mrr == Approx((1.0 + 1.0 / 3.0 + 0.5) / 4.0));
    const Run two{{"q1", ranking_of({"a"})}, {"q4", ranking_of({"x", "y", "z", "d"})}};
    CHECK(evaluate_run(two, qrels, {1}).mrr == Approx(0.625));
}

TEST_CASE("run queries without qrels are reported by id") {
    const Run run{{"q1", ranking_of({"a"})}, {"q7", ranking_of({"a"})}, {"q9", ranking_of({"b"})}};
    const Qrels qrels{{"q1", {"a"}}};
    try {
        (void)evaluate_run(run, qrels, {1});
        FAIL("expected MissingQrelsError");
    } catch (const MissingQrelsError& e) {
        CHECK(e.missing() == std::vector<std::string>{"q7", "q9"});
        CHECK(std::string(e.what()).find("q7") != std::string::npos);
    }
}

TEST_CASE("queries with no relevant documents are excluded and flagged") {
    const Run run{{"q1", ranking_of({"a"})}, {"q2", ranking_of({"b"})}};
    const Qrels qrels{{"q1", {"a"}}, {"q2", {}}};
    const auto report = evaluate_run(run, qrels, {1});
    CHECK(report.num_evaluated == 1);
    CHECK(report.excluded == std::vector<std::string>{"q2"});
    CHECK(report.mean.at(1).precision == 1.0);
    CHECK(report.mrr == 1.0);
    CHECK(format_report_lines(report).find("excluded\tq2\tno_relevant") != std::string::npos);
}

TEST_CASE("F1 of means is the harmonic mean of the averages") {
    const Run run{{"q1", ranking_of({"a", "x"})}, {"q2", ranking_of({"x", "y"})}};
    const Qrels qrels{{"q1", {"a"}}, {"q2", {"b", "c"}}};
    const auto per = evaluate_run(run, qrels, {2}, F1Mode::PerQuery);
    const auto of = evaluate_run(run, qrels, {2}, F1Mode::OfMeans);
    CHECK(per.mean.at(2).f1 == Approx((2.0 / 3.0 + 0.0) / 2.0));
    const double p = 0.25;
    const double r = 0.5;
    CHECK(of.mean.at(2).f1 == Approx(2 * p * r / (p + r)));
}

TEST_CASE("cutoff validation") {
    const Run run{{"q1", ranking_of({"a"})}};
    const Qrels qrels{{"q1", {"a"}}};
    CHECK_THROWS_AS(evaluate_run(run, qrels, {}), DomainError);
    CHECK_THROWS_AS(evaluate_run(run, qrels, {0, 1}), DomainError);
    CHECK(evaluate_run(run, qrels, {5, 1, 5}).ks == std::vector<std::size_t>{1, 5});
}

TEST_CASE("fixture run matches the hand-computed fractions") {
    const auto run = read_run(kData + "fixture.run");
    const auto qrels = read_qrels(kData + "qrels.txt");
    const auto report = evaluate_run(run, qrels, {1, 3, 5, 10});

    std::ifstream in(kData + "fixture_expected.txt");
    REQUIRE(in);
    std::string line;
    int checked = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream fields(line);
        std::string metric;
        std::string qid;
        std::string value;
        fields >> metric >> qid >> value;
        if (metric == "EXCLUDED") {
            CHECK(report.excluded == std::vector<std::string>{qid});
            continue;
        }
        INFO(line);
        const double want = fraction(value);
        double got = 0.0;
        if (metric == "RR" || metric == "MRR") {
            if (qid == "all") {
                got = report.mrr;
            } else {
                for (const auto& q : report.queries) {
                    if (q.query_id == qid) {
                        got = q.reciprocal_rank;
                    }
                }
            }
        } else {
            const auto at = metric.find('@');
            const auto name = metric.substr(0, at);
            const auto k = static_cast<std::size_t>(std::stoul(metric.substr(at + 1)));
            const CutoffMetrics* m = nullptr;
            if (qid == "all") {
                m = &report.mean.at(k);
            } else {
                for (const auto& q : report.queries) {
                    if (q.query_id == qid) {
                        m = &q.at.at(k);
                    }
                }
            }
            REQUIRE(m != nullptr);
            got = name == "P" ? m->precision : name == "R" ? m->recall : m->f1;
        }
        CHECK(std::abs(got - want) <= 1e-12);
        ++checked;
    }
    CHECK(checked == 52);
    CHECK(report.num_evaluated == 3);
}

TEST_CASE("rank histogram") {
    const Run run{{"q1", ranking_of({"a", "x", "x2", "b"})}};
    const Qrels qrels{{"q1", {"a", "b", "c"}}};
    const auto h = relevant_rank_histogram(run, qrels, 2, 4);
    CHECK(h.counts == std::vector<std::size_t>{1, 1});
    CHECK(h.not_retrieved == 1);
}

TEST_CASE("property: metric bounds and invariances") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> len(0, 30);
    std::uniform_int_distribution<int> doc(0, 40);
    std::uniform_int_distribution<int> nrel(1, 8);
    for (int trial = 0; trial < 1000; ++trial) {
        Ranking r;
        std::set<std::string> used;
        for (int i = len(rng); i > 0; --i) {
            auto id = "d" + std::to_string(doc(rng));
            if (used.insert(id).second) {
                r.push_back({id, 0.0});
            }
        }
        RelevantSet rel;
        for (int i = nrel(rng); i > 0; --i) {
            rel.insert("d" + std::to_string(doc(rng)));
        }
        for (std::size_t k : {1, 3, 5, 10, 20}) {
            const auto hits = hits_at_k(r, rel, k);
            const double p = precision_at_k(r, rel, k);
            const double rc = *recall_at_k(r, rel, k);
            REQUIRE(p == Approx(static_cast<double>(hits) / static_cast<double>(k)));
            REQUIRE(rc == Approx(static_cast<double>(hits) / static_cast<double>(rel.size())));
            REQUIRE(p >= 0.0);
            REQUIRE(p <= 1.0);
            REQUIRE(rc <= 1.0);
            const double f = f1_at_k(p, rc);
            REQUIRE(f <= 2.0 * std::min(p, rc) + 1e-12);
            REQUIRE(f <= std::max(p, rc) + 1e-12);
            REQUIRE(*recall_at_k(r, rel, k) <= *recall_at_k(r, rel, k + 1));
        }
        // shuffling below the first relevant hit leaves RR unchanged
        const double rr = reciprocal_rank(r, rel);
        std::size_t first = r.size();
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (rel.contains(r[i].doc_id)) {
                first = i;
                break;
            }
        }
        if (first + 1 < r.size()) {
            auto shuffled = r;
            std::shuffle(shuffled.begin() + static_cast<std::ptrdiff_t>(first) + 1, shuffled.end(), rng);
            REQUIRE(reciprocal_rank(shuffled, rel) == rr);
        }
    }
}
