// Python bindings for the lexret core.

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "lexret/analyzer.hpp"
#include "lexret/batch.hpp"
#include "lexret/embeddings.hpp"
#include "lexret/errors.hpp"
#include "lexret/eval.hpp"
#include "lexret/index.hpp"
#include "lexret/io.hpp"
#include "lexret/rake.hpp"
#include "lexret/rankers.hpp"
#include "lexret/textproc.hpp"

namespace py = pybind11;
using namespace lexret;

namespace {

using PyRanking = std::vector<std::pair<std::string, double>>;

PyRanking to_py(const Ranking& ranking) {
    PyRanking out;
    out.reserve(ranking.size());
    for (const auto& d : ranking) {
        out.emplace_back(d.doc_id, d.score);
    }
    return out;
}

Ranking from_py(const std::vector<std::string>& doc_ids) {
    Ranking out;
    out.reserve(doc_ids.size());
    for (const auto& id : doc_ids) {
        out.push_back({id, 0.0});
    }
    return out;
}

RelevantSet to_relevant(const std::set<std::string>& ids) {
    return {ids.begin(), ids.end()};
}

SparseVector to_sparse(const std::map<std::string, double>& weights) {
    SparseVector v;
    for (const auto& [term, w] : weights) {
        v.set(term, w);
    }
    return v;
}

py::dict report_to_dict(const EvalReport& report) {
    auto metrics = [](const std::map<std::size_t, CutoffMetrics>& at) {
        py::dict out;
        for (const auto& [k, m] : at) {
            py::dict d;
            d["precision"] = m.precision;
            d["recall"] = m.recall;
            d["f1"] = m.f1;
            out[py::int_(k)] = d;
        }
        return out;
    };
    py::dict per_query;
    for (const auto& q : report.queries) {
        py::dict d;
        d["num_relevant"] = q.num_relevant;
        d["excluded"] = q.excluded;
        d["at"] = metrics(q.at);
        d["reciprocal_rank"] = q.reciprocal_rank;
        per_query[py::str(q.query_id)] = d;
    }
    py::dict out;
    out["ks"] = report.ks;
    out["queries"] = per_query;
    out["mean"] = metrics(report.mean);
    out["mrr"] = report.mrr;
    out["num_evaluated"] = report.num_evaluated;
    out["excluded"] = report.excluded;
    return out;
}

} // namespace

PYBIND11_MODULE(_lexret, m) {
    m.doc() = "Lexical prior-case retrieval: TF-IDF cosine, BM25 variants, fused scorers and "
              "retrieval metrics.";

    auto error = py::register_exception<Error>(m, "Error");
    py::register_exception<DomainError>(m, "DomainError", error);
    auto format_error = py::register_exception<FormatError>(m, "FormatError", error);
    py::register_exception<VersionError>(m, "VersionError", format_error);
    py::register_exception<PipelineMismatchError>(m, "PipelineMismatchError", error);
    py::register_exception<IndexBuildError>(m, "IndexBuildError", error);
    py::register_exception<ConfigError>(m, "ConfigError", error);
    py::register_exception<IoError>(m, "IoError", error);
    py::register_exception<MissingQrelsError>(m, "MissingQrelsError", error);

    // textproc
    py::class_<PipelineConfig>(m, "PipelineConfig")
        .def(py::init<>())
        .def_readwrite("lowercase", &PipelineConfig::lowercase)
        .def_readwrite("remove_noise", &PipelineConfig::remove_noise)
        .def_readwrite("remove_stopwords", &PipelineConfig::remove_stopwords)
        .def_readwrite("stem", &PipelineConfig::stem)
        .def_readwrite("min_token_len", &PipelineConfig::min_token_len)
        .def_static("none", &PipelineConfig::none)
        .def_static("standard", &PipelineConfig::standard)
        .def_static("full", &PipelineConfig::full)
        .def_static("preset", &PipelineConfig::preset)
        .def(py::self == py::self);

    py::class_<StopwordList>(m, "StopwordList")
        .def(py::init([](const std::vector<std::string>& words) {
                 return StopwordList(StringSet(words.begin(), words.end()));
             }),
             py::arg("words"))
        .def_static("english", &StopwordList::english, py::return_value_policy::copy)
        .def_static("from_file", &StopwordList::from_file)
        .def("__contains__", &StopwordList::contains)
        .def("__len__", &StopwordList::size)
        .def("sorted", &StopwordList::sorted);

    m.def("tokenize_normalize", &tokenize_normalize, py::arg("raw"), py::arg("config"),
          py::arg("stopwords"));
    m.def("porter_stem", &porter_stem, py::arg("word"));
    m.def("pipeline_fingerprint", &pipeline_fingerprint);
    m.def(
        "rake_extract",
        [](std::string_view raw, const StopwordList& stopwords, std::size_t top_k) {
            std::vector<std::pair<std::string, double>> out;
            for (auto& kw : rake_extract(raw, stopwords, top_k)) {
                out.emplace_back(std::move(kw.phrase), kw.score);
            }
            return out;
        },
        py::arg("raw"), py::arg("stopwords"), py::arg("top_k"));

    py::class_<AnalyzedQuery>(m, "AnalyzedQuery")
        .def_readonly("id", &AnalyzedQuery::id)
        .def_readonly("tokens", &AnalyzedQuery::tokens)
        .def_readonly("keyword_terms", &AnalyzedQuery::keyword_terms)
        .def_readonly("fingerprint", &AnalyzedQuery::fingerprint);

    py::class_<Analyzer>(m, "Analyzer")
        .def(py::init<PipelineConfig, StopwordList>(), py::arg("config"),
             py::arg("stopwords") = StopwordList::english())
        .def_property_readonly("fingerprint", &Analyzer::fingerprint)
        .def_property_readonly("config", &Analyzer::config)
        .def("tokenize", &Analyzer::tokenize)
        .def("keyword_terms", &Analyzer::keyword_terms, py::arg("raw"), py::arg("top_k") = 0)
        .def("analyze_query", &Analyzer::analyze_query, py::arg("id"), py::arg("raw"));

    // index
    py::class_<CorpusIndex>(m, "CorpusIndex")
        .def_property_readonly("num_docs", &CorpusIndex::num_docs)
        .def_property_readonly("avg_len", &CorpusIndex::avg_len)
        .def_property_readonly("fingerprint", &CorpusIndex::fingerprint)
        .def_property_readonly("doc_ids", [](const CorpusIndex& ix) {
            return std::vector<std::string>(ix.doc_ids().begin(), ix.doc_ids().end());
        })
        .def_property_readonly("terms", [](const CorpusIndex& ix) {
            return std::vector<std::string>(ix.terms().begin(), ix.terms().end());
        })
        .def("doc_len", [](const CorpusIndex& ix, std::string_view id) {
            const auto d = ix.find_doc(id);
            if (!d) {
                throw py::key_error(std::string(id));
            }
            return ix.doc_len(*d);
        })
        .def("df", py::overload_cast<std::string_view>(&CorpusIndex::df, py::const_))
        .def("postings", [](const CorpusIndex& ix, std::string_view term) {
            std::vector<std::pair<std::string, std::uint32_t>> out;
            if (const auto t = ix.find_term(term)) {
                for (const auto& p : ix.postings(*t)) {
                    out.emplace_back(ix.doc_id(p.doc), p.tf);
                }
            }
            return out;
        })
        .def("is_keyword", [](const CorpusIndex& ix, std::string_view term) {
            const auto t = ix.find_term(term);
            return t && ix.is_keyword(*t);
        })
        .def(py::self == py::self);

    m.def(
        "build_index",
        [](const std::vector<std::pair<std::string, TokenStream>>& docs, std::uint64_t fingerprint,
           const std::vector<std::string>& keyword_terms) {
            std::vector<DocumentInput> inputs;
            for (const auto& [id, tokens] : docs) {
                inputs.push_back({id, tokens});
            }
            return build_index(std::move(inputs), fingerprint, keyword_terms);
        },
        py::arg("docs"), py::arg("fingerprint") = 0,
        py::arg("keyword_terms") = std::vector<std::string>{});
    m.def(
        "build_corpus_index",
        [](const std::vector<std::pair<std::string, std::string>>& docs, const Analyzer& analyzer,
           unsigned threads) {
            std::vector<RawDocument> raw;
            for (const auto& [id, text] : docs) {
                raw.push_back({id, text});
            }
            py::gil_scoped_release release;
            return build_corpus_index(raw, analyzer, threads);
        },
        py::arg("docs"), py::arg("analyzer"), py::arg("threads") = 1);
    m.def("save_index", &save_index);
    m.def("load_index", &load_index);

    // rankers
    py::enum_<Variant>(m, "Variant")
        .value("ATIRE", Variant::Atire)
        .value("OKAPI", Variant::Okapi)
        .value("BM25L", Variant::BM25L)
        .value("BM25PLUS", Variant::BM25Plus);

    py::class_<BM25Params>(m, "BM25Params")
        .def(py::init<>())
        .def_readwrite("k1", &BM25Params::k1)
        .def_readwrite("b", &BM25Params::b)
        .def_readwrite("epsilon", &BM25Params::epsilon)
        .def_readwrite("delta", &BM25Params::delta)
        .def("delta_for", &BM25Params::delta_for);

    m.def("tfidf_weight", &tfidf_weight, py::arg("tf"), py::arg("num_docs"), py::arg("df"));
    m.def(
        "bm25_term_score",
        [](std::uint64_t tf, std::uint64_t df, std::uint64_t num_docs, double doc_len,
           double avg_len, const BM25Params& params, Variant variant, double okapi_mean_idf) {
            return bm25_term_score(tf, df, {num_docs, doc_len, avg_len, okapi_mean_idf}, params,
                                   variant);
        },
        py::arg("tf"), py::arg("df"), py::arg("num_docs"), py::arg("doc_len"), py::arg("avg_len"),
        py::arg("params") = BM25Params{}, py::arg("variant") = Variant::Atire,
        py::arg("okapi_mean_idf") = 0.0);
    m.def("fuse_product", &fuse_product);
    m.def(
        "cosine_similarity",
        [](const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
            return cosine_similarity(to_sparse(a), to_sparse(b));
        });
    m.def(
        "aggregate_chunk_similarity",
        [](const DenseVector& query, const std::vector<DenseVector>& chunks) {
            return aggregate_chunk_similarity(query, chunks);
        });
    m.def("chunk_tokens", &chunk_tokens, py::arg("tokens"), py::arg("max_len") = 512);

    py::class_<EmbeddingStore>(m, "EmbeddingStore")
        .def(py::init<>())
        .def("add", &EmbeddingStore::add)
        .def_static("from_file", &EmbeddingStore::from_file)
        .def_static("parse", &EmbeddingStore::parse)
        .def_property_readonly("dimension", &EmbeddingStore::dimension)
        .def("__len__", &EmbeddingStore::size)
        .def("__contains__", &EmbeddingStore::contains);

    py::class_<Searcher>(m, "Searcher")
        .def(py::init<const CorpusIndex&, BM25Params, const EmbeddingStore*>(), py::arg("index"),
             py::arg("params") = BM25Params{}, py::arg("embeddings") = nullptr,
             py::keep_alive<1, 2>(), py::keep_alive<1, 4>())
        .def(
            "rank",
            [](const Searcher& s, const AnalyzedQuery& q, std::string_view scorer) {
                const auto parsed = Scorer::parse(scorer);
                Ranking ranking;
                {
                    py::gil_scoped_release release;
                    ranking = s.rank(q, parsed);
                }
                return to_py(ranking);
            },
            py::arg("query"), py::arg("scorer"))
        .def(
            "search_all",
            [](const Searcher& s, const Analyzer& analyzer,
               const std::vector<std::pair<std::string, std::string>>& queries,
               std::string_view scorer, std::size_t n, unsigned threads) {
                std::vector<QueryText> qs;
                for (const auto& [id, text] : queries) {
                    qs.push_back({id, text});
                }
                const auto parsed = Scorer::parse(scorer);
                Run run;
                {
                    py::gil_scoped_release release;
                    run = search_all(s, analyzer, qs, parsed, n, threads);
                }
                std::map<std::string, PyRanking> out;
                for (const auto& [qid, ranking] : run) {
                    out.emplace(qid, to_py(ranking));
                }
                return out;
            },
            py::arg("analyzer"), py::arg("queries"), py::arg("scorer"), py::arg("n") = 100,
            py::arg("threads") = 1);

    m.def(
        "score_query",
        [](const AnalyzedQuery& q, const CorpusIndex& index, std::string_view scorer,
           const BM25Params& params, const EmbeddingStore* embeddings) {
            return to_py(score_query(q, index, Scorer::parse(scorer), params, embeddings));
        },
        py::arg("query"), py::arg("index"), py::arg("scorer"), py::arg("params") = BM25Params{},
        py::arg("embeddings") = nullptr);

    // eval
    m.def(
        "precision_at_k",
        [](const std::vector<std::string>& ranking, const std::set<std::string>& relevant,
           std::size_t k) { return precision_at_k(from_py(ranking), to_relevant(relevant), k); },
        py::arg("ranking"), py::arg("relevant"), py::arg("k"));
    m.def(
        "recall_at_k",
        [](const std::vector<std::string>& ranking, const std::set<std::string>& relevant,
           std::size_t k) { return recall_at_k(from_py(ranking), to_relevant(relevant), k); },
        py::arg("ranking"), py::arg("relevant"), py::arg("k"));
    m.def("f1_at_k", &f1_at_k, py::arg("precision"), py::arg("recall"));
    m.def(
        "reciprocal_rank",
        [](const std::vector<std::string>& ranking, const std::set<std::string>& relevant) {
            return reciprocal_rank(from_py(ranking), to_relevant(relevant));
        },
        py::arg("ranking"), py::arg("relevant"));
    m.def(
        "evaluate_run",
        [](const std::map<std::string, PyRanking>& run, const std::map<std::string, std::set<std::string>>& qrels,
           std::vector<std::size_t> ks, bool f1_of_means) {
            Run r;
            for (const auto& [qid, ranking] : run) {
                Ranking rk;
                for (const auto& [doc, score] : ranking) {
                    rk.push_back({doc, score});
                }
                r.emplace(qid, std::move(rk));
            }
            Qrels q;
            for (const auto& [qid, ids] : qrels) {
                q.emplace(qid, to_relevant(ids));
            }
            return report_to_dict(
                evaluate_run(r, q, std::move(ks), f1_of_means ? F1Mode::OfMeans : F1Mode::PerQuery));
        },
        py::arg("run"), py::arg("qrels"), py::arg("ks") = std::vector<std::size_t>{1, 3, 5, 10},
        py::arg("f1_of_means") = false);
    m.def("read_qrels", [](const std::filesystem::path& p) {
        std::map<std::string, std::set<std::string>> out;
        for (const auto& [qid, ids] : read_qrels(p)) {
            out.emplace(qid, std::set<std::string>(ids.begin(), ids.end()));
        }
        return out;
    });
    m.def("read_run", [](const std::filesystem::path& p) {
        std::map<std::string, PyRanking> out;
        for (const auto& [qid, ranking] : read_run(p)) {
            out.emplace(qid, to_py(ranking));
        }
        return out;
    });

#ifdef LEXRET_VERSION
    m.attr("__version__") = LEXRET_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
