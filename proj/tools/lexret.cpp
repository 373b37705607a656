// lexret: index a corpus, search it, evaluate runs and compare scorers.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "lexret/batch.hpp"
#include "lexret/config.hpp"
#include "lexret/errors.hpp"
#include "lexret/index.hpp"
#include "lexret/io.hpp"

namespace fs = std::filesystem;
using namespace lexret;

namespace {

/// Command-line values keyed by config key. Only flags the user actually
/// passed are applied, on top of the config file.
struct Overrides {
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;

    void add(CLI::App* app, const std::string& flag, const std::string& key,
             const std::string& help) {
        options[key] = app->add_option(flag, values[key], help);
    }

    void apply_to(RunConfig& config) const {
        for (const auto& [key, opt] : options) {
            if (opt->count() > 0) {
                config.apply(key, values.at(key));
            }
        }
    }
};

void require_path(const fs::path& path, const std::string& what) {
    if (path.empty()) {
        throw ConfigError("missing " + what);
    }
    if (!fs::exists(path)) {
        throw IoError(what + " " + path.string() + " does not exist");
    }
}

void require_set(const fs::path& path, const std::string& what) {
    if (path.empty()) {
        throw ConfigError("missing " + what);
    }
}

void add_pipeline_options(CLI::App* app, Overrides& o) {
    o.add(app, "--preset", "preset", "Pipeline preset: none, standard or full");
    o.add(app, "--min-token-len", "min_token_len", "Shortest token kept by noise removal");
    o.add(app, "--stopwords", "stopwords", "Stopword file overriding the bundled list");
}

void add_bm25_options(CLI::App* app, Overrides& o) {
    o.add(app, "--k1", "k1", "BM25 k1");
    o.add(app, "--b", "b", "BM25 b");
    o.add(app, "--epsilon", "epsilon", "Okapi negative-idf floor factor");
    o.add(app, "--delta", "delta", "BM25L / BM25+ delta");
    o.add(app, "--embeddings", "embeddings", "Embedding sidecar file for the embed scorer");
    o.add(app, "--threads", "threads", "Worker threads for query scoring");
}

int run_index(const RunConfig& config) {
    require_path(config.corpus, "corpus directory");
    require_set(config.out, "output index path (--out)");
    const Analyzer analyzer(config.pipeline, config.load_stopwords());
    const auto docs = read_corpus_dir(config.corpus);
    const auto index = build_corpus_index(docs, analyzer, config.threads);
    save_index(index, config.out);
    std::cout << "indexed " << index.num_docs() << " documents, " << index.num_terms()
              << " terms, avg length " << index.avg_len() << " -> " << config.out.string()
              << '\n';
    return 0;
}

struct SearchContext {
    CorpusIndex index;
    EmbeddingStore embeddings;
    bool has_embeddings = false;
    std::vector<QueryText> queries;
};

SearchContext load_search_inputs(const RunConfig& config) {
    require_path(config.index, "index file");
    require_path(config.queries, "queries file");
    if (!config.embeddings.empty()) {
        require_path(config.embeddings, "embedding file");
    }
    SearchContext ctx{load_index(config.index), {}, false, read_queries(config.queries)};
    if (!config.embeddings.empty()) {
        ctx.embeddings = EmbeddingStore::from_file(config.embeddings);
        ctx.has_embeddings = true;
    }
    return ctx;
}

int run_search(const RunConfig& config) {
    require_set(config.out, "output run path (--out)");
    auto ctx = load_search_inputs(config);
    const Analyzer analyzer(config.pipeline, config.load_stopwords());
    const Searcher searcher(ctx.index, config.bm25, ctx.has_embeddings ? &ctx.embeddings : nullptr);
    const auto run =
        search_all(searcher, analyzer, ctx.queries, config.scorer, config.top_n, config.threads);
    write_run(run, config.tag.empty() ? config.scorer.name() : config.tag, config.out);
    std::cout << "wrote " << run.size() << " queries -> " << config.out.string() << '\n';
    return 0;
}

int run_eval(const RunConfig& config) {
    require_path(config.run, "run file");
    require_path(config.qrels, "qrels file");
    const auto run = read_run(config.run);
    const auto qrels = read_qrels(config.qrels);
    const auto report = evaluate_run(run, qrels, config.ks, config.f1_mode);
    const auto lines = format_report_lines(report);
    std::cout << format_report_table(report);
    if (config.out.empty()) {
        std::cout << '\n' << lines;
    } else {
        write_file(config.out, lines);
    }
    return 0;
}

int run_compare(const RunConfig& config) {
    require_path(config.qrels, "qrels file");
    auto ctx = load_search_inputs(config);
    const auto qrels = read_qrels(config.qrels);
    const Analyzer analyzer(config.pipeline, config.load_stopwords());
    const Searcher searcher(ctx.index, config.bm25, ctx.has_embeddings ? &ctx.embeddings : nullptr);
    std::vector<Run> runs;
    const auto rows = compare_scorers(searcher, analyzer, ctx.queries, qrels, config.scorers,
                                      config.top_n, config.ks, config.f1_mode, config.threads,
                                      config.runs_dir.empty() ? nullptr : &runs);
    if (!config.runs_dir.empty()) {
        fs::create_directories(config.runs_dir);
        for (std::size_t i = 0; i < runs.size(); ++i) {
            const auto name = config.scorers[i].name();
            write_run(runs[i], name, config.runs_dir / (name + ".run"));
        }
    }
    std::cout << format_comparison(rows);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lexical prior-case retrieval: indexing, ranking and evaluation"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "key = value configuration file")
        ->check(CLI::ExistingFile);

    Overrides index_o;
    auto* index_cmd = app.add_subcommand("index", "Build and persist an index of a corpus directory");
    index_o.add(index_cmd, "--corpus", "corpus", "Directory with one text file per document");
    index_o.add(index_cmd, "--out", "out", "Index file to write");
    index_o.add(index_cmd, "--threads", "threads", "Worker threads for analysis");
    add_pipeline_options(index_cmd, index_o);

    Overrides search_o;
    auto* search_cmd = app.add_subcommand("search", "Rank the corpus for every query and write a run file");
    search_o.add(search_cmd, "--index", "index", "Index file");
    search_o.add(search_cmd, "--queries", "queries", "query_id<TAB>text file");
    search_o.add(search_cmd, "--scorer", "scorer", "Scorer name");
    search_o.add(search_cmd, "--out", "out", "Run file to write");
    search_o.add(search_cmd, "--top", "top_n", "Documents kept per query");
    search_o.add(search_cmd, "--tag", "tag", "Run tag (defaults to the scorer name)");
    add_pipeline_options(search_cmd, search_o);
    add_bm25_options(search_cmd, search_o);

    Overrides eval_o;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a run file against qrels");
    eval_o.add(eval_cmd, "--run", "run", "Run file");
    eval_o.add(eval_cmd, "--qrels", "qrels", "Qrels file");
    eval_o.add(eval_cmd, "--k", "k", "Comma-separated cutoffs, e.g. 1,3,5,10");
    eval_o.add(eval_cmd, "--f1-mode", "f1_mode", "per_query or of_means");
    eval_o.add(eval_cmd, "--out", "out", "Write the machine-readable lines here");

    Overrides compare_o;
    auto* compare_cmd = app.add_subcommand("compare", "Evaluate several scorers side by side");
    compare_o.add(compare_cmd, "--index", "index", "Index file");
    compare_o.add(compare_cmd, "--queries", "queries", "query_id<TAB>text file");
    compare_o.add(compare_cmd, "--qrels", "qrels", "Qrels file");
    compare_o.add(compare_cmd, "--scorers", "scorers", "Comma-separated scorer names");
    compare_o.add(compare_cmd, "--top", "top_n", "Documents kept per query");
    compare_o.add(compare_cmd, "--k", "k", "Comma-separated cutoffs");
    compare_o.add(compare_cmd, "--f1-mode", "f1_mode", "per_query or of_means");
    compare_o.add(compare_cmd, "--runs-dir", "runs_dir", "Also write one run file per scorer here");
    add_pipeline_options(compare_cmd, compare_o);
    add_bm25_options(compare_cmd, compare_o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        RunConfig config = config_path.empty() ? RunConfig{} : RunConfig::from_file(config_path);
        if (index_cmd->parsed()) {
            index_o.apply_to(config);
            config.validate();
            return run_index(config);
        }
        if (search_cmd->parsed()) {
            search_o.apply_to(config);
            config.validate();
            return run_search(config);
        }
        if (eval_cmd->parsed()) {
            eval_o.apply_to(config);
            config.validate();
            return run_eval(config);
        }
        compare_o.apply_to(config);
        config.validate();
        return run_compare(config);
    } catch (const std::exception& e) {
        std::cerr << "lexret: error: " << e.what() << '\n';
        return 1;
    }
}
