#include "catch_amalgamated.hpp"

#include <filesystem>
#include <map>
#include <random>
#include <set>

#include "lexret/analyzer.hpp"
#include "lexret/errors.hpp"
#include "lexret/index.hpp"

using namespace lexret;
using Catch::Matchers::ContainsSubstring;

namespace {

CorpusIndex small_index() {
    return build_index({{"d1", {"a", "a", "b"}}, {"d2", {"b", "c"}}}, 42, {"a", "zzz"});
}

std::vector<DocumentInput> random_docs(std::mt19937& rng) {
    std::uniform_int_distribution<int> ndocs(1, 15);
    std::uniform_int_distribution<int> len(0, 30);
    std::uniform_int_distribution<int> word(0, 19);
    std::vector<DocumentInput> docs;
    const int n = ndocs(rng);
    for (int i = 0; i < n; ++i) {
        DocumentInput d{"doc" + std::to_string((i * 7) % n) + "_" + std::to_string(i), {}};
        for (int j = len(rng); j > 0; --j) {
            d.tokens.push_back("t" + std::to_string(word(rng)));
        }
        docs.push_back(std::move(d));
    }
    return docs;
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("lexret_test_index_" + name);
}

} // namespace

TEST_CASE("statistics of a two-document corpus") {
    const auto idx = small_index();
    CHECK(idx.num_docs() == 2);
    CHECK(idx.df("a") == 1);
    CHECK(idx.df("b") == 2);
    CHECK(idx.df("c") == 1);
    CHECK(idx.df("missing") == 0);
    CHECK(idx.avg_len() == 2.5);
    CHECK(idx.total_tokens() == 5);
    const auto a = idx.find_term("a");
    REQUIRE(a);
    const auto postings = idx.postings(*a);
    REQUIRE(postings.size() == 1);
    CHECK(idx.doc_id(postings[0].doc) == "d1");
    CHECK(postings[0].tf == 2);
    CHECK(idx.doc_len(*idx.find_doc("d2")) == 2);
}

TEST_CASE("keyword flags only cover terms in the corpus") {
    const auto idx = small_index();
    CHECK(idx.is_keyword(*idx.find_term("a")));
    CHECK_FALSE(idx.is_keyword(*idx.find_term("b")));
    CHECK(idx.num_keywords() == 1);
    CHECK_FALSE(idx.find_term("zzz"));
}

TEST_CASE("documents are ordered by id regardless of input order") {
    const auto idx = build_index({{"z", {"x"}}, {"b", {"y"}}, {"m", {"x"}}}, 0);
    CHECK(std::vector<std::string>(idx.doc_ids().begin(), idx.doc_ids().end()) ==
          std::vector<std::string>{"b", "m", "z"});
}

TEST_CASE("single document corpus") {
    const auto idx = build_index({{"only", {"x", "y", "x"}}}, 1);
    CHECK(idx.num_docs() == 1);
    CHECK(idx.df("x") == 1);
    CHECK(idx.avg_len() == 3.0);
}

TEST_CASE("empty documents are indexed with zero length") {
    const auto idx = build_index({{"e", {}}, {"f", {"w"}}}, 1);
    CHECK(idx.doc_len(*idx.find_doc("e")) == 0);
    CHECK(idx.avg_len() == 0.5);
}

TEST_CASE("build errors") {
    CHECK_THROWS_AS(build_index({}, 0), IndexBuildError);
    CHECK_THROWS_WITH(build_index({{"d1", {"a"}}, {"d1", {"b"}}}, 0), ContainsSubstring("d1"));
    CHECK_THROWS_AS(build_index({{"d1", {"a"}}, {"d1", {"b"}}}, 0), IndexBuildError);
    CHECK_THROWS_AS(build_index({{"", {"a"}}}, 0), IndexBuildError);
    CHECK_THROWS_AS(build_index({{"has space", {"a"}}}, 0), IndexBuildError);
}

TEST_CASE("copies keep working after the original is gone") {
    CorpusIndex copy;
    {
        const auto original = small_index();
        copy = original;
    }
    CHECK(copy.df("b") == 2);
    CHECK(copy.find_doc("d2").has_value());
    const CorpusIndex constructed(copy);
    CHECK(constructed == copy);
}

TEST_CASE("serialization round trip and byte-identical rebuilds") {
    const auto idx = small_index();
    const auto bytes = serialize_index(idx);
    CHECK(bytes.substr(0, 8) == std::string("LEXRIDX\0", 8));
    const auto back = deserialize_index(bytes);
    CHECK(back == idx);
    CHECK(back.fingerprint() == 42);
    CHECK(back.is_keyword(*back.find_term("a")));
    CHECK(serialize_index(small_index()) == bytes);

    const auto path = temp_path("roundtrip.idx");
    save_index(idx, path);
    CHECK(load_index(path) == idx);
    std::filesystem::remove(path);
}

TEST_CASE("corrupt files are rejected") {
    const auto bytes = serialize_index(small_index());
    SECTION("truncated") {
        for (std::size_t cut : {std::size_t{0}, std::size_t{5}, std::size_t{20}, bytes.size() - 1}) {
            CHECK_THROWS_AS(deserialize_index(bytes.substr(0, cut)), FormatError);
        }
    }
    SECTION("flipped byte") {
        auto bad = bytes;
        bad[bytes.size() / 2] = static_cast<char>(bad[bytes.size() / 2] ^ 0x5a);
        CHECK_THROWS_AS(deserialize_index(bad), FormatError);
    }
    SECTION("trailing garbage") {
        CHECK_THROWS_AS(deserialize_index(bytes + "x"), FormatError);
    }
    SECTION("bad magic") {
        auto bad = bytes;
        bad[0] = 'X';
        CHECK_THROWS_AS(deserialize_index(bad), FormatError);
    }
    SECTION("future version") {
        auto bad = bytes;
        bad[8] = static_cast<char>(kIndexFormatVersion + 1);
        CHECK_THROWS_AS(deserialize_index(bad), VersionError);
    }
    SECTION("missing file") {
        CHECK_THROWS_AS(load_index(temp_path("does_not_exist.idx")), IoError);
    }
}

TEST_CASE("property: index statistics agree with the raw documents") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        auto docs = random_docs(rng);
        const auto idx = build_index(docs, 9);
        REQUIRE(idx.num_docs() == docs.size());

        std::map<std::string, std::map<std::string, std::uint32_t>> tf;
        std::uint64_t total = 0;
        for (const auto& d : docs) {
            REQUIRE(idx.doc_len(*idx.find_doc(d.id)) == d.tokens.size());
            total += d.tokens.size();
            for (const auto& t : d.tokens) {
                ++tf[t][d.id];
            }
        }
        REQUIRE(idx.total_tokens() == total);
        REQUIRE(idx.num_terms() == tf.size());

        std::vector<std::uint64_t> len_from_postings(idx.num_docs(), 0);
        for (TermOrdinal t = 0; t < idx.num_terms(); ++t) {
            const auto& expected = tf.at(idx.terms()[t]);
            const auto postings = idx.postings(t);
            REQUIRE(postings.size() == expected.size());
            REQUIRE(idx.df(t) == expected.size());
            REQUIRE(idx.df(t) >= 1);
            REQUIRE(idx.df(t) <= idx.num_docs());
            for (std::size_t i = 0; i < postings.size(); ++i) {
                if (i > 0) {
                    REQUIRE(postings[i - 1].doc < postings[i].doc);
                }
                REQUIRE(postings[i].tf == expected.at(idx.doc_id(postings[i].doc)));
                len_from_postings[postings[i].doc] += postings[i].tf;
            }
        }
        for (DocOrdinal d = 0; d < idx.num_docs(); ++d) {
            REQUIRE(len_from_postings[d] == idx.doc_len(d));
        }
        REQUIRE(deserialize_index(serialize_index(idx)) == idx);
    }
}

TEST_CASE("corpus index build is independent of thread count") {
    const Analyzer analyzer(PipelineConfig::standard(), StopwordList::english());
    std::vector<RawDocument> docs;
    for (int i = 0; i < 40; ++i) {
        docs.push_back({"d" + std::to_string(i),
                        "The appellant's appeal " + std::to_string(i) + " concerns land, and " +
                            std::string(static_cast<std::size_t>(i % 5 + 1), 'q') + " evidence."});
    }
    const auto one = build_corpus_index(docs, analyzer, 1);
    const auto many = build_corpus_index(docs, analyzer, 6);
    CHECK(serialize_index(one) == serialize_index(many));
    CHECK(one.fingerprint() == analyzer.fingerprint());
    CHECK(one.num_keywords() > 0);
}
