#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lexret/analyzer.hpp"
#include "lexret/eval.hpp"

namespace lexret {

/// Whole file as bytes. Throws IoError naming the path.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Qrels lines: `query_id 0 doc_id rel`, rel in {0, 1}. A query whose lines
/// are all rel=0 is kept with an empty relevant set.
Qrels parse_qrels(std::string_view text);
Qrels read_qrels(const std::filesystem::path& path);

/// Run lines: `query_id Q0 doc_id rank score tag`. Per query the doc ids must
/// be unique and the ranks must be exactly 1..n.
Run parse_run(std::string_view text);
Run read_run(const std::filesystem::path& path);

/// Queries in id order, each ranking in rank order.
std::string format_run(const Run& run, std::string_view tag);
void write_run(const Run& run, std::string_view tag, const std::filesystem::path& path);

struct QueryText {
    std::string id;
    std::string text;
};

/// `query_id<TAB>query_text` per line; blank lines ignored.
std::vector<QueryText> parse_queries(std::string_view text);
std::vector<QueryText> read_queries(const std::filesystem::path& path);

/// Every regular file in dir is one document, DocId = filename without
/// extension. Returned in ascending id order.
std::vector<RawDocument> read_corpus_dir(const std::filesystem::path& dir);

} // namespace lexret
