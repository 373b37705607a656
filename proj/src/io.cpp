#include "lexret/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "lexret/errors.hpp"

namespace lexret {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) {
            ++i;
        }
        const auto start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') {
            ++i;
        }
        if (i > start) {
            fields.push_back(line.substr(start, i - start));
        }
    }
    return fields;
}

// Calls fn(line, line_no) for every line, CR stripped.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        auto line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        fn(line, ++line_no);
        pos = end + 1;
    }
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

[[noreturn]] void bad_line(std::string_view kind, std::size_t line_no, const std::string& what) {
    throw FormatError("malformed " + std::string(kind) + " line " + std::to_string(line_no) +
                      ": " + what);
}

template <typename Parse>
auto with_path(const std::filesystem::path& path, Parse&& parse) {
    const auto text = read_file(path);
    try {
        return parse(text);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

} // namespace

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

Qrels parse_qrels(std::string_view text) {
    Qrels qrels;
    for_each_line(text, [&](std::string_view line, std::size_t line_no) {
        const auto f = split_ws(line);
        if (f.empty()) {
            return;
        }
        if (f.size() != 4) {
            bad_line("qrels", line_no, "expected 'query_id 0 doc_id rel'");
        }
        int rel = 0;
        if (!parse_number(f[3], rel) || (rel != 0 && rel != 1)) {
            bad_line("qrels", line_no, "relevance must be 0 or 1");
        }
        auto& relevant = qrels[std::string(f[0])];
        if (rel == 1) {
            relevant.emplace(f[2]);
        }
    });
    return qrels;
}

Qrels read_qrels(const std::filesystem::path& path) {
    return with_path(path, parse_qrels);
}

Run parse_run(std::string_view text) {
    struct Entry {
        std::size_t rank;
        ScoredDoc doc;
    };
    std::map<std::string, std::vector<Entry>, std::less<>> entries;
    for_each_line(text, [&](std::string_view line, std::size_t line_no) {
        const auto f = split_ws(line);
        if (f.empty()) {
            return;
        }
        if (f.size() != 6) {
            bad_line("run", line_no, "expected 'query_id Q0 doc_id rank score tag'");
        }
        std::size_t rank = 0;
        double score = 0.0;
        if (!parse_number(f[3], rank) || rank == 0) {
            bad_line("run", line_no, "rank must be a positive integer");
        }
        if (!parse_number(f[4], score) || !std::isfinite(score)) {
            bad_line("run", line_no, "score must be a finite number");
        }
        entries[std::string(f[0])].push_back({rank, {std::string(f[2]), score}});
    });

    Run run;
    for (auto& [qid, list] : entries) {
        std::sort(list.begin(), list.end(),
                  [](const Entry& a, const Entry& b) { return a.rank < b.rank; });
        std::set<std::string_view> seen;
        Ranking ranking;
        ranking.reserve(list.size());
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (list[i].rank != i + 1) {
                throw FormatError("run for query '" + qid + "' has ranks that are not exactly 1.." +
                                  std::to_string(list.size()));
            }
            if (!seen.insert(list[i].doc.doc_id).second) {
                throw FormatError("run for query '" + qid + "' lists document '" +
                                  list[i].doc.doc_id + "' twice");
            }
            ranking.push_back(list[i].doc);
        }
        run.emplace(qid, std::move(ranking));
    }
    return run;
}

Run read_run(const std::filesystem::path& path) {
    return with_path(path, parse_run);
}

std::string format_run(const Run& run, std::string_view tag) {
    std::string out;
    char score[64];
    for (const auto& [qid, ranking] : run) {
        for (std::size_t i = 0; i < ranking.size(); ++i) {
            std::snprintf(score, sizeof score, "%.12g", ranking[i].score);
            out += qid;
            out += " Q0 ";
            out += ranking[i].doc_id;
            out += ' ';
            out += std::to_string(i + 1);
            out += ' ';
            out += score;
            out += ' ';
            out += tag;
            out += '\n';
        }
    }
    return out;
}

void write_run(const Run& run, std::string_view tag, const std::filesystem::path& path) {
    write_file(path, format_run(run, tag));
}

std::vector<QueryText> parse_queries(std::string_view text) {
    std::vector<QueryText> queries;
    std::set<std::string, std::less<>> ids;
    for_each_line(text, [&](std::string_view line, std::size_t line_no) {
        if (line.find_first_not_of(" \t") == std::string_view::npos) {
            return;
        }
        const auto tab = line.find('\t');
        if (tab == std::string_view::npos) {
            bad_line("queries", line_no, "expected query_id<TAB>query_text");
        }
        const auto id = line.substr(0, tab);
        if (!is_valid_doc_id(id)) {
            bad_line("queries", line_no, "query id must be non-empty without whitespace");
        }
        if (!ids.emplace(id).second) {
            bad_line("queries", line_no, "duplicate query id '" + std::string(id) + "'");
        }
        queries.push_back({std::string(id), std::string(line.substr(tab + 1))});
    });
    return queries;
}

std::vector<QueryText> read_queries(const std::filesystem::path& path) {
    return with_path(path, parse_queries);
}

std::vector<RawDocument> read_corpus_dir(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        throw IoError("corpus directory " + dir.string() + " does not exist");
    }
    std::vector<RawDocument> docs;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) {
            continue;
        }
        const auto name = entry.path().filename().string();
        if (name.empty() || name.front() == '.') {
            continue;
        }
        docs.push_back({entry.path().stem().string(), read_file(entry.path())});
    }
    std::sort(docs.begin(), docs.end(),
              [](const RawDocument& a, const RawDocument& b) { return a.id < b.id; });
    return docs;
}

} // namespace lexret
