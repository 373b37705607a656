#include "lexret/config.hpp"

#include <charconv>
#include <cmath>

#include "lexret/errors.hpp"
#include "lexret/io.hpp"

namespace lexret {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_as(std::string_view key, std::string_view value) {
    T out{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError("bad value '" + std::string(value) + "' for " + std::string(key));
    }
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(out)) {
            throw ConfigError("non-finite value for " + std::string(key));
        }
    }
    return out;
}

} // namespace

bool parse_bool(std::string_view text) {
    const auto v = ascii_lower(trim(text));
    if (v == "1" || v == "true" || v == "yes" || v == "on") {
        return true;
    }
    if (v == "0" || v == "false" || v == "no" || v == "off") {
        return false;
    }
    throw ConfigError("bad boolean '" + std::string(text) + "'");
}

std::vector<std::size_t> parse_cutoffs(std::string_view text) {
    std::vector<std::size_t> ks;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find(',', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        const auto item = trim(text.substr(pos, end - pos));
        if (!item.empty()) {
            const auto k = parse_as<std::size_t>("k", item);
            if (k == 0) {
                throw ConfigError("cutoffs must be at least 1");
            }
            ks.push_back(k);
        }
        pos = end + 1;
    }
    if (ks.empty()) {
        throw ConfigError("no cutoffs given");
    }
    return ks;
}

void RunConfig::apply(std::string_view raw_key, std::string_view raw_value) {
    const auto key = trim(raw_key);
    const auto value = trim(raw_value);
    if (key == "preset") {
        const auto min_len = pipeline.min_token_len;
        pipeline = PipelineConfig::preset(value);
        pipeline.min_token_len = min_len;
    } else if (key == "lowercase") {
        pipeline.lowercase = parse_bool(value);
    } else if (key == "remove_noise") {
        pipeline.remove_noise = parse_bool(value);
    } else if (key == "remove_stopwords") {
        pipeline.remove_stopwords = parse_bool(value);
    } else if (key == "stem") {
        pipeline.stem = parse_bool(value);
    } else if (key == "min_token_len") {
        pipeline.min_token_len = parse_as<std::size_t>(key, value);
    } else if (key == "k1") {
        bm25.k1 = parse_as<double>(key, value);
    } else if (key == "b") {
        bm25.b = parse_as<double>(key, value);
    } else if (key == "epsilon") {
        bm25.epsilon = parse_as<double>(key, value);
    } else if (key == "delta") {
        bm25.delta = parse_as<double>(key, value);
    } else if (key == "scorer") {
        scorer = Scorer::parse(value);
    } else if (key == "scorers") {
        scorers = Scorer::parse_list(value);
    } else if (key == "top_n" || key == "top") {
        top_n = parse_as<std::size_t>(key, value);
    } else if (key == "k") {
        ks = parse_cutoffs(value);
    } else if (key == "f1_mode") {
        if (value == "per_query") {
            f1_mode = F1Mode::PerQuery;
        } else if (value == "of_means") {
            f1_mode = F1Mode::OfMeans;
        } else {
            throw ConfigError("f1_mode must be per_query or of_means");
        }
    } else if (key == "threads") {
        threads = parse_as<unsigned>(key, value);
    } else if (key == "tag") {
        tag = std::string(value);
    } else if (key == "corpus") {
        corpus = std::string(value);
    } else if (key == "queries") {
        queries = std::string(value);
    } else if (key == "qrels") {
        qrels = std::string(value);
    } else if (key == "embeddings") {
        embeddings = std::string(value);
    } else if (key == "stopwords") {
        stopwords = std::string(value);
    } else if (key == "index") {
        index = std::string(value);
    } else if (key == "out") {
        out = std::string(value);
    } else if (key == "run") {
        run = std::string(value);
    } else if (key == "runs_dir") {
        runs_dir = std::string(value);
    } else {
        throw ConfigError("unknown config key '" + std::string(key) + "'");
    }
}

void RunConfig::merge(std::string_view text) {
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        auto line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        try {
            apply(line.substr(0, eq), line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
    RunConfig config;
    try {
        config.merge(read_file(path));
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return config;
}

void RunConfig::validate() const {
    if (top_n < 1) {
        throw ConfigError("top_n must be at least 1");
    }
    try {
        bm25.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

StopwordList RunConfig::load_stopwords() const {
    if (stopwords.empty()) {
        return StopwordList::english();
    }
    auto list = StopwordList::from_file(stopwords);
    if (list.empty() && pipeline.remove_stopwords) {
        throw ConfigError("stopword file " + stopwords.string() + " has no entries");
    }
    return list;
}

} // namespace lexret
