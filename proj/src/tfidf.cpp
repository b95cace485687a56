#include "stfidf/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <json.hpp>

#include "stfidf/errors.hpp"

namespace stfidf {

namespace {

// 1-based line of a byte offset inside text, for parse diagnostics.
long line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<long>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

}  // namespace

void IndexBuilder::add(const TokenizedDocument& doc) {
    ++docs_seen_;
    for (const auto& [term, count] : doc.tf) {
        (void)count;
        df_[term] += 1;
    }
}

DocumentFrequencyIndex IndexBuilder::build() const {
    if (docs_seen_ == 0) {
        throw InvalidArgument("empty corpus");
    }
    return DocumentFrequencyIndex{docs_seen_, df_, fingerprint_};
}

DocumentFrequencyIndex build_index(const std::vector<TokenizedDocument>& docs,
                                   std::string config_fingerprint) {
    IndexBuilder builder(std::move(config_fingerprint));
    for (const auto& doc : docs) {
        builder.add(doc);
    }
    return builder.build();
}

ScoreTable tfidf_score(const TokenizedDocument& doc, const DocumentFrequencyIndex& index,
                       const WarningSink& warn) {
    if (index.corpus_size < 1) {
        throw InvalidArgument("index is empty");
    }
    ScoreTable table;
    table.doc_id = doc.id;
    table.iteration = 0;
    const double corpus_size = static_cast<double>(index.corpus_size);
    for (const auto& [term, count] : doc.tf) {
        auto it = index.df.find(term);
        std::int64_t df = 1;
        if (it != index.df.end()) {
            df = it->second;
        } else if (warn) {
            warn("term '" + term + "' not in index; using df=1");
        }
        table.scores[term] = static_cast<double>(count) * std::log(corpus_size / static_cast<double>(df));
    }
    return table;
}

double query_score(const std::vector<std::string>& query_terms, const ScoreTable& doc_scores) {
    double sum = 0.0;
    for (const auto& term : query_terms) {
        auto it = doc_scores.scores.find(term);
        if (it != doc_scores.scores.end()) {
            sum += it->second;
        }
    }
    return sum;
}

std::string save_index(const DocumentFrequencyIndex& index) {
    nlohmann::json j;
    j["version"] = 1;
    j["corpus_size"] = index.corpus_size;
    j["config_fingerprint"] = index.config_fingerprint;
    nlohmann::json df = nlohmann::json::object();
    for (const auto& [term, count] : index.df) {
        df[term] = count;
    }
    j["df"] = std::move(df);
    return j.dump() + "\n";
}

DocumentFrequencyIndex load_index(std::string_view json_text, std::string_view source_name) {
    const std::string source(source_name);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(source, line_of_offset(json_text, e.byte), "", e.what());
    }

    auto require = [&](const char* field) -> const nlohmann::json& {
        if (!j.is_object() || !j.contains(field)) {
            throw ParseError(source, 0, field, "missing field");
        }
        return j.at(field);
    };

    const auto& version = require("version");
    if (!version.is_number_integer() || version.get<std::int64_t>() != 1) {
        throw ParseError(source, 0, "version", "unsupported index version");
    }

    DocumentFrequencyIndex index;
    const auto& corpus_size = require("corpus_size");
    if (!corpus_size.is_number_integer() || corpus_size.get<std::int64_t>() < 1) {
        throw ParseError(source, 0, "corpus_size", "must be an integer >= 1");
    }
    index.corpus_size = corpus_size.get<std::int64_t>();

    const auto& fingerprint = require("config_fingerprint");
    if (!fingerprint.is_string()) {
        throw ParseError(source, 0, "config_fingerprint", "must be a string");
    }
    index.config_fingerprint = fingerprint.get<std::string>();

    const auto& df = require("df");
    if (!df.is_object()) {
        throw ParseError(source, 0, "df", "must be an object");
    }
    for (const auto& [term, value] : df.items()) {
        if (!value.is_number_integer()) {
            throw ParseError(source, 0, "df." + term, "must be an integer");
        }
        const std::int64_t count = value.get<std::int64_t>();
        if (count < 1) {
            throw ParseError(source, 0, "df." + term, "document frequency must be >= 1");
        }
        if (count > index.corpus_size) {
            throw ParseError(source, 0, "df." + term, "document frequency exceeds corpus_size");
        }
        index.df[term] = count;
    }
    return index;
}

void ensure_config_compatible(const DocumentFrequencyIndex& index, const PipelineConfig& cfg) {
    const std::string fp = config_fingerprint(cfg);
    if (fp != index.config_fingerprint) {
        throw ConfigMismatch("pipeline config fingerprint " + fp +
                             " does not match index fingerprint " + index.config_fingerprint);
    }
}

}  // namespace stfidf
