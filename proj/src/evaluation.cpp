#include "stfidf/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <json.hpp>

#include "stfidf/errors.hpp"

namespace stfidf {

namespace {

std::string format_double(double value) {
    char buf[64];
    auto [ptr, err] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)err;
    return std::string(buf, ptr);
}

// R-7 quantile: linear interpolation between order statistics.
double quantile(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    if (n == 1) {
        return sorted[0];
    }
    const double h = p * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, n - 1);
    return sorted[lo] + (h - std::floor(h)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

double ranking_error(const ScoreTable& scores, const RelevanceLabels& labels, int m) {
    const std::vector<std::string> top = top_set(scores, m);
    std::size_t hits = 0;
    for (const auto& term : top) {
        hits += labels.irrelevant_terms.count(term);
    }
    return static_cast<double>(hits) / static_cast<double>(top.size());
}

ComparisonReport compare(const std::vector<TokenizedDocument>& docs,
                         const DocumentFrequencyIndex& index, const EmbeddingStore& store,
                         const std::map<std::string, RelevanceLabels>& labels,
                         const RefinementConfig& cfg, const WarningSink& warn) {
    ComparisonReport report;
    for (const auto& doc : docs) {
        auto label_it = labels.find(doc.id);
        if (label_it == labels.end()) {
            if (warn) {
                warn("document '" + doc.id + "' has no labels; skipped");
            }
            report.skipped.push_back(doc.id);
            continue;
        }
        if (doc.tf.empty()) {
            if (warn) {
                warn("document '" + doc.id + "' has no terms; skipped");
            }
            report.skipped.push_back(doc.id);
            continue;
        }

        const ScoreTable tfidf = tfidf_score(doc, index, warn);
        const RefinementResult refined = refine(doc, tfidf, store, cfg);

        // Same m the engine uses: distinct in-vocabulary terms, floored.
        std::int64_t n = 0;
        for (const auto& [term, count] : doc.tf) {
            (void)count;
            const std::vector<double>* vec = store.find(term);
            n += vec != nullptr && norm(*vec) != 0.0;
        }
        const int m = std::max(1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(n)))));

        ErrorReport row;
        row.doc_id = doc.id;
        row.m = m;
        row.tfidf_error = ranking_error(tfidf, label_it->second, m);
        row.stfidf_error = ranking_error(refined.final_scores, label_it->second, m);
        row.delta = row.tfidf_error - row.stfidf_error;
        report.rows.push_back(std::move(row));
    }

    if (report.rows.empty()) {
        throw InvalidArgument("no labeled documents to evaluate");
    }

    std::vector<double> tfidf_errors;
    std::vector<double> stfidf_errors;
    tfidf_errors.reserve(report.rows.size());
    stfidf_errors.reserve(report.rows.size());
    for (const auto& row : report.rows) {
        tfidf_errors.push_back(row.tfidf_error);
        stfidf_errors.push_back(row.stfidf_error);
    }
    report.tfidf = summarize(std::move(tfidf_errors));
    report.stfidf = summarize(std::move(stfidf_errors));
    return report;
}

std::map<std::string, RelevanceLabels> load_labels(std::string_view json_text,
                                                   std::string_view source_name) {
    const std::string source(source_name);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(source, 0, "", e.what());
    }
    if (!j.is_object()) {
        throw ParseError(source, 0, "", "labels file must be a JSON object");
    }
    std::map<std::string, RelevanceLabels> labels;
    for (const auto& [doc_id, terms] : j.items()) {
        if (!terms.is_array()) {
            throw ParseError(source, 0, doc_id, "must be an array of terms");
        }
        RelevanceLabels entry;
        entry.doc_id = doc_id;
        for (const auto& term : terms) {
            if (!term.is_string()) {
                throw ParseError(source, 0, doc_id, "terms must be strings");
            }
            entry.irrelevant_terms.insert(term.get<std::string>());
        }
        labels.emplace(doc_id, std::move(entry));
    }
    return labels;
}

std::string report_to_csv(const ComparisonReport& report) {
    std::string out = "doc_id,m,tfidf_error,stfidf_error,delta\n";
    for (const auto& row : report.rows) {
        out += row.doc_id;
        out += ',';
        out += std::to_string(row.m);
        out += ',';
        out += format_double(row.tfidf_error);
        out += ',';
        out += format_double(row.stfidf_error);
        out += ',';
        out += format_double(row.delta);
        out += '\n';
    }
    return out;
}

std::string summary_to_json(const ComparisonReport& report) {
    auto stats = [](const SummaryStats& s) {
        nlohmann::json j;
        j["mean"] = s.mean;
        j["median"] = s.median;
        j["q1"] = s.q1;
        j["q3"] = s.q3;
        j["min"] = s.min;
        j["max"] = s.max;
        return j;
    };
    nlohmann::json j;
    j["documents"] = report.rows.size();
    j["skipped"] = report.skipped;
    j["tfidf"] = stats(report.tfidf);
    j["stfidf"] = stats(report.stfidf);
    return j.dump() + "\n";
}

SummaryStats summarize(std::vector<double> values) {
    if (values.empty()) {
        throw InvalidArgument("summarize: no values");
    }
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    SummaryStats stats;
    stats.mean = sum / static_cast<double>(values.size());
    stats.median = quantile(values, 0.5);
    stats.q1 = quantile(values, 0.25);
    stats.q3 = quantile(values, 0.75);
    stats.min = values.front();
    stats.max = values.back();
    return stats;
}

}  // namespace stfidf
