#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "stfidf/embedding.hpp"
#include "stfidf/engine.hpp"
#include "stfidf/tfidf.hpp"

namespace stfidf {

// Human judgments for one document: the terms annotated as having the
// least relevance. Terms must be normalized under the active pipeline
// config.
struct RelevanceLabels {
    std::string doc_id;
    std::set<std::string> irrelevant_terms;
};

struct ErrorReport {
    std::string doc_id;
    int m = 0;
    double tfidf_error = 0.0;
    double stfidf_error = 0.0;
    double delta = 0.0;  // tfidf_error - stfidf_error; positive means improvement
};

// min/q1/median/q3/max use linear interpolation between order statistics.
struct SummaryStats {
    double mean = 0.0;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double min = 0.0;
    double max = 0.0;
};

struct ComparisonReport {
    std::vector<ErrorReport> rows;
    SummaryStats tfidf;
    SummaryStats stfidf;
    std::vector<std::string> skipped;  // docs without labels or with no scorable terms
};

// Fraction of the (tie-expanded) top-m terms that are labeled irrelevant;
// in [0, 1] and invariant under any positive monotone rescoring.
double ranking_error(const ScoreTable& scores, const RelevanceLabels& labels, int m);

// Scores every document with plain TF-IDF and with refinement, evaluates
// both rankings at the per-document m = max(1, floor(sqrt(n))) the engine
// uses, and aggregates the two error distributions. Documents without
// labels are skipped with a warning. Throws InvalidArgument when nothing
// is evaluable.
ComparisonReport compare(const std::vector<TokenizedDocument>& docs,
                         const DocumentFrequencyIndex& index, const EmbeddingStore& store,
                         const std::map<std::string, RelevanceLabels>& labels,
                         const RefinementConfig& cfg, const WarningSink& warn = {});

// Labels file: {"<doc_id>": ["term", ...], ...}
std::map<std::string, RelevanceLabels> load_labels(std::string_view json_text,
                                                   std::string_view source_name = "labels");

// CSV: header doc_id,m,tfidf_error,stfidf_error,delta then one row per
// document, errors printed with shortest round-trip precision.
std::string report_to_csv(const ComparisonReport& report);

// {"documents":N,"skipped":[...],"stfidf":{...},"tfidf":{...}} with
// mean/median/q1/q3/min/max per method.
std::string summary_to_json(const ComparisonReport& report);

// Aggregation helper used for the report; exposed for reuse.
SummaryStats summarize(std::vector<double> values);

}  // namespace stfidf
