#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "stfidf/text_pipeline.hpp"

namespace stfidf {

// Per-term document counts for a corpus. Immutable once built; safe to
// share across threads.
struct DocumentFrequencyIndex {
    std::int64_t corpus_size = 0;            // |D|, >= 1
    std::map<std::string, std::int64_t> df;  // term -> number of documents containing it
    std::string config_fingerprint;          // pipeline fingerprint the index was built under

    bool operator==(const DocumentFrequencyIndex&) const = default;
};

// Per-term relevance scores for one document. iteration 0 means raw TF-IDF.
struct ScoreTable {
    std::string doc_id;
    std::map<std::string, double> scores;  // term -> finite score >= 0
    int iteration = 0;
};

// Optional sink for non-fatal diagnostics (unknown terms, skipped
// documents). Unset means silent.
using WarningSink = std::function<void(const std::string&)>;

// Streaming document-frequency accumulation. Document order does not
// affect the result.
class IndexBuilder {
public:
    explicit IndexBuilder(std::string config_fingerprint = "")
        : fingerprint_(std::move(config_fingerprint)) {}

    void add(const TokenizedDocument& doc);

    // Throws InvalidArgument("empty corpus") if no document was added.
    DocumentFrequencyIndex build() const;

private:
    std::int64_t docs_seen_ = 0;
    std::map<std::string, std::int64_t> df_;
    std::string fingerprint_;
};

DocumentFrequencyIndex build_index(const std::vector<TokenizedDocument>& docs,
                                   std::string config_fingerprint = "");

// scores[w] = tf[w] * ln(corpus_size / df(w)) for every distinct term of
// doc. Natural log; raw counts, no length normalization. Terms unseen at
// indexing time fall back to df = 1 and are reported through warn.
ScoreTable tfidf_score(const TokenizedDocument& doc, const DocumentFrequencyIndex& index,
                       const WarningSink& warn = {});

// Sum of per-occurrence scores of the query terms; terms absent from the
// table contribute 0. Higher is more relevant.
double query_score(const std::vector<std::string>& query_terms, const ScoreTable& doc_scores);

// Canonical JSON serialization:
//   {"config_fingerprint":"<hex>","corpus_size":<int>,"df":{...},"version":1}
// Keys sorted lexicographically; byte-stable across runs.
std::string save_index(const DocumentFrequencyIndex& index);

// Parses and validates an index. Malformed JSON or an invariant violation
// (df < 1, df > corpus_size, corpus_size < 1, wrong version, missing or
// mistyped fields) raises ParseError with source/line/field context.
DocumentFrequencyIndex load_index(std::string_view json_text, std::string_view source_name = "index");

// Hard error when the index was built under a different pipeline config.
void ensure_config_compatible(const DocumentFrequencyIndex& index, const PipelineConfig& cfg);

}  // namespace stfidf
