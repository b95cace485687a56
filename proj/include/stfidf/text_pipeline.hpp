#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace stfidf {

struct RawDocument {
    std::string id;    // non-empty, unique within a corpus
    std::string text;  // UTF-8; may be empty
};

// Tokenization settings. Stopword entries are expected to be normalized
// under the same config (lowercased, punctuation-stripped, NFC); use
// normalized() after filling the set from an external source.
struct PipelineConfig {
    std::set<std::string> stopwords;
    bool lowercase = true;
    bool strip_punctuation = true;
    int min_token_length = 1;  // in code points, >= 1

    bool operator==(const PipelineConfig&) const = default;
};

struct TokenizedDocument {
    std::string id;
    std::vector<std::string> terms;       // normalized terms in text order
    std::map<std::string, std::int64_t> tf;  // exact multiset count of terms
};

// Normalizes one token under cfg: Unicode NFC, lowercasing and punctuation
// stripping as configured. May return an empty string (token normalized
// away). Does not apply the length or stopword filters.
std::string normalize_token(std::string_view token, const PipelineConfig& cfg);

// Copy of cfg whose stopword entries have been normalized under cfg itself.
PipelineConfig normalized(PipelineConfig cfg);

// Whitespace-splits doc.text after NFC normalization, then applies
// lowercasing, punctuation stripping, the minimum-length filter and the
// stopword filter, in that order. Pure and deterministic; empty text
// yields an empty term list. Invalid UTF-8 sequences are replaced by
// U+FFFD rather than rejected.
TokenizedDocument tokenize(const RawDocument& doc, const PipelineConfig& cfg);

// Number of distinct terms, |keys(tf)|.
std::int64_t distinct_term_count(const TokenizedDocument& doc);

// Stopword file format: UTF-8, one token per line, lines starting with '#'
// ignored, trailing whitespace (including '\r') trimmed, blank lines
// skipped. Entries are returned as read; normalize via normalized().
std::set<std::string> load_stopwords(std::istream& in);

// Stable 16-hex-digit fingerprint over all config fields, including the
// stopword set (normalized first). Two configs that tokenize identically
// hash identically across runs and platforms.
std::string config_fingerprint(const PipelineConfig& cfg);

}  // namespace stfidf
