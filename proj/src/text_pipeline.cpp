#include "stfidf/text_pipeline.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <cstdint>
#include <istream>

#include "stfidf/errors.hpp"

namespace stfidf {

namespace {

const icu::Normalizer2& nfc() {
    UErrorCode ec = U_ZERO_ERROR;
    const icu::Normalizer2* instance = icu::Normalizer2::getNFCInstance(ec);
    if (U_FAILURE(ec) || instance == nullptr) {
        throw Error("ICU NFC normalizer unavailable");
    }
    return *instance;
}

// NFC + optional lowercasing. Invalid UTF-8 becomes U+FFFD.
icu::UnicodeString canonicalize(std::string_view text, const PipelineConfig& cfg) {
    icu::UnicodeString u = icu::UnicodeString::fromUTF8(
        icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
    UErrorCode ec = U_ZERO_ERROR;
    icu::UnicodeString norm = nfc().normalize(u, ec);
    if (U_FAILURE(ec)) {
        throw Error("unicode normalization failed");
    }
    if (cfg.lowercase) {
        norm.toLower(icu::Locale::getRoot());
    }
    return norm;
}

std::string to_utf8(const icu::UnicodeString& u) {
    std::string out;
    u.toUTF8String(out);
    return out;
}

void require_valid(const PipelineConfig& cfg) {
    if (cfg.min_token_length < 1) {
        throw InvalidArgument("min_token_length must be >= 1");
    }
}

}  // namespace

std::string normalize_token(std::string_view token, const PipelineConfig& cfg) {
    require_valid(cfg);
    icu::UnicodeString norm = canonicalize(token, cfg);
    icu::UnicodeString kept;
    for (int32_t i = 0; i < norm.length();) {
        UChar32 c = norm.char32At(i);
        i += U16_LENGTH(c);
        if (cfg.strip_punctuation && u_ispunct(c)) {
            continue;
        }
        kept.append(c);
    }
    return to_utf8(kept);
}

PipelineConfig normalized(PipelineConfig cfg) {
    std::set<std::string> norm;
    for (const auto& word : cfg.stopwords) {
        std::string n = normalize_token(word, cfg);
        if (!n.empty()) {
            norm.insert(std::move(n));
        }
    }
    cfg.stopwords = std::move(norm);
    return cfg;
}

TokenizedDocument tokenize(const RawDocument& doc, const PipelineConfig& cfg) {
    require_valid(cfg);
    TokenizedDocument out;
    out.id = doc.id;

    icu::UnicodeString norm = canonicalize(doc.text, cfg);

    icu::UnicodeString token;
    auto flush = [&] {
        if (token.isEmpty()) {
            return;
        }
        if (token.countChar32() >= cfg.min_token_length) {
            std::string term = to_utf8(token);
            if (cfg.stopwords.find(term) == cfg.stopwords.end()) {
                out.tf[term] += 1;
                out.terms.push_back(std::move(term));
            }
        }
        token.remove();
    };

    for (int32_t i = 0; i < norm.length();) {
        UChar32 c = norm.char32At(i);
        i += U16_LENGTH(c);
        if (u_isUWhiteSpace(c)) {
            flush();
            continue;
        }
        if (cfg.strip_punctuation && u_ispunct(c)) {
            continue;
        }
        token.append(c);
    }
    flush();
    return out;
}

std::int64_t distinct_term_count(const TokenizedDocument& doc) {
    return static_cast<std::int64_t>(doc.tf.size());
}

std::set<std::string> load_stopwords(std::istream& in) {
    std::set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        words.insert(line);
    }
    return words;
}

std::string config_fingerprint(const PipelineConfig& cfg) {
    PipelineConfig canon = normalized(cfg);

    // FNV-1a 64 over a canonical serialization; field and item separators
    // are control characters so stopword contents cannot collide with the
    // framing.
    std::uint64_t hash = 14695981039346656037ULL;
    auto mix = [&hash](std::string_view bytes) {
        for (unsigned char b : bytes) {
            hash ^= b;
            hash *= 1099511628211ULL;
        }
    };
    mix("stfidf-pipeline-v1\x1e");
    mix(cfg.lowercase ? "lowercase=1\x1e" : "lowercase=0\x1e");
    mix(cfg.strip_punctuation ? "strip_punctuation=1\x1e" : "strip_punctuation=0\x1e");
    mix("min_token_length=");
    mix(std::to_string(cfg.min_token_length));
    mix("\x1e" "stopwords:");
    for (const auto& word : canon.stopwords) {
        mix(word);
        mix("\x1f");
    }

    static const char* digits = "0123456789abcdef";
    std::string hex(16, '0');
    for (int i = 15; i >= 0; --i) {
        hex[static_cast<std::size_t>(i)] = digits[hash & 0xF];
        hash >>= 4;
    }
    return hex;
}

}  // namespace stfidf
