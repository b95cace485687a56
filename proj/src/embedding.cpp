#include "stfidf/embedding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>
#include <utility>

#include "stfidf/errors.hpp"

namespace stfidf {

namespace {

// Splits on runs of spaces and tabs; tolerates a trailing '\r'.
std::vector<std::string_view> split_fields(std::string_view line) {
    if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
    }
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) {
            ++i;
        }
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') {
            ++i;
        }
        if (i > start) {
            fields.push_back(line.substr(start, i - start));
        }
    }
    return fields;
}

double parse_component(std::string_view field, const std::string& source, long line) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, err] = std::from_chars(first, last, value);
    if (err != std::errc() || ptr != last) {
        throw ParseError(source, line, "", "non-numeric vector component '" + std::string(field) + "'");
    }
    if (!std::isfinite(value)) {
        throw ParseError(source, line, "", "non-finite vector component '" + std::string(field) + "'");
    }
    return value;
}

std::int64_t parse_count(std::string_view field, const std::string& source, const char* what) {
    std::int64_t value = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, err] = std::from_chars(first, last, value);
    if (err != std::errc() || ptr != last || value < 1) {
        throw ParseError(source, 1, "", std::string("invalid ") + what + " '" + std::string(field) + "'");
    }
    return value;
}

}  // namespace

EmbeddingStore::EmbeddingStore(int dim, std::map<std::string, std::vector<double>> vectors)
    : dim_(dim), vectors_(std::move(vectors)) {
    if (dim_ < 1) {
        throw InvalidArgument("embedding dimension must be >= 1");
    }
    if (vectors_.empty()) {
        throw InvalidArgument("embedding vocabulary is empty");
    }
    for (const auto& [term, vec] : vectors_) {
        if (static_cast<int>(vec.size()) != dim_) {
            throw InvalidArgument("vector for '" + term + "' has wrong dimension");
        }
        for (double v : vec) {
            if (!std::isfinite(v)) {
                throw InvalidArgument("vector for '" + term + "' has non-finite component");
            }
        }
    }
}

const std::vector<double>* EmbeddingStore::find(const std::string& term) const {
    auto it = vectors_.find(term);
    return it == vectors_.end() ? nullptr : &it->second;
}

EmbeddingStore load_word2vec_text(std::istream& in, std::string_view source_name) {
    const std::string source(source_name);
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(source, 1, "", "missing header line");
    }
    auto header = split_fields(line);
    if (header.size() != 2) {
        throw ParseError(source, 1, "", "header must be '<vocab_count> <dim>'");
    }
    const std::int64_t declared = parse_count(header[0], source, "vocab count");
    const std::int64_t dim = parse_count(header[1], source, "dimension");

    std::map<std::string, std::vector<double>> vectors;
    long line_no = 1;
    std::int64_t seen = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto fields = split_fields(line);
        if (fields.empty()) {
            continue;  // blank line (e.g. trailing newline)
        }
        if (seen == declared) {
            throw ParseError(source, line_no, "",
                             "vocab count mismatch: header declares " + std::to_string(declared) +
                                 " vectors but more lines follow");
        }
        if (static_cast<std::int64_t>(fields.size()) != dim + 1) {
            throw ParseError(source, line_no, "",
                             "expected " + std::to_string(dim) + " components, found " +
                                 std::to_string(fields.size() - 1));
        }
        std::string token(fields[0]);
        std::vector<double> vec;
        vec.reserve(static_cast<std::size_t>(dim));
        for (std::int64_t i = 1; i <= dim; ++i) {
            vec.push_back(parse_component(fields[static_cast<std::size_t>(i)], source, line_no));
        }
        if (!vectors.emplace(std::move(token), std::move(vec)).second) {
            throw ParseError(source, line_no, "", "duplicate token '" + std::string(fields[0]) + "'");
        }
        ++seen;
    }
    if (seen != declared) {
        throw ParseError(source, line_no, "",
                         "vocab count mismatch: header declares " + std::to_string(declared) +
                             " vectors, file has " + std::to_string(seen));
    }
    return EmbeddingStore(static_cast<int>(dim), std::move(vectors));
}

EmbeddingStore load_word2vec_text(std::string_view text, std::string_view source_name) {
    std::istringstream in{std::string(text)};
    return load_word2vec_text(in, source_name);
}

std::string save_word2vec_text(const EmbeddingStore& store) {
    std::string out;
    out += std::to_string(store.size());
    out += ' ';
    out += std::to_string(store.dim());
    out += '\n';
    char buf[64];
    for (const auto& [term, vec] : store.vectors()) {
        out += term;
        for (double v : vec) {
            auto [ptr, err] = std::to_chars(buf, buf + sizeof(buf), v);
            (void)err;
            out += ' ';
            out.append(buf, ptr);
        }
        out += '\n';
    }
    return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw InvalidArgument("vector length mismatch");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += a[i] * b[i];
    }
    return sum;
}

double norm(std::span<const double> v) {
    double sum = 0.0;
    for (double x : v) {
        sum += x * x;
    }
    return std::sqrt(sum);
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
    const double na = norm(a);
    const double nb = norm(b);
    if (na == 0.0 || nb == 0.0) {
        throw InvalidArgument("undefined angle: zero vector");
    }
    if (std::equal(a.begin(), a.end(), b.begin(), b.end())) {
        return 1.0;  // keeps the self-distance exactly zero
    }
    const double sim = dot(a, b) / (na * nb);
    return std::clamp(sim, -1.0, 1.0);
}

double cosine_distance(std::span<const double> a, std::span<const double> b) {
    return 1.0 - cosine_similarity(a, b);
}

MeanEmbedding weighted_mean(const std::vector<WeightedVector>& items, MeanMode mode) {
    if (items.empty()) {
        throw InvalidArgument("no embedded terms");
    }
    const std::size_t dim = items.front().vector.size();
    std::vector<double> sum(dim, 0.0);
    double weight_sum = 0.0;
    for (const auto& item : items) {
        if (item.vector.size() != dim) {
            throw InvalidArgument("vector length mismatch");
        }
        if (!std::isfinite(item.weight) || item.weight <= 0.0) {
            throw InvalidArgument("weights must be finite and > 0");
        }
        for (std::size_t i = 0; i < dim; ++i) {
            sum[i] += item.weight * item.vector[i];
        }
        weight_sum += item.weight;
    }
    const double divisor =
        mode == MeanMode::count_divisor ? static_cast<double>(items.size()) : weight_sum;
    for (double& x : sum) {
        x /= divisor;
    }
    return MeanEmbedding{std::move(sum)};
}

}  // namespace stfidf
