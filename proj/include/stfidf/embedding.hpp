#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stfidf {

// Equation-level mean of a set of word vectors.
struct MeanEmbedding {
    std::vector<double> vector;
};

// Immutable vocabulary -> dense vector map of a fixed dimension. All
// query methods are pure and safe to call concurrently.
class EmbeddingStore {
public:
    // Validates: dim >= 1, non-empty vocabulary, every vector of length
    // dim with finite components.
    EmbeddingStore(int dim, std::map<std::string, std::vector<double>> vectors);

    int dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return vectors_.size(); }
    bool contains(const std::string& term) const { return vectors_.count(term) != 0; }

    // nullptr when the term has no vector.
    const std::vector<double>* find(const std::string& term) const;

    const std::map<std::string, std::vector<double>>& vectors() const noexcept { return vectors_; }

private:
    int dim_;
    std::map<std::string, std::vector<double>> vectors_;
};

// word2vec text format: header "<vocab_count> <dim>", then one
// "<token> <v1> ... <vdim>" line per word. Dimension mismatches,
// non-numeric or non-finite components, duplicate tokens and count
// mismatches raise ParseError naming the offending line.
EmbeddingStore load_word2vec_text(std::istream& in, std::string_view source_name = "embeddings");
EmbeddingStore load_word2vec_text(std::string_view text, std::string_view source_name = "embeddings");

// Serializes back to the text format, '\n' newlines, single-space
// separators, tokens in lexicographic order. Components are printed with
// shortest round-trip precision, so reloading reproduces bit-identical
// vectors.
std::string save_word2vec_text(const EmbeddingStore& store);

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> v);

// dot(a,b) / (|a||b|), clamped to [-1, 1] against floating-point drift.
// Zero vectors raise InvalidArgument("undefined angle").
double cosine_similarity(std::span<const double> a, std::span<const double> b);

// 1 - cosine_similarity; 0 for parallel, 1 for orthogonal, 2 for opposite.
double cosine_distance(std::span<const double> a, std::span<const double> b);

struct WeightedVector {
    std::span<const double> vector;
    double weight;  // finite, > 0
};

enum class MeanMode {
    count_divisor,      // (1/k) * sum(w_i * v_i), k = item count
    weight_normalized,  // sum(w_i * v_i) / sum(w_i)
};

// Weighted mean of word vectors. The default divides by the item count
// rather than the weight sum, so weights > 1 scale the result up; an
// empty list raises InvalidArgument("no embedded terms").
MeanEmbedding weighted_mean(const std::vector<WeightedVector>& items,
                            MeanMode mode = MeanMode::count_divisor);

}  // namespace stfidf
