#pragma once

// Deterministic synthetic fixtures: documents whose embedding geometry
// plants a tight context cluster plus noise terms that conventional
// TF-IDF misranks into the top set.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stfidf/embedding.hpp"
#include "stfidf/evaluation.hpp"
#include "stfidf/tfidf.hpp"

namespace stfidf::testing {

// Single-document fixture: 9 context terms clustered around one
// direction (pairwise cosine >= 0.95) and 1 noise term orthogonal to it,
// holding the 2nd-highest TF-IDF score.
struct PlantedFixture {
    TokenizedDocument doc;
    DocumentFrequencyIndex index;  // corpus_size 100, every term in one document
    EmbeddingStore store;          // dim 8, unit-norm vectors
    std::string noise_term;
    std::vector<std::string> context_terms;  // tf descending
};

PlantedFixture make_planted_fixture();

// Benchmark corpus of documents built from the same construction with
// varied sizes, one noise term planted at TF-IDF rank 2 of each document
// plus low-ranked noise distractors; labels mark exactly the noise terms.
struct SyntheticBenchmark {
    std::vector<TokenizedDocument> docs;
    DocumentFrequencyIndex index;
    EmbeddingStore store;  // shared dim for the whole corpus
    std::map<std::string, RelevanceLabels> labels;
};

SyntheticBenchmark make_benchmark(int num_docs, std::uint64_t seed);

}  // namespace stfidf::testing
