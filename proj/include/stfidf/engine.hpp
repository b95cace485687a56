#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stfidf/embedding.hpp"
#include "stfidf/errors.hpp"
#include "stfidf/text_pipeline.hpp"
#include "stfidf/tfidf.hpp"

namespace stfidf {

// How a word's proximity to the running context mean turns into a score
// multiplier.
//
//   distance_text    multiplier = 1 / (1 + cosine_distance(e(w), mean)),
//                    in [1/3, 1]: words aligned with the context keep
//                    their score, distant words shrink faster.
//   formula_literal  multiplier = 1 / (1 + dot(e(w), mean)). Kept for
//                    auditability; note that without clamping this REWARDS
//                    dissimilar words, and the raw dot product makes the
//                    result depend on vector norms.
enum class SimilarityMode {
    distance_text,
    formula_literal,
};

// Only meaningful under formula_literal. clamp_to_zero floors the dot
// product at 0, keeping the multiplier in (0, 1]; allow uses the raw dot
// product, which is unbounded once dot <= -1 and then fails loudly.
enum class NegativeSimilarityPolicy {
    clamp_to_zero,
    allow,
};

// Terms with no embedding vector cannot move toward or away from the
// context mean. neutral_multiplier keeps them in the ranking, rescaled by
// the median in-vocabulary multiplier each iteration; drop_from_ranking
// removes them from the result entirely.
enum class OovPolicy {
    neutral_multiplier,
    drop_from_ranking,
};

struct RefinementConfig {
    double epsilon = 1e-4;    // stop once the top-set mean moves <= epsilon
    int max_iterations = 50;  // hard iteration cap, >= 1
    SimilarityMode similarity_mode = SimilarityMode::distance_text;
    NegativeSimilarityPolicy negative_similarity = NegativeSimilarityPolicy::clamp_to_zero;
    OovPolicy oov_policy = OovPolicy::neutral_multiplier;
};

// Diagnostics for one refinement iteration. top_set, mean and the derived
// quantities describe the state AFTER the iteration's rescoring:
//   mean              unweighted mean of the top-set vectors
//   variance          mean squared Euclidean deviation of the top-set
//                     vectors from the previous iteration's mean
//   mean_displacement Euclidean distance between this mean and the
//                     previous one (the convergence quantity)
//   substitutions     |symmetric difference| against the previous top set
struct TraceRecord {
    int k = 0;
    std::vector<std::string> top_set;
    std::vector<double> mean;
    double variance = 0.0;
    double mean_displacement = 0.0;
    int substitutions = 0;
};

struct RefinementTrace {
    std::vector<std::string> initial_top_set;  // top set of the iteration-0 scores
    std::vector<double> initial_mean;          // its unweighted mean
    std::vector<TraceRecord> records;          // contiguous from k = 1
};

enum class StopReason {
    converged,        // mean displacement fell to <= epsilon
    max_iterations,   // iteration cap hit first
    degenerate_input, // <= 1 usable term, or all score mass on one term
};

std::string_view to_string(StopReason reason);

struct RefinementResult {
    ScoreTable final_scores;  // iteration == last trace record's k, or 0 when degenerate
    RefinementTrace trace;
    StopReason stop_reason = StopReason::degenerate_input;
};

// Raised by score_weight when a term holds the entire score mass; refine
// turns it into StopReason::degenerate_input.
class DegenerateWeightError : public Error {
public:
    using Error::Error;
};

// Raised by multiplier when the context mean is the zero vector.
class DegenerateMeanError : public Error {
public:
    using Error::Error;
};

// The m highest-scored terms, score descending, exact score ties broken
// by lexicographic term order. If the scores at ranks m and m+1 are
// exactly equal the set is extended to every term tied at that score.
std::vector<std::string> top_set(const ScoreTable& scores, int m);

// 1 / (1 - score/total): the factor by which a top-set term pulls the
// weighted mean toward itself. > 1 whenever score > 0, exactly 1 for a
// zero score. score == total is degenerate (single term holds all mass).
double score_weight(double score, double total);

// Per-term rescoring factor given the current weighted context mean; see
// SimilarityMode. Both vectors must be non-zero.
double multiplier(std::span<const double> term_vec, const MeanEmbedding& mean,
                  const RefinementConfig& cfg);

// Iterative rescoring of a document's TF-IDF table.
//
// Each iteration takes the top floor(sqrt(n)) in-vocabulary terms of the
// current scores (n = distinct in-vocabulary terms, m floored at 1, ties
// expanded), forms their weighted mean embedding using score_weight
// weights over the total current score mass, and multiplies every
// in-vocabulary term's score by multiplier(...). Out-of-vocabulary terms
// follow cfg.oov_policy. Stops once the unweighted top-set mean moves by
// <= cfg.epsilon, or after max_iterations.
//
// Documents with fewer than two in-vocabulary terms (zero-norm vectors
// count as out-of-vocabulary) and tables whose score mass degenerates
// onto a single term return the initial scores unchanged with
// StopReason::degenerate_input.
//
// Pure function; scores stay finite and non-negative under the default
// modes.
RefinementResult refine(const TokenizedDocument& doc, const ScoreTable& initial,
                        const EmbeddingStore& store, const RefinementConfig& cfg);

// One JSON object per iteration: {"k":..,"top_set":[..],"mean":[..],
// "variance":..,"displacement":..,"substitutions":..}.
std::string trace_to_jsonl(const RefinementTrace& trace);

}  // namespace stfidf
