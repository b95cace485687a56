#include "stfidf/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <utility>

#include <json.hpp>

namespace stfidf {

namespace {

void require_valid(const RefinementConfig& cfg) {
    if (!(cfg.epsilon > 0.0) || !std::isfinite(cfg.epsilon)) {
        throw InvalidArgument("epsilon must be finite and > 0");
    }
    if (cfg.max_iterations < 1) {
        throw InvalidArgument("max_iterations must be >= 1");
    }
}

// Top-m selection over an arbitrary score map; shared by the public
// top_set and the in-vocabulary restriction inside refine.
std::vector<std::string> top_of(const std::map<std::string, double>& scores, int m) {
    if (scores.empty()) {
        throw InvalidArgument("top_set: empty score table");
    }
    if (m < 1) {
        throw InvalidArgument("top_set: m must be >= 1");
    }
    std::vector<std::pair<std::string_view, double>> items;
    items.reserve(scores.size());
    for (const auto& [term, score] : scores) {
        items.emplace_back(term, score);
    }
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) {
            return a.second > b.second;
        }
        return a.first < b.first;
    });

    std::size_t cut = std::min(static_cast<std::size_t>(m), items.size());
    if (cut < items.size() && items[cut - 1].second == items[cut].second) {
        const double boundary = items[cut - 1].second;
        while (cut < items.size() && items[cut].second == boundary) {
            ++cut;
        }
    }

    std::vector<std::string> result;
    result.reserve(cut);
    for (std::size_t i = 0; i < cut; ++i) {
        result.emplace_back(items[i].first);
    }
    return result;
}

std::vector<double> unweighted_mean(const std::vector<std::string>& terms,
                                    const EmbeddingStore& store) {
    std::vector<double> sum(static_cast<std::size_t>(store.dim()), 0.0);
    for (const auto& term : terms) {
        const std::vector<double>& vec = *store.find(term);
        for (std::size_t i = 0; i < sum.size(); ++i) {
            sum[i] += vec[i];
        }
    }
    for (double& x : sum) {
        x /= static_cast<double>(terms.size());
    }
    return sum;
}

double mean_sq_deviation(const std::vector<std::string>& terms, const EmbeddingStore& store,
                         const std::vector<double>& reference) {
    double total = 0.0;
    for (const auto& term : terms) {
        const std::vector<double>& vec = *store.find(term);
        double sq = 0.0;
        for (std::size_t i = 0; i < vec.size(); ++i) {
            const double d = vec[i] - reference[i];
            sq += d * d;
        }
        total += sq;
    }
    return total / static_cast<double>(terms.size());
}

double euclidean_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sq += d * d;
    }
    return std::sqrt(sq);
}

int symmetric_difference_count(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    const std::set<std::string> sa(a.begin(), a.end());
    const std::set<std::string> sb(b.begin(), b.end());
    int count = 0;
    for (const auto& t : sa) {
        count += sb.count(t) == 0;
    }
    for (const auto& t : sb) {
        count += sa.count(t) == 0;
    }
    return count;
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) {
        return values[n / 2];
    }
    return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

}  // namespace

std::string_view to_string(StopReason reason) {
    switch (reason) {
        case StopReason::converged: return "converged";
        case StopReason::max_iterations: return "max_iterations";
        case StopReason::degenerate_input: return "degenerate_input";
    }
    return "unknown";
}

std::vector<std::string> top_set(const ScoreTable& scores, int m) {
    return top_of(scores.scores, m);
}

double score_weight(double score, double total) {
    if (!std::isfinite(score) || !std::isfinite(total) || score < 0.0 || total < 0.0) {
        throw InvalidArgument("score_weight: scores must be finite and >= 0");
    }
    if (score > total) {
        throw InvalidArgument("score_weight: score exceeds total");
    }
    if (score == total) {  // includes total == 0: the whole mass sits on one term
        throw DegenerateWeightError("degenerate weight: term holds the entire score mass");
    }
    return 1.0 / (1.0 - score / total);
}

double multiplier(std::span<const double> term_vec, const MeanEmbedding& mean,
                  const RefinementConfig& cfg) {
    if (norm(mean.vector) == 0.0) {
        throw DegenerateMeanError("degenerate mean: zero context embedding");
    }
    if (norm(term_vec) == 0.0) {
        throw InvalidArgument("multiplier: zero term vector");
    }
    if (cfg.similarity_mode == SimilarityMode::distance_text) {
        return 1.0 / (1.0 + cosine_distance(term_vec, mean.vector));
    }
    double d = dot(term_vec, mean.vector);
    if (cfg.negative_similarity == NegativeSimilarityPolicy::clamp_to_zero) {
        d = std::max(d, 0.0);
    }
    const double result = 1.0 / (1.0 + d);
    if (!std::isfinite(result) || result <= 0.0) {
        throw NumericalError("multiplier left (0, inf): dot product " + std::to_string(d));
    }
    return result;
}

RefinementResult refine(const TokenizedDocument& doc, const ScoreTable& initial,
                        const EmbeddingStore& store, const RefinementConfig& cfg) {
    require_valid(cfg);
    if (initial.iteration != 0) {
        throw InvalidArgument("refine: initial scores must be at iteration 0");
    }
    if (initial.doc_id != doc.id) {
        throw InvalidArgument("refine: score table does not belong to the document");
    }

    // Zero-norm vectors have no direction, so they count as
    // out-of-vocabulary here.
    std::vector<std::string> vocab_terms;
    for (const auto& [term, score] : initial.scores) {
        (void)score;
        const std::vector<double>* vec = store.find(term);
        if (vec != nullptr && norm(*vec) != 0.0) {
            vocab_terms.push_back(term);
        }
    }

    auto degenerate = [&] {
        return RefinementResult{initial, RefinementTrace{}, StopReason::degenerate_input};
    };

    const std::size_t n = vocab_terms.size();
    if (n <= 1) {
        return degenerate();
    }
    const int m = std::max(1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(n)))));

    std::map<std::string, double> scores = initial.scores;
    if (cfg.oov_policy == OovPolicy::drop_from_ranking) {
        std::map<std::string, double> kept;
        for (const auto& term : vocab_terms) {
            kept.emplace(term, scores.at(term));
        }
        scores = std::move(kept);
    }

    auto vocab_scores = [&] {
        std::map<std::string, double> restricted;
        for (const auto& term : vocab_terms) {
            restricted.emplace(term, scores.at(term));
        }
        return restricted;
    };

    RefinementTrace trace;
    std::vector<std::string> prev_top = top_of(vocab_scores(), m);
    std::vector<double> prev_mean = unweighted_mean(prev_top, store);
    trace.initial_top_set = prev_top;
    trace.initial_mean = prev_mean;

    for (int k = 1; k <= cfg.max_iterations; ++k) {
        double total = 0.0;
        for (const auto& [term, score] : scores) {
            (void)term;
            total += score;
        }

        std::vector<WeightedVector> weighted;
        weighted.reserve(prev_top.size());
        try {
            for (const auto& term : prev_top) {
                weighted.push_back({*store.find(term), score_weight(scores.at(term), total)});
            }
        } catch (const DegenerateWeightError&) {
            return degenerate();
        }
        const MeanEmbedding context = weighted_mean(weighted);
        if (norm(context.vector) == 0.0) {
            // Exact cancellation of the weighted vectors; no usable
            // direction to refine against.
            return degenerate();
        }

        std::map<std::string, double> vocab_multipliers;
        std::vector<double> multiplier_values;
        multiplier_values.reserve(n);
        for (const auto& term : vocab_terms) {
            const double mult = multiplier(*store.find(term), context, cfg);
            vocab_multipliers.emplace(term, mult);
            multiplier_values.push_back(mult);
        }
        const double neutral = median(multiplier_values);

        for (auto& [term, score] : scores) {
            auto it = vocab_multipliers.find(term);
            score *= it != vocab_multipliers.end() ? it->second : neutral;
            if (!std::isfinite(score) || score < 0.0) {
                throw NumericalError("refine: score for '" + term + "' left [0, inf) at iteration " +
                                     std::to_string(k));
            }
        }

        std::vector<std::string> new_top = top_of(vocab_scores(), m);
        std::vector<double> mu = unweighted_mean(new_top, store);

        TraceRecord record;
        record.k = k;
        record.top_set = new_top;
        record.mean = mu;
        record.variance = mean_sq_deviation(new_top, store, prev_mean);
        record.mean_displacement = euclidean_distance(mu, prev_mean);
        record.substitutions = symmetric_difference_count(prev_top, new_top);
        trace.records.push_back(record);

        prev_top = std::move(new_top);
        prev_mean = std::move(mu);

        if (record.mean_displacement <= cfg.epsilon) {
            return RefinementResult{ScoreTable{doc.id, std::move(scores), k}, std::move(trace),
                                    StopReason::converged};
        }
    }

    return RefinementResult{ScoreTable{doc.id, std::move(scores), cfg.max_iterations},
                            std::move(trace), StopReason::max_iterations};
}

std::string trace_to_jsonl(const RefinementTrace& trace) {
    std::string out;
    for (const auto& record : trace.records) {
        nlohmann::json j;
        j["k"] = record.k;
        j["top_set"] = record.top_set;
        j["mean"] = record.mean;
        j["variance"] = record.variance;
        j["displacement"] = record.mean_displacement;
        j["substitutions"] = record.substitutions;
        out += j.dump();
        out += '\n';
    }
    return out;
}

}  // namespace stfidf
