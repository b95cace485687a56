#include "support/fixtures.hpp"

#include <cmath>
#include <random>

namespace stfidf::testing {

namespace {

std::vector<double> normalized(std::vector<double> v) {
    double sq = 0.0;
    for (double x : v) {
        sq += x * x;
    }
    const double n = std::sqrt(sq);
    for (double& x : v) {
        x /= n;
    }
    return v;
}

// unit vector = normalize(axis + spread * perturbation)
std::vector<double> jittered_axis(std::size_t dim, std::size_t axis, double spread,
                                  std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(dim, 0.0);
    for (double& x : v) {
        x = spread * u(gen);
    }
    v[axis] += 1.0;
    return normalized(v);
}

// alphanumeric only, so the name survives the default text pipeline
std::string term_name(const std::string& doc_id, const char* kind, int i) {
    return doc_id + kind + std::to_string(i);
}

}  // namespace

PlantedFixture make_planted_fixture() {
    const std::size_t dim = 8;
    std::mt19937_64 gen(0x5eedf00dULL);

    // tf: context 12,9,8,7,7,6,6,5,5 / noise 10 -> noise sits at rank 2,
    // boundary rank 3 vs 4 untied. Small enough spread that the noise
    // term falls below the weakest context term before the top set
    // stabilizes.
    const std::vector<std::int64_t> context_tf = {12, 9, 8, 7, 7, 6, 6, 5, 5};

    PlantedFixture f{TokenizedDocument{},
                     DocumentFrequencyIndex{},
                     EmbeddingStore(static_cast<int>(dim),
                                    [&] {
                                        std::map<std::string, std::vector<double>> vectors;
                                        for (std::size_t i = 0; i < 9; ++i) {
                                            vectors["ctx" + std::to_string(i)] =
                                                jittered_axis(dim, 0, 0.05, gen);
                                        }
                                        vectors["noise"] = jittered_axis(dim, 1, 0.05, gen);
                                        return vectors;
                                    }()),
                     "noise",
                     {}};

    f.doc.id = "planted";
    for (std::size_t i = 0; i < context_tf.size(); ++i) {
        const std::string term = "ctx" + std::to_string(i);
        f.context_terms.push_back(term);
        f.doc.tf[term] = context_tf[i];
        for (std::int64_t k = 0; k < context_tf[i]; ++k) {
            f.doc.terms.push_back(term);
        }
    }
    f.doc.tf["noise"] = 10;
    for (int k = 0; k < 10; ++k) {
        f.doc.terms.push_back("noise");
    }

    f.index.corpus_size = 100;
    for (const auto& [term, tf] : f.doc.tf) {
        (void)tf;
        f.index.df[term] = 1;
    }
    return f;
}

SyntheticBenchmark make_benchmark(int num_docs, std::uint64_t seed) {
    const std::size_t dim = 16;
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<int> context_count(8, 28);   // n >= 9 keeps m >= 3
    std::uniform_int_distribution<int> top_tf(32, 40);
    std::uniform_int_distribution<int> distractor_count(0, 2);
    std::uniform_int_distribution<int> oov_count(0, 2);
    std::uniform_int_distribution<int> small_tf(2, 4);
    std::uniform_int_distribution<std::size_t> context_axis(0, dim / 2 - 1);

    std::map<std::string, std::vector<double>> vectors;
    std::vector<TokenizedDocument> docs;
    std::map<std::string, RelevanceLabels> labels;

    for (int d = 0; d < num_docs; ++d) {
        TokenizedDocument doc;
        doc.id = "doc" + std::to_string(d);
        RelevanceLabels label;
        label.doc_id = doc.id;

        // per-document orthogonal axis pair inside a shared store
        const std::size_t axis = context_axis(gen);
        const std::size_t noise_axis = axis + dim / 2;

        const int nc = context_count(gen);
        const int t0 = top_tf(gen);

        // context tf: t0, t0-2, t0-3, ...; noise tf t0-1 -> exact rank 2
        for (int i = 0; i < nc; ++i) {
            const std::string term = term_name(doc.id, "ctx", i);
            const std::int64_t tf = std::max<std::int64_t>(2, i == 0 ? t0 : t0 - 1 - i);
            doc.tf[term] = tf;
            vectors[term] = jittered_axis(dim, axis, 0.05, gen);
        }
        const std::string planted = term_name(doc.id, "noise", 0);
        doc.tf[planted] = t0 - 1;
        vectors[planted] = jittered_axis(dim, noise_axis, 0.05, gen);
        label.irrelevant_terms.insert(planted);

        const int extra_noise = distractor_count(gen);
        for (int i = 1; i <= extra_noise; ++i) {
            const std::string term = term_name(doc.id, "noise", i);
            doc.tf[term] = small_tf(gen);
            vectors[term] = jittered_axis(dim, noise_axis, 0.05, gen);
            label.irrelevant_terms.insert(term);
        }
        const int oov = oov_count(gen);
        for (int i = 0; i < oov; ++i) {
            doc.tf[term_name(doc.id, "oov", i)] = small_tf(gen);
        }

        for (const auto& [term, tf] : doc.tf) {
            for (std::int64_t k = 0; k < tf; ++k) {
                doc.terms.push_back(term);
            }
        }
        docs.push_back(std::move(doc));
        labels.emplace(label.doc_id, std::move(label));
    }

    DocumentFrequencyIndex index;
    index.corpus_size = num_docs;
    for (const auto& doc : docs) {
        for (const auto& [term, tf] : doc.tf) {
            (void)tf;
            index.df[term] = 1;
        }
    }

    return SyntheticBenchmark{std::move(docs), std::move(index),
                              EmbeddingStore(static_cast<int>(dim), std::move(vectors)),
                              std::move(labels)};
}

}  // namespace stfidf::testing
