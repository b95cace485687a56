#include "stfidf/embedding.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

#include "stfidf/errors.hpp"

using namespace stfidf;

namespace {

std::vector<double> random_vector(std::mt19937_64& gen, std::size_t dim) {
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    std::vector<double> v(dim);
    for (double& x : v) {
        x = u(gen);
    }
    return v;
}

}  // namespace

TEST_CASE("load_word2vec_text reads the declared vocabulary") {
    const auto store = load_word2vec_text(std::string_view("2 3\na 1 0 0\nb 0 1 0\n"));
    CHECK(store.dim() == 3);
    CHECK(store.size() == 2);
    CHECK(*store.find("a") == std::vector<double>{1.0, 0.0, 0.0});
    CHECK(*store.find("b") == std::vector<double>{0.0, 1.0, 0.0});
    CHECK(store.find("c") == nullptr);
}

TEST_CASE("word2vec parse errors name the offending line") {
    auto line_of = [](const char* text) {
        try {
            load_word2vec_text(std::string_view(text), "vec.txt");
        } catch (const ParseError& e) {
            return e.line();
        }
        return -1L;
    };

    CHECK(line_of("3 3\na 1 0 0\nb 0 1 0\n") == 3);          // count mismatch (too few)
    CHECK(line_of("1 3\na 1 0 0\nb 0 1 0\n") == 3);          // count mismatch (too many)
    CHECK(line_of("2 3\na 1 0\nb 0 1 0\n") == 2);            // short line
    CHECK(line_of("2 3\na 1 0 0\nb 0 one 0\n") == 3);        // non-numeric
    CHECK(line_of("2 3\na 1 0 0\na 0 1 0\n") == 3);          // duplicate token
    CHECK(line_of("2 3\na 1 0 0\nb 0 nan 0\n") == 3);        // non-finite
    CHECK(line_of("x 3\na 1 0 0\n") == 1);                   // bad header
    CHECK(line_of("") == 1);                                 // empty file
}

TEST_CASE("cosine similarity spans [-1, 1] with exact poles") {
    const std::vector<double> ex = {1.0, 0.0};
    const std::vector<double> ey = {0.0, 1.0};
    const std::vector<double> neg = {-1.0, 0.0};

    CHECK(cosine_similarity(ex, ex) == 1.0);
    CHECK(cosine_similarity(ex, ey) == 0.0);
    CHECK(cosine_similarity(ex, neg) == -1.0);

    CHECK(cosine_distance(ex, ex) == 0.0);
    CHECK(cosine_distance(ex, ey) == 1.0);
    CHECK(cosine_distance(ex, neg) == 2.0);
}

TEST_CASE("cosine similarity rejects zero vectors and mismatched lengths") {
    const std::vector<double> zero = {0.0, 0.0};
    const std::vector<double> v = {1.0, 2.0};
    CHECK_THROWS_WITH_AS(cosine_similarity(zero, v), "undefined angle: zero vector",
                         InvalidArgument);
    const std::vector<double> longer = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS(cosine_similarity(v, longer), InvalidArgument);
}

TEST_CASE("cosine similarity is symmetric, scale invariant and self-distance-free") {
    std::mt19937_64 gen(21);
    std::uniform_real_distribution<double> scale(0.001, 1000.0);
    for (int round = 0; round < 500; ++round) {
        const auto a = random_vector(gen, 1 + round % 8);
        const auto b = random_vector(gen, 1 + round % 8);
        if (norm(a) == 0.0 || norm(b) == 0.0) {
            continue;
        }
        const double sim = cosine_similarity(a, b);
        CHECK(sim >= -1.0);
        CHECK(sim <= 1.0);
        CHECK(sim == cosine_similarity(b, a));

        auto scaled = a;
        const double lambda = scale(gen);
        for (double& x : scaled) {
            x *= lambda;
        }
        CHECK(std::abs(cosine_similarity(scaled, b) - sim) <= 1e-12);

        // clamping makes the self distance exactly zero
        CHECK(cosine_distance(a, a) == 0.0);
    }
}

TEST_CASE("weighted_mean applies weights but divides by the count") {
    const std::vector<double> v = {1.0, 2.0, 3.0};
    const auto single = weighted_mean({{v, 2.0}});
    CHECK(single.vector == std::vector<double>{2.0, 4.0, 6.0});

    const std::vector<double> ex = {1.0, 0.0};
    const std::vector<double> ey = {0.0, 1.0};
    const auto pair = weighted_mean({{ex, 1.0}, {ey, 1.0}});
    CHECK(pair.vector == std::vector<double>{0.5, 0.5});
}

TEST_CASE("weighted_mean matches component-wise summation") {
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> w(0.1, 5.0);
    for (int round = 0; round < 200; ++round) {
        const std::size_t dim = 1 + round % 6;
        std::vector<std::vector<double>> vecs;
        std::vector<double> weights;
        for (int i = 0; i < 4; ++i) {
            vecs.push_back(random_vector(gen, dim));
            weights.push_back(w(gen));
        }
        std::vector<WeightedVector> items;
        for (int i = 0; i < 4; ++i) {
            items.push_back({vecs[static_cast<std::size_t>(i)], weights[static_cast<std::size_t>(i)]});
        }

        const auto count_mode = weighted_mean(items);
        const auto weight_mode = weighted_mean(items, MeanMode::weight_normalized);
        double weight_sum = 0.0;
        for (double x : weights) {
            weight_sum += x;
        }
        for (std::size_t i = 0; i < dim; ++i) {
            double sum = 0.0;
            for (std::size_t j = 0; j < 4; ++j) {
                sum += weights[j] * vecs[j][i];
            }
            CHECK(count_mode.vector[i] == doctest::Approx(sum / 4.0).epsilon(1e-12));
            CHECK(weight_mode.vector[i] == doctest::Approx(sum / weight_sum).epsilon(1e-12));
        }

        // unit weights reduce to the arithmetic mean in both modes
        std::vector<WeightedVector> unit;
        for (const auto& vec : vecs) {
            unit.push_back({vec, 1.0});
        }
        const auto plain = weighted_mean(unit);
        for (std::size_t i = 0; i < dim; ++i) {
            double sum = 0.0;
            for (const auto& vec : vecs) {
                sum += vec[i];
            }
            CHECK(plain.vector[i] == doctest::Approx(sum / 4.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("weighted_mean rejects empty input and bad weights") {
    CHECK_THROWS_WITH_AS(weighted_mean({}), "no embedded terms", InvalidArgument);
    const std::vector<double> v = {1.0};
    CHECK_THROWS_AS(weighted_mean({{v, 0.0}}), InvalidArgument);
    CHECK_THROWS_AS(weighted_mean({{v, -1.0}}), InvalidArgument);
}

TEST_CASE("store construction validates shape and finiteness") {
    CHECK_THROWS_AS(EmbeddingStore(0, {{"a", {}}}), InvalidArgument);
    CHECK_THROWS_AS(EmbeddingStore(2, {}), InvalidArgument);
    CHECK_THROWS_AS(EmbeddingStore(2, {{"a", {1.0}}}), InvalidArgument);
    CHECK_THROWS_AS(EmbeddingStore(1, {{"a", {std::nan("")}}}), InvalidArgument);
}

TEST_CASE("text serialization round-trips vectors bit for bit") {
    std::mt19937_64 gen(41);
    std::map<std::string, std::vector<double>> vectors;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> exponent(-30.0, 30.0);
    for (int i = 0; i < 50; ++i) {
        std::vector<double> v(7);
        for (double& x : v) {
            x = u(gen) * std::pow(10.0, exponent(gen));
        }
        vectors["w" + std::to_string(i)] = v;
    }
    const EmbeddingStore store(7, std::move(vectors));

    const std::string text = save_word2vec_text(store);
    const auto reloaded = load_word2vec_text(std::string_view(text));
    CHECK(reloaded.dim() == store.dim());
    REQUIRE(reloaded.size() == store.size());
    for (const auto& [term, vec] : store.vectors()) {
        CHECK(*reloaded.find(term) == vec);  // exact, not approximate
    }
    CHECK(save_word2vec_text(reloaded) == text);
}
