// stfidf: corpus indexing, TF-IDF / STF-IDF term ranking and ranking-error
// evaluation against labeled documents.
//
// Exit codes: 0 success, 2 input error, 3 index/pipeline config mismatch,
// 4 parse error in an input file.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stfidf/embedding.hpp"
#include "stfidf/engine.hpp"
#include "stfidf/errors.hpp"
#include "stfidf/evaluation.hpp"
#include "stfidf/text_pipeline.hpp"
#include "stfidf/tfidf.hpp"

namespace fs = std::filesystem;
using namespace stfidf;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidArgument("cannot read file: " + path.string());
    }
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw InvalidArgument("error while reading: " + path.string());
    }
    return content;
}

// temp file + rename, so readers never observe partial output
void write_file_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw InvalidArgument("cannot write file: " + tmp.string());
        }
        out << content;
        if (!out.flush()) {
            throw InvalidArgument("error while writing: " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

void warn_to_stderr(const std::string& message) {
    std::cerr << "warning: " << message << "\n";
}

// One document per .txt file (stem = id) in a directory, or a .jsonl file
// with {"id":...,"text":...} per line; picked by what the path is.
// Document ids must be non-empty and unique within the corpus.
std::vector<RawDocument> load_corpus(const fs::path& path) {
    std::vector<RawDocument> docs;
    std::set<std::string> seen;
    if (fs::is_directory(path)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(path)) {
            if (entry.is_regular_file() && entry.path().extension() == ".txt") {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
        for (const auto& file : files) {
            const std::string id = file.stem().string();
            if (id.empty()) {
                throw InvalidArgument("document file has no usable id: " + file.string());
            }
            seen.insert(id);
            docs.push_back({id, read_file(file)});
        }
    } else if (fs::is_regular_file(path) && path.extension() == ".jsonl") {
        std::ifstream in(path);
        if (!in) {
            throw InvalidArgument("cannot read file: " + path.string());
        }
        std::string line;
        long line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) {
                continue;
            }
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(line);
            } catch (const nlohmann::json::parse_error& e) {
                throw ParseError(path.string(), line_no, "", e.what());
            }
            if (!j.is_object() || !j.contains("id") || !j.at("id").is_string() ||
                !j.contains("text") || !j.at("text").is_string()) {
                throw ParseError(path.string(), line_no, "",
                                 "expected an object with string fields 'id' and 'text'");
            }
            const std::string id = j.at("id").get<std::string>();
            if (id.empty()) {
                throw ParseError(path.string(), line_no, "id", "must be non-empty");
            }
            if (!seen.insert(id).second) {
                throw ParseError(path.string(), line_no, "id", "duplicate document id '" + id + "'");
            }
            docs.push_back({id, j.at("text").get<std::string>()});
        }
    } else {
        throw InvalidArgument("corpus must be a directory of .txt files or a .jsonl file: " +
                              path.string());
    }
    if (docs.empty()) {
        throw InvalidArgument("empty corpus");
    }
    return docs;
}

struct PipelineOptions {
    std::string stopwords_path;
    bool lowercase = true;
    bool strip_punctuation = true;
    int min_token_length = 1;

    PipelineConfig resolve() const {
        PipelineConfig cfg;
        cfg.lowercase = lowercase;
        cfg.strip_punctuation = strip_punctuation;
        cfg.min_token_length = min_token_length;
        if (!stopwords_path.empty()) {
            std::ifstream in(stopwords_path);
            if (!in) {
                throw InvalidArgument("cannot read stopword file: " + stopwords_path);
            }
            cfg.stopwords = load_stopwords(in);
        }
        return normalized(cfg);
    }
};

void add_pipeline_flags(CLI::App* cmd, PipelineOptions& opts) {
    cmd->add_option("--stopwords", opts.stopwords_path,
                    "Stopword file (one token per line, # comments)");
    cmd->add_flag("--lowercase,!--no-lowercase", opts.lowercase, "Lowercase tokens (default on)");
    cmd->add_flag("--strip-punctuation,!--no-strip-punctuation", opts.strip_punctuation,
                  "Remove punctuation characters (default on)");
    cmd->add_option("--min-token-length", opts.min_token_length,
                    "Minimum token length in code points")
        ->check(CLI::PositiveNumber);
}

void add_engine_flags(CLI::App* cmd, RefinementConfig& cfg) {
    cmd->add_option("--epsilon", cfg.epsilon, "Mean-displacement stop threshold")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-iterations", cfg.max_iterations, "Iteration cap")
        ->check(CLI::PositiveNumber);
    const std::map<std::string, SimilarityMode> modes{
        {"distance_text", SimilarityMode::distance_text},
        {"formula_literal", SimilarityMode::formula_literal}};
    cmd->add_option("--similarity-mode", cfg.similarity_mode, "distance_text|formula_literal")
        ->transform(CLI::CheckedTransformer(modes));
    const std::map<std::string, NegativeSimilarityPolicy> neg{
        {"clamp_to_zero", NegativeSimilarityPolicy::clamp_to_zero},
        {"allow", NegativeSimilarityPolicy::allow}};
    cmd->add_option("--negative-similarity", cfg.negative_similarity, "clamp_to_zero|allow")
        ->transform(CLI::CheckedTransformer(neg));
    const std::map<std::string, OovPolicy> oov{
        {"neutral_multiplier", OovPolicy::neutral_multiplier},
        {"drop_from_ranking", OovPolicy::drop_from_ranking}};
    cmd->add_option("--oov-policy", cfg.oov_policy, "neutral_multiplier|drop_from_ranking")
        ->transform(CLI::CheckedTransformer(oov));
}

std::vector<std::pair<std::string, double>> ranked_terms(const ScoreTable& table) {
    std::vector<std::pair<std::string, double>> items(table.scores.begin(), table.scores.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    return items;
}

void print_ranking(const ScoreTable& table, std::size_t top_k) {
    const auto items = ranked_terms(table);
    const std::size_t shown = top_k == 0 ? items.size() : std::min(top_k, items.size());
    for (std::size_t i = 0; i < shown; ++i) {
        std::printf("%zu\t%s\t%.6f\n", i + 1, items[i].first.c_str(), items[i].second);
    }
}

int run_index(const std::string& corpus_path, const std::string& output,
              const PipelineOptions& pipeline) {
    const PipelineConfig cfg = pipeline.resolve();
    IndexBuilder builder(config_fingerprint(cfg));
    for (const auto& raw : load_corpus(corpus_path)) {
        builder.add(tokenize(raw, cfg));
    }
    const DocumentFrequencyIndex index = builder.build();
    write_file_atomic(output, save_index(index));
    std::printf("corpus_size: %lld\n", static_cast<long long>(index.corpus_size));
    std::printf("vocabulary: %zu\n", index.df.size());
    return 0;
}

int run_score(const std::string& doc_path, const std::string& index_path,
              const std::string& embeddings_path, const std::string& mode, std::size_t top_k,
              const std::string& trace_path, const PipelineOptions& pipeline,
              const RefinementConfig& engine_cfg) {
    const PipelineConfig cfg = pipeline.resolve();
    const DocumentFrequencyIndex index = load_index(read_file(index_path), index_path);
    ensure_config_compatible(index, cfg);

    const fs::path doc_file(doc_path);
    const RawDocument raw{doc_file.stem().string(), read_file(doc_file)};
    const TokenizedDocument doc = tokenize(raw, cfg);
    if (doc.tf.empty()) {
        throw InvalidArgument("document '" + raw.id + "' has no terms after preprocessing");
    }
    const ScoreTable tfidf = tfidf_score(doc, index, warn_to_stderr);

    if (mode == "tfidf") {
        print_ranking(tfidf, top_k);
        return 0;
    }

    if (embeddings_path.empty()) {
        throw InvalidArgument("--mode stfidf requires --embeddings");
    }
    const std::string embedding_text = read_file(embeddings_path);
    const EmbeddingStore store = load_word2vec_text(std::string_view(embedding_text), embeddings_path);

    const RefinementResult result = refine(doc, tfidf, store, engine_cfg);
    if (result.stop_reason == StopReason::degenerate_input) {
        std::cerr << "warning: document cannot be refined (" << to_string(result.stop_reason)
                  << "); printing the TF-IDF ranking\n";
    }
    print_ranking(result.final_scores, top_k);
    if (!trace_path.empty()) {
        write_file_atomic(trace_path, trace_to_jsonl(result.trace));
    }
    return 0;
}

int run_eval(const std::string& corpus_path, const std::string& index_path,
             const std::string& embeddings_path, const std::string& labels_path,
             const std::string& output_dir, const PipelineOptions& pipeline,
             const RefinementConfig& engine_cfg) {
    const PipelineConfig cfg = pipeline.resolve();
    const DocumentFrequencyIndex index = load_index(read_file(index_path), index_path);
    ensure_config_compatible(index, cfg);

    const std::string embedding_text = read_file(embeddings_path);
    const EmbeddingStore store = load_word2vec_text(std::string_view(embedding_text), embeddings_path);
    const auto labels = load_labels(read_file(labels_path), labels_path);

    std::vector<TokenizedDocument> docs;
    for (const auto& raw : load_corpus(corpus_path)) {
        docs.push_back(tokenize(raw, cfg));
    }

    const ComparisonReport report = compare(docs, index, store, labels, engine_cfg, warn_to_stderr);

    const fs::path out_dir(output_dir);
    write_file_atomic(out_dir / "report.csv", report_to_csv(report));
    write_file_atomic(out_dir / "summary.json", summary_to_json(report));

    std::printf("tfidf mean error: %.6f\n", report.tfidf.mean);
    std::printf("stfidf mean error: %.6f\n", report.stfidf.mean);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"STF-IDF: embedding-refined TF-IDF term relevance"};
    app.require_subcommand(1);
    app.set_config("--config")->description("Config file with key=value lines; flags win");

    PipelineOptions pipeline;
    RefinementConfig engine_cfg;

    auto* index_cmd = app.add_subcommand("index", "Build a document-frequency index from a corpus");
    std::string corpus_path;
    std::string output_path = "index.json";
    index_cmd->add_option("--corpus", corpus_path, "Corpus directory (.txt files) or .jsonl file")
        ->required();
    index_cmd->add_option("--output", output_path, "Index file to write");
    add_pipeline_flags(index_cmd, pipeline);

    auto* score_cmd = app.add_subcommand("score", "Rank the terms of one document");
    std::string doc_path;
    std::string index_path;
    std::string embeddings_path;
    std::string mode = "tfidf";
    std::size_t top_k = 10;
    std::string trace_path;
    score_cmd->add_option("--doc", doc_path, "Document .txt file (stem = id)")->required();
    score_cmd->add_option("--index", index_path, "Index file")->required();
    score_cmd->add_option("--embeddings", embeddings_path, "word2vec text file");
    score_cmd->add_option("--mode", mode, "tfidf|stfidf")
        ->check(CLI::IsMember({"tfidf", "stfidf"}));
    score_cmd->add_option("--top", top_k, "Terms to print (0 = all)");
    score_cmd->add_option("--trace", trace_path, "Write the per-iteration trace as JSON lines");
    add_pipeline_flags(score_cmd, pipeline);
    add_engine_flags(score_cmd, engine_cfg);

    auto* eval_cmd = app.add_subcommand("eval", "Compare TF-IDF and STF-IDF ranking error");
    std::string labels_path;
    std::string output_dir = ".";
    eval_cmd->add_option("--corpus", corpus_path, "Corpus directory (.txt files) or .jsonl file")
        ->required();
    eval_cmd->add_option("--index", index_path, "Index file")->required();
    eval_cmd->add_option("--embeddings", embeddings_path, "word2vec text file")->required();
    eval_cmd->add_option("--labels", labels_path, "JSON labels file")->required();
    eval_cmd->add_option("--output-dir", output_dir, "Directory for report.csv and summary.json");
    add_pipeline_flags(eval_cmd, pipeline);
    add_engine_flags(eval_cmd, engine_cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help
        }
        app.exit(e);
        return 2;
    }

    try {
        if (index_cmd->parsed()) {
            return run_index(corpus_path, output_path, pipeline);
        }
        if (score_cmd->parsed()) {
            return run_score(doc_path, index_path, embeddings_path, mode, top_k, trace_path,
                             pipeline, engine_cfg);
        }
        return run_eval(corpus_path, index_path, embeddings_path, labels_path, output_dir,
                        pipeline, engine_cfg);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const ConfigMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
