#pragma once

#include "cqatag/ingest/post.hpp"

#include <cstdint>
#include <json.hpp>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cqatag::baselines {

/// Lowercased maximal ASCII-alphanumeric runs of length >= 2. A single letter
/// survives when the run before it ends in a digit or the run after it starts
/// with one ("3 d", "a 4"); lone digits are dropped.
std::vector<std::string> tokenize(std::string_view text);

/// Title and HTML-stripped body of a question, lowercased.
std::string baseline_text(const ingest::Post& post);

enum class Weighting { TfIdf, Counts };

const char* to_string(Weighting w);
Weighting weighting_from_string(const std::string& name);

struct FeatureConfig {
    int ngram_min = 1;
    int ngram_max = 2;
    double min_df = 0.00009;       // fraction of documents
    std::size_t max_features = 200000;
    Weighting weighting = Weighting::TfIdf;

    /// Throws UserError on an unusable configuration.
    void validate() const;
};

/// Compressed sparse rows. Column indices within a row are increasing.
struct SparseMatrix {
    std::size_t cols = 0;
    std::vector<std::size_t> row_ptr{0};
    std::vector<std::uint32_t> col;
    std::vector<float> val;

    std::size_t rows() const { return row_ptr.size() - 1; }
    std::size_t nnz() const { return col.size(); }
};

/// Fitted vocabulary of n-gram terms and their idf weights.
struct FeatureSpace {
    FeatureConfig config;
    std::size_t n_documents = 0;
    std::vector<std::string> terms; // lexicographic; n-grams joined by one space
    std::vector<std::uint32_t> df;
    std::vector<float> idf;         // empty for Counts weighting

    std::size_t dimension() const { return terms.size(); }
    /// Column of a term, or -1 when unknown.
    std::int64_t column_of(const std::string& term) const;

    void build_index();

private:
    std::unordered_map<std::string, std::uint32_t> index_;
};

/// Keeps terms with df >= min_df * N, then the max_features terms of highest
/// df (ties lexicographic). tf-idf uses idf = ln((1 + N) / (1 + df)) + 1.
/// Throws UserError on an empty corpus.
FeatureSpace fit_features(const std::vector<std::string>& texts, const FeatureConfig& config);

/// Rows align with `texts`. tf-idf rows are L2-normalised; counts are raw.
SparseMatrix transform(const FeatureSpace& space, const std::vector<std::string>& texts);

struct Featurized {
    FeatureSpace space;
    SparseMatrix matrix;
};

Featurized featurize(const std::vector<std::string>& texts, const FeatureConfig& config);

nlohmann::json feature_config_to_json(const FeatureConfig& config);
FeatureConfig feature_config_from_json(const nlohmann::json& j);

} // namespace cqatag::baselines
