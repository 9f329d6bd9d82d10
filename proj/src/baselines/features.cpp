#include "cqatag/baselines/features.hpp"

#include "cqatag/error.hpp"
#include "cqatag/ingest/html.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

namespace cqatag::baselines {

namespace {

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

template <typename F>
void for_each_ngram(const std::vector<std::string>& tokens, const FeatureConfig& config, F&& f) {
    std::string term;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        term.clear();
        for (int n = 1; n <= config.ngram_max && i + static_cast<std::size_t>(n) <= tokens.size();
             ++n) {
            if (n > 1) term += ' ';
            term += tokens[i + static_cast<std::size_t>(n) - 1];
            if (n >= config.ngram_min) f(term);
        }
    }
}

} // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> runs;
    for (std::size_t i = 0; i < text.size();) {
        if (!is_alnum(text[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && is_alnum(text[j])) ++j;
        std::string run(text.substr(i, j - i));
        std::transform(run.begin(), run.end(), run.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        runs.push_back(std::move(run));
        i = j;
    }
    std::vector<std::string> tokens;
    tokens.reserve(runs.size());
    for (std::size_t k = 0; k < runs.size(); ++k) {
        const auto& r = runs[k];
        if (r.size() >= 2) {
            tokens.push_back(r);
        } else if (!is_digit(r[0])) {
            const bool after_digit = k > 0 && is_digit(runs[k - 1].back());
            const bool before_digit = k + 1 < runs.size() && is_digit(runs[k + 1].front());
            if (after_digit || before_digit) tokens.push_back(r);
        }
    }
    return tokens;
}

std::string baseline_text(const ingest::Post& post) {
    std::string text = post.title;
    text += '\n';
    text += ingest::strip_html(post.body);
    std::transform(text.begin(), text.end(), text.begin(), [](unsigned char c) {
        return static_cast<char>(c < 0x80 ? std::tolower(c) : c);
    });
    return text;
}

const char* to_string(Weighting w) { return w == Weighting::TfIdf ? "tfidf" : "bow"; }

Weighting weighting_from_string(const std::string& name) {
    if (name == "tfidf") return Weighting::TfIdf;
    if (name == "bow" || name == "counts") return Weighting::Counts;
    throw UserError("unknown weighting \"" + name + "\" (expected tfidf or bow)");
}

void FeatureConfig::validate() const {
    if (ngram_min < 1 || ngram_max < ngram_min) throw UserError("invalid n-gram range");
    if (!(min_df > 0 && min_df < 1)) throw UserError("min_df must be in (0, 1)");
    if (max_features == 0) throw UserError("max_features must be positive");
}

std::int64_t FeatureSpace::column_of(const std::string& term) const {
    const auto it = index_.find(term);
    return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

void FeatureSpace::build_index() {
    index_.clear();
    index_.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        index_.emplace(terms[i], static_cast<std::uint32_t>(i));
    }
}

FeatureSpace fit_features(const std::vector<std::string>& texts, const FeatureConfig& config) {
    config.validate();
    if (texts.empty()) throw UserError("cannot fit features on an empty corpus");

    std::unordered_map<std::string, std::uint32_t> df;
    std::vector<std::string> doc_terms;
    for (const auto& text : texts) {
        doc_terms.clear();
        for_each_ngram(tokenize(text), config, [&](const std::string& t) { doc_terms.push_back(t); });
        std::sort(doc_terms.begin(), doc_terms.end());
        doc_terms.erase(std::unique(doc_terms.begin(), doc_terms.end()), doc_terms.end());
        for (auto& t : doc_terms) ++df[std::move(t)];
    }

    const auto n = static_cast<double>(texts.size());
    std::vector<std::pair<std::string, std::uint32_t>> kept;
    for (auto& [term, count] : df) {
        if (static_cast<double>(count) >= config.min_df * n) kept.emplace_back(term, count);
    }
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (kept.size() > config.max_features) kept.resize(config.max_features);
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    FeatureSpace space;
    space.config = config;
    space.n_documents = texts.size();
    for (auto& [term, count] : kept) {
        space.terms.push_back(std::move(term));
        space.df.push_back(count);
        if (config.weighting == Weighting::TfIdf) {
            space.idf.push_back(
                static_cast<float>(std::log((1.0 + n) / (1.0 + static_cast<double>(count))) + 1.0));
        }
    }
    space.build_index();
    return space;
}

SparseMatrix transform(const FeatureSpace& space, const std::vector<std::string>& texts) {
    SparseMatrix m;
    m.cols = space.dimension();
    m.row_ptr.reserve(texts.size() + 1);
    std::map<std::uint32_t, double> row;
    for (const auto& text : texts) {
        row.clear();
        for_each_ngram(tokenize(text), space.config, [&](const std::string& t) {
            const auto c = space.column_of(t);
            if (c >= 0) row[static_cast<std::uint32_t>(c)] += 1.0;
        });
        double norm = 0;
        if (space.config.weighting == Weighting::TfIdf) {
            for (auto& [c, v] : row) {
                v *= space.idf[c];
                norm += v * v;
            }
            norm = std::sqrt(norm);
        }
        for (const auto& [c, v] : row) {
            m.col.push_back(c);
            m.val.push_back(static_cast<float>(norm > 0 ? v / norm : v));
        }
        m.row_ptr.push_back(m.col.size());
    }
    return m;
}

Featurized featurize(const std::vector<std::string>& texts, const FeatureConfig& config) {
    Featurized f;
    f.space = fit_features(texts, config);
    f.matrix = transform(f.space, texts);
    return f;
}

nlohmann::json feature_config_to_json(const FeatureConfig& config) {
    return {{"ngram_range", {config.ngram_min, config.ngram_max}},
            {"min_df", config.min_df},
            {"max_features", config.max_features},
            {"weighting", to_string(config.weighting)},
            {"idf", config.weighting == Weighting::TfIdf ? "ln((1+N)/(1+df))+1, l2 rows" : "none"}};
}

FeatureConfig feature_config_from_json(const nlohmann::json& j) {
    FeatureConfig c;
    try {
        if (j.contains("ngram_range")) {
            c.ngram_min = j.at("ngram_range").at(0).get<int>();
            c.ngram_max = j.at("ngram_range").at(1).get<int>();
        }
        c.min_df = j.value("min_df", c.min_df);
        c.max_features = j.value("max_features", c.max_features);
        if (j.contains("weighting")) c.weighting = weighting_from_string(j.at("weighting").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw UserError(std::string("malformed feature config: ") + e.what());
    }
    c.validate();
    return c;
}

} // namespace cqatag::baselines
