#pragma once

#include "cqatag/ingest/post.hpp"

#include <istream>
#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

namespace cqatag::baselines {

enum class Source { PHead, GHead, Baseline, Majority };

const char* to_string(Source source);
Source source_from_string(const std::string& name);

struct ScoredTag {
    std::string tag;
    double score = 0;
    Source source = Source::Baseline;

    bool operator==(const ScoredTag&) const = default;
};

/// Ranked tag predictions for one post: at most 5, no duplicates, and scores
/// non-increasing among entries of the same source.
struct PredictionSet {
    ingest::PostId post_id = 0;
    std::vector<ScoredTag> tags;

    bool operator==(const PredictionSet&) const = default;
};

inline constexpr std::size_t kMaxPredictions = 5;

/// Throws UserError when a set breaks one of the invariants above.
void validate(const PredictionSet& set);

nlohmann::json prediction_to_json(const PredictionSet& set);
PredictionSet prediction_from_json(const nlohmann::json& j);

/// One JSON object per line. Reading validates every set.
void write_predictions(std::ostream& out, const std::vector<PredictionSet>& sets);
std::vector<PredictionSet> read_predictions(std::istream& in);

} // namespace cqatag::baselines
