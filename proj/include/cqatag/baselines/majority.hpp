#pragma once

#include "cqatag/analytics/tag_frequency.hpp"
#include "cqatag/baselines/prediction.hpp"

#include <string>
#include <vector>

namespace cqatag::baselines {

/// The five most frequent training tags, ties in lexicographic order. Fewer
/// when the training split has fewer distinct tags.
std::vector<ScoredTag> majority_predict(const analytics::QuestionRefs& train);

/// The same majority list for every post.
std::vector<PredictionSet> majority_predictions(const std::vector<ScoredTag>& majority,
                                                const analytics::QuestionRefs& posts);

} // namespace cqatag::baselines
