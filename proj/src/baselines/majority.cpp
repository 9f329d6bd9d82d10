#include "cqatag/baselines/majority.hpp"

namespace cqatag::baselines {

std::vector<ScoredTag> majority_predict(const analytics::QuestionRefs& train) {
    const auto freq = analytics::build_tag_frequency(train);
    std::vector<ScoredTag> out;
    const auto n = static_cast<double>(train.size());
    for (std::size_t i = 0; i < freq.size() && i < kMaxPredictions; ++i) {
        const auto& tag = freq.ranked[i];
        out.push_back({tag, static_cast<double>(freq.count(tag)) / n, Source::Majority});
    }
    return out;
}

std::vector<PredictionSet> majority_predictions(const std::vector<ScoredTag>& majority,
                                                const analytics::QuestionRefs& posts) {
    std::vector<PredictionSet> out;
    out.reserve(posts.size());
    for (const auto* p : posts) out.push_back({p->id, majority});
    return out;
}

} // namespace cqatag::baselines
