#pragma once

#include "cqatag/analytics/tag_frequency.hpp"
#include "cqatag/baselines/prediction.hpp"
#include "cqatag/vocab/meta_vocab.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cqatag::eval {

/// Gold tags per post id.
using GoldTags = std::map<ingest::PostId, std::vector<std::string>>;

GoldTags gold_from(const analytics::QuestionRefs& questions);

/// Lowercase and trim; applied to both sides before comparing tags.
std::string normalize_tag(std::string_view tag);

/// Throws UserError listing (up to 20) post ids present on only one side.
void check_alignment(const std::vector<baselines::PredictionSet>& predictions, const GoldTags& gold);

struct HitResult {
    double percent = 0;
    std::size_t scored = 0;   // posts counted in the denominator
    std::size_t excluded = 0; // posts with an empty gold set
};

/// Share of posts whose first k predictions meet the gold set. Requires
/// 1 <= k <= 5 and aligned post ids; throws UserError otherwise.
HitResult hit_at_k(const std::vector<baselines::PredictionSet>& predictions, const GoldTags& gold,
                   std::size_t k);

/// Hit@1 .. Hit@5.
std::array<double, 5> hit_at_1_to_5(const std::vector<baselines::PredictionSet>& predictions,
                                    const GoldTags& gold);

struct HeadContribution {
    double p_only = 0; // % posts where only P-head predictions were correct
    double g_only = 0;
    std::size_t posts = 0;
};

/// Throws UserError when a prediction is not labelled P-head or G-head.
HeadContribution head_contributions(const std::vector<baselines::PredictionSet>& predictions,
                                    const GoldTags& gold);

struct OovStats {
    double pct_posts = 0;                // % posts with >= 1 correctly predicted OOV tag
    double pct_all_tags = 0;             // correct OOV predictions / all gold tags
    std::optional<double> pct_oov_tags;  // correct OOV predictions / OOV gold tags
    std::size_t correct_oov = 0;
    std::size_t gold_tags = 0;
    std::size_t gold_oov_tags = 0;
};

OovStats oov_stats(const std::vector<baselines::PredictionSet>& predictions, const GoldTags& gold,
                   const vocab::MetaVocab& vocab);

struct WilcoxonResult {
    double p_value = 1;
    double w_plus = 0;        // sum of ranks of positive differences
    std::size_t nonzero = 0;  // differences left after dropping zeros
    bool exact = true;        // false when the normal approximation was used
    bool degenerate = false;  // every difference was zero
};

inline constexpr std::size_t kWilcoxonExactLimit = 25;

/// One-sided signed-rank test of H1: y tends to exceed x. Zero differences
/// are dropped, tied magnitudes share their average rank, and the p-value is
/// P(W+ >= observed) under the null. Exact up to 25 non-zero differences.
/// Throws UserError on empty or unequal-length input.
WilcoxonResult wilcoxon_one_sided(const std::vector<double>& x, const std::vector<double>& y);

/// Null distribution of W+ for ranks 1..n: counts[s] subsets summing to s.
std::vector<double> signed_rank_null_counts(std::size_t n);

struct RunSummary {
    double mean = 0;
    std::optional<double> stddev; // sample std, absent for one run
    std::size_t runs = 0;
};

/// Throws UserError for an empty list.
RunSummary aggregate_runs(const std::vector<double>& values);

} // namespace cqatag::eval
