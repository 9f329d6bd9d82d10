#pragma once

#include "cqatag/analytics/cooccurrence.hpp"
#include "cqatag/analytics/domain_stats.hpp"
#include "cqatag/analytics/positional.hpp"
#include "cqatag/analytics/tag_space.hpp"
#include "cqatag/pipeline/config.hpp"
#include "cqatag/pipeline/table.hpp"

#include <array>
#include <json.hpp>
#include <vector>

namespace cqatag::pipeline {

inline constexpr std::array<std::size_t, 6> kCoverageTopN{1, 3, 5, 10, 50, 100};
inline constexpr std::array<std::size_t, 6> kPairTopK{1, 3, 5, 10, 50, 100};
inline constexpr std::size_t kOrderingPairs = 10;
inline constexpr std::size_t kStableExamples = 5;
inline constexpr std::size_t kPairSeries = 50;

struct OrderedPair {
    analytics::PairCount pair;
    analytics::OrderingPreference order; // forward = first before second
};

/// Every corpus-level statistic reported for one domain.
struct DomainAnalysis {
    analytics::DomainStats stats;
    analytics::TagFrequencyTable freq;
    std::array<double, 6> word_lengths{};
    analytics::TagCharStats char_stats;
    std::vector<std::pair<std::size_t, double>> coverage;      // (n, %)
    std::array<std::array<double, 2>, 3> overlap{};           // [scope][EMS, EMM]
    std::vector<std::pair<std::size_t, double>> pair_coverage; // (k, %)
    double single_tag = 0;
    std::vector<OrderedPair> top_pairs;                        // ordering detail for the top pairs
    std::vector<analytics::PairCount> pair_ranking;            // most frequent pairs, up to 50
    std::vector<analytics::StabilityReport> stability;         // one per configured delta
    std::vector<analytics::PositionalProfile> profiles;
    std::vector<std::uint64_t> coverage_curve;
    std::uint64_t example_seed = 0;
};

DomainAnalysis analyze_domain(const ingest::DomainCorpus& corpus, const PipelineConfig& config,
                              std::uint64_t example_seed = 0);

Table community_diversity_table(const std::vector<DomainAnalysis>& domains);
Table domain_statistics_table(const std::vector<DomainAnalysis>& domains);
Table tag_word_length_table(const std::vector<DomainAnalysis>& domains);
Table tag_statistics_table(const std::vector<DomainAnalysis>& domains);
Table tag_post_coverage_table(const std::vector<DomainAnalysis>& domains);
Table tag_post_overlap_table(const std::vector<DomainAnalysis>& domains);
Table tag_pair_coverage_table(const std::vector<DomainAnalysis>& domains);
Table top_tag_pair_table(const std::vector<DomainAnalysis>& domains);
Table tag_ordering_table(const std::vector<DomainAnalysis>& domains);
/// One table per configured delta, in config order.
std::vector<Table> tag_stability_tables(const std::vector<DomainAnalysis>& domains);
/// Up to five seeded random members of each stable set at the largest delta.
Table stable_tag_examples_table(const std::vector<DomainAnalysis>& domains);

Table tag_distribution_series(const DomainAnalysis& d, std::size_t top = 100);
Table pair_distribution_series(const DomainAnalysis& d, std::size_t top = 50);
Table positional_profile_series(const DomainAnalysis& d);
Table coverage_curve_series(const DomainAnalysis& d);

/// Full-precision values of one domain.
nlohmann::json analysis_to_json(const DomainAnalysis& d);

} // namespace cqatag::pipeline
