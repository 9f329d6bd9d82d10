#pragma once

#include "cqatag/analytics/tag_frequency.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cqatag::analytics {

/// Where in the tag sequence a tag gets placed. Index 0 is position 1.
struct PositionalProfile {
    std::string tag;
    std::array<std::uint64_t, 5> position_counts{};
    std::array<double, 5> phi{}; // percentage of the tag's occurrences per position

    std::uint64_t total() const;
};

/// Throws LookupError when the tag never occurs.
PositionalProfile positional_profile(const QuestionRefs& questions, const std::string& tag);

/// Profiles of every tag, sorted by tag.
std::vector<PositionalProfile> all_positional_profiles(const QuestionRefs& questions);

/// 1-based positions, strictly increasing, e.g. {1, 2} or {3, 4, 5}.
using PositionSet = std::vector<int>;

std::string to_string(const PositionSet& set);

struct StabilityReport {
    double delta = 0;
    std::vector<PositionSet> position_sets;
    std::map<PositionSet, std::vector<std::string>> q_sets; // sorted tag lists
    std::map<PositionSet, double> st;                      // 100 * |Q_X| / |T|
    std::size_t universe = 0;                               // |T| after the min-count filter
};

/// A tag is stable at a position set X when the share of its occurrences that
/// fall in X is at least delta percent. Membership is decided on integer
/// counts (100 * count_in_X >= delta * total), so boundary cases are exact.
///
/// min_count drops tags with fewer occurrences from the universe (0 keeps all).
/// Throws UserError unless 0 < delta <= 100 and the sets are non-empty,
/// disjoint subsets of {1..5}.
StabilityReport stability_report(const std::vector<PositionalProfile>& profiles,
                                 const std::vector<PositionSet>& position_sets, double delta,
                                 std::uint64_t min_count = 0);

StabilityReport stability_report(const QuestionRefs& questions,
                                 const std::vector<PositionSet>& position_sets = {{1, 2}, {3, 4, 5}},
                                 double delta = 99, std::uint64_t min_count = 0);

} // namespace cqatag::analytics
