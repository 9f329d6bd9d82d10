#pragma once

#include "cqatag/analytics/tag_frequency.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace cqatag::analytics {

struct PairCount {
    std::string first;  // lexicographically smaller tag
    std::string second;
    std::uint64_t count = 0;
};

/// Tag co-occurrence and ordering counts over a set of questions.
///
/// pair_count({a, b}) is the number of posts carrying both tags; order_count(a, b)
/// the number of those where a sits at an earlier position than b. Every
/// pair satisfies pair_count = order_count(a, b) + order_count(b, a).
class CooccurrenceTable {
public:
    std::uint64_t pair_count(const std::string& a, const std::string& b) const;
    std::uint64_t order_count(const std::string& before, const std::string& after) const;
    bool has_pair(const std::string& a, const std::string& b) const;
    std::size_t distinct_pairs() const { return pairs_.size(); }

    /// All pairs by descending count; ties ordered by (first, second).
    std::vector<PairCount> ranked_pairs() const;

    /// Calls f(tag_a, tag_b, pair_count, count_a_before_b, count_b_before_a).
    template <typename F>
    void for_each_pair(F&& f) const {
        for (const auto& [key, n] : pairs_) {
            const auto a = static_cast<std::uint32_t>(key >> 32);
            const auto b = static_cast<std::uint32_t>(key & 0xffffffffu);
            f(names_[a], names_[b], n, lookup(orders_, a, b), lookup(orders_, b, a));
        }
    }

private:
    friend CooccurrenceTable build_cooccurrence(const QuestionRefs& questions);

    static std::uint64_t key(std::uint32_t a, std::uint32_t b) {
        return (static_cast<std::uint64_t>(a) << 32) | b;
    }
    static std::uint64_t lookup(const std::unordered_map<std::uint64_t, std::uint64_t>& m,
                                std::uint32_t a, std::uint32_t b) {
        const auto it = m.find(key(a, b));
        return it == m.end() ? 0 : it->second;
    }
    bool id_of(const std::string& tag, std::uint32_t& id) const;

    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> ids_;
    std::unordered_map<std::uint64_t, std::uint64_t> pairs_;  // key(min id, max id)
    std::unordered_map<std::uint64_t, std::uint64_t> orders_; // key(before, after)
};

CooccurrenceTable build_cooccurrence(const QuestionRefs& questions);
CooccurrenceTable build_cooccurrence(const ingest::DomainCorpus& corpus);

struct PairCoverage {
    double coverage = 0;   // % questions carrying one of the top-k pairs
    double single_tag = 0; // % questions with exactly one tag
};

/// Throws UserError for k < 1.
PairCoverage pair_post_coverage(const CooccurrenceTable& table, const QuestionRefs& questions,
                                std::size_t k);

struct OrderingPreference {
    std::uint64_t forward = 0;  // first argument precedes the second
    std::uint64_t backward = 0;
    double dominant_pct = 0;    // 100 * max / (forward + backward)
};

/// Throws LookupError when the two tags never co-occur.
OrderingPreference ordering_preference(const CooccurrenceTable& table, const std::string& a,
                                       const std::string& b);

} // namespace cqatag::analytics
