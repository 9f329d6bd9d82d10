#pragma once

#include "cqatag/analytics/tag_frequency.hpp"

#include <cstdint>
#include <json.hpp>
#include <string>
#include <unordered_set>
#include <vector>

namespace cqatag::vocab {

/// Frequency-ranked prefix of the training tags reaching a post-coverage target.
struct MetaVocab {
    std::string domain;
    double coverage_target = 85;
    std::vector<std::string> tags;    // rank order
    std::vector<std::uint64_t> counts; // train post counts, aligned with tags
    double achieved_coverage = 0;
    std::string built_from;            // split manifest hash, or a free-form label

    bool contains(const std::string& tag) const;
    std::size_t size() const { return tags.size(); }

private:
    friend MetaVocab build_meta_vocab(const analytics::QuestionRefs&, double, std::string);
    friend MetaVocab vocab_from_json(const nlohmann::json&);
    void index();
    std::unordered_set<std::string> members_;
};

/// Shortest prefix of the frequency ranking whose post coverage is at least
/// `coverage_target` percent. Coverage is compared on integer counts.
/// Throws UserError for an empty question list or a target outside (0, 100].
MetaVocab build_meta_vocab(const analytics::QuestionRefs& train, double coverage_target,
                           std::string domain = {});

bool is_oov(const std::string& tag, const MetaVocab& vocab);

nlohmann::json vocab_to_json(const MetaVocab& vocab);
MetaVocab vocab_from_json(const nlohmann::json& j);

} // namespace cqatag::vocab
