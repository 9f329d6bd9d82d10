#pragma once

#include "cqatag/ingest/corpus.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace cqatag::analytics {

using QuestionRefs = std::vector<const ingest::Post*>;

/// Pointers to every question of a corpus, in corpus order.
QuestionRefs all_questions(const ingest::DomainCorpus& corpus);

/// Number of posts each tag appears in.
struct TagFrequencyTable {
    std::string domain;
    std::unordered_map<std::string, std::uint64_t> counts;
    /// Descending count; equal counts in lexicographic order.
    std::vector<std::string> ranked;

    std::size_t size() const { return ranked.size(); }
    std::uint64_t count(const std::string& tag) const;
    /// 0-based rank of a tag, or npos when unseen.
    std::size_t rank_of(const std::string& tag) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    friend TagFrequencyTable build_tag_frequency(const QuestionRefs&, std::string);
    std::unordered_map<std::string, std::size_t> rank_;
};

TagFrequencyTable build_tag_frequency(const QuestionRefs& questions, std::string domain = {});
TagFrequencyTable build_tag_frequency(const ingest::DomainCorpus& corpus);

} // namespace cqatag::analytics
