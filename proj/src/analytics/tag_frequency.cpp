#include "cqatag/analytics/tag_frequency.hpp"

#include <algorithm>

namespace cqatag::analytics {

QuestionRefs all_questions(const ingest::DomainCorpus& corpus) {
    QuestionRefs refs;
    refs.reserve(corpus.questions().size());
    for (const auto& q : corpus.questions()) refs.push_back(&q);
    return refs;
}

std::uint64_t TagFrequencyTable::count(const std::string& tag) const {
    const auto it = counts.find(tag);
    return it == counts.end() ? 0 : it->second;
}

std::size_t TagFrequencyTable::rank_of(const std::string& tag) const {
    const auto it = rank_.find(tag);
    return it == rank_.end() ? npos : it->second;
}

TagFrequencyTable build_tag_frequency(const QuestionRefs& questions, std::string domain) {
    TagFrequencyTable t;
    t.domain = std::move(domain);
    for (const auto* q : questions) {
        for (const auto& tag : q->tags) ++t.counts[tag];
    }
    t.ranked.reserve(t.counts.size());
    for (const auto& [tag, n] : t.counts) t.ranked.push_back(tag);
    std::sort(t.ranked.begin(), t.ranked.end(), [&](const std::string& a, const std::string& b) {
        const auto ca = t.counts.at(a), cb = t.counts.at(b);
        return ca != cb ? ca > cb : a < b;
    });
    t.rank_.reserve(t.ranked.size());
    for (std::size_t i = 0; i < t.ranked.size(); ++i) t.rank_[t.ranked[i]] = i;
    return t;
}

TagFrequencyTable build_tag_frequency(const ingest::DomainCorpus& corpus) {
    return build_tag_frequency(all_questions(corpus), corpus.domain());
}

} // namespace cqatag::analytics
