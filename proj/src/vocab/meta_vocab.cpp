#include "cqatag/vocab/meta_vocab.hpp"

#include "cqatag/error.hpp"

#include <algorithm>

namespace cqatag::vocab {

void MetaVocab::index() { members_ = {tags.begin(), tags.end()}; }

bool MetaVocab::contains(const std::string& tag) const { return members_.contains(tag); }

MetaVocab build_meta_vocab(const analytics::QuestionRefs& train, double coverage_target,
                           std::string domain) {
    if (train.empty()) throw UserError("cannot build a vocabulary from an empty training split");
    if (!(coverage_target > 0 && coverage_target <= 100)) {
        throw UserError("coverage target must be in (0, 100]");
    }
    const auto freq = analytics::build_tag_frequency(train, domain);

    // A question is first covered once the prefix reaches its best-ranked tag.
    std::vector<std::uint64_t> newly_covered(freq.size(), 0);
    for (const auto* q : train) {
        std::size_t best = analytics::TagFrequencyTable::npos;
        for (const auto& t : q->tags) best = std::min(best, freq.rank_of(t));
        if (best != analytics::TagFrequencyTable::npos) ++newly_covered[best];
    }

    const auto n = static_cast<double>(train.size());
    MetaVocab v;
    v.domain = std::move(domain);
    v.coverage_target = coverage_target;
    std::uint64_t covered = 0;
    for (std::size_t r = 0; r < freq.size(); ++r) {
        covered += newly_covered[r];
        v.tags.push_back(freq.ranked[r]);
        v.counts.push_back(freq.count(freq.ranked[r]));
        if (100.0 * static_cast<double>(covered) >= coverage_target * n) break;
    }
    v.achieved_coverage = 100.0 * static_cast<double>(covered) / n;
    v.index();
    return v;
}

bool is_oov(const std::string& tag, const MetaVocab& vocab) { return !vocab.contains(tag); }

nlohmann::json vocab_to_json(const MetaVocab& vocab) {
    nlohmann::json tags = nlohmann::json::array();
    for (std::size_t i = 0; i < vocab.tags.size(); ++i) {
        tags.push_back({{"tag", vocab.tags[i]}, {"count", vocab.counts[i]}});
    }
    return {{"domain", vocab.domain},
            {"coverage_target", vocab.coverage_target},
            {"achieved_coverage", vocab.achieved_coverage},
            {"frequency_source", "train"},
            {"built_from", vocab.built_from},
            {"tags", tags}};
}

MetaVocab vocab_from_json(const nlohmann::json& j) {
    MetaVocab v;
    try {
        v.domain = j.at("domain").get<std::string>();
        v.coverage_target = j.at("coverage_target").get<double>();
        v.achieved_coverage = j.at("achieved_coverage").get<double>();
        v.built_from = j.value("built_from", "");
        for (const auto& t : j.at("tags")) {
            v.tags.push_back(t.at("tag").get<std::string>());
            v.counts.push_back(t.at("count").get<std::uint64_t>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw UserError(std::string("malformed vocab file: ") + e.what());
    }
    v.index();
    if (v.members_.size() != v.tags.size()) throw UserError("vocab file lists a tag twice");
    return v;
}

} // namespace cqatag::vocab
