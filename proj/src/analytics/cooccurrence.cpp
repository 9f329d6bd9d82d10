#include "cqatag/analytics/cooccurrence.hpp"

#include "cqatag/error.hpp"

#include <algorithm>
#include <unordered_set>

namespace cqatag::analytics {

bool CooccurrenceTable::id_of(const std::string& tag, std::uint32_t& id) const {
    const auto it = ids_.find(tag);
    if (it == ids_.end()) return false;
    id = it->second;
    return true;
}

std::uint64_t CooccurrenceTable::pair_count(const std::string& a, const std::string& b) const {
    std::uint32_t ia, ib;
    if (a == b || !id_of(a, ia) || !id_of(b, ib)) return 0;
    return lookup(pairs_, std::min(ia, ib), std::max(ia, ib));
}

std::uint64_t CooccurrenceTable::order_count(const std::string& before,
                                             const std::string& after) const {
    std::uint32_t ia, ib;
    if (before == after || !id_of(before, ia) || !id_of(after, ib)) return 0;
    return lookup(orders_, ia, ib);
}

bool CooccurrenceTable::has_pair(const std::string& a, const std::string& b) const {
    return pair_count(a, b) > 0;
}

std::vector<PairCount> CooccurrenceTable::ranked_pairs() const {
    std::vector<PairCount> out;
    out.reserve(pairs_.size());
    for (const auto& [k, n] : pairs_) {
        const auto& a = names_[static_cast<std::uint32_t>(k >> 32)];
        const auto& b = names_[static_cast<std::uint32_t>(k & 0xffffffffu)];
        out.push_back(a < b ? PairCount{a, b, n} : PairCount{b, a, n});
    }
    std::sort(out.begin(), out.end(), [](const PairCount& x, const PairCount& y) {
        if (x.count != y.count) return x.count > y.count;
        if (x.first != y.first) return x.first < y.first;
        return x.second < y.second;
    });
    return out;
}

CooccurrenceTable build_cooccurrence(const QuestionRefs& questions) {
    CooccurrenceTable t;
    std::vector<std::uint32_t> ids;
    for (const auto* q : questions) {
        ids.clear();
        for (const auto& tag : q->tags) {
            auto [it, inserted] = t.ids_.try_emplace(tag, static_cast<std::uint32_t>(t.names_.size()));
            if (inserted) t.names_.push_back(tag);
            ids.push_back(it->second);
        }
        // Positions m < n: the tag at m precedes the tag at n.
        for (std::size_t m = 0; m < ids.size(); ++m) {
            for (std::size_t n = m + 1; n < ids.size(); ++n) {
                if (ids[m] == ids[n]) continue;
                ++t.pairs_[CooccurrenceTable::key(std::min(ids[m], ids[n]), std::max(ids[m], ids[n]))];
                ++t.orders_[CooccurrenceTable::key(ids[m], ids[n])];
            }
        }
    }
    return t;
}

CooccurrenceTable build_cooccurrence(const ingest::DomainCorpus& corpus) {
    return build_cooccurrence(all_questions(corpus));
}

PairCoverage pair_post_coverage(const CooccurrenceTable& table, const QuestionRefs& questions,
                                std::size_t k) {
    if (k < 1) throw UserError("pair coverage needs k >= 1");
    PairCoverage out;
    if (questions.empty()) return out;
    const auto ranked = table.ranked_pairs();
    std::unordered_set<std::string> top;
    for (std::size_t i = 0; i < std::min(k, ranked.size()); ++i) {
        top.insert(ranked[i].first + '\x1f' + ranked[i].second);
    }
    std::uint64_t covered = 0, single = 0;
    for (const auto* q : questions) {
        if (q->tags.size() == 1) ++single;
        bool hit = false;
        for (std::size_t m = 0; m < q->tags.size() && !hit; ++m) {
            for (std::size_t n = m + 1; n < q->tags.size() && !hit; ++n) {
                const auto& a = std::min(q->tags[m], q->tags[n]);
                const auto& b = std::max(q->tags[m], q->tags[n]);
                hit = top.contains(a + '\x1f' + b);
            }
        }
        if (hit) ++covered;
    }
    const auto total = static_cast<double>(questions.size());
    out.coverage = 100.0 * static_cast<double>(covered) / total;
    out.single_tag = 100.0 * static_cast<double>(single) / total;
    return out;
}

OrderingPreference ordering_preference(const CooccurrenceTable& table, const std::string& a,
                                       const std::string& b) {
    if (!table.has_pair(a, b)) {
        throw LookupError("tags \"" + a + "\" and \"" + b + "\" never appear together");
    }
    OrderingPreference p;
    p.forward = table.order_count(a, b);
    p.backward = table.order_count(b, a);
    p.dominant_pct = 100.0 * static_cast<double>(std::max(p.forward, p.backward)) /
                     static_cast<double>(p.forward + p.backward);
    return p;
}

} // namespace cqatag::analytics
