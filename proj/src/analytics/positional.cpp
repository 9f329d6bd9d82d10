#include "cqatag/analytics/positional.hpp"

#include "cqatag/error.hpp"

#include <algorithm>
#include <numeric>

namespace cqatag::analytics {

std::uint64_t PositionalProfile::total() const {
    return std::accumulate(position_counts.begin(), position_counts.end(), std::uint64_t{0});
}

namespace {

void fill_phi(PositionalProfile& p) {
    const auto total = p.total();
    for (std::size_t x = 0; x < 5; ++x) {
        p.phi[x] = total == 0 ? 0.0
                              : 100.0 * static_cast<double>(p.position_counts[x]) /
                                    static_cast<double>(total);
    }
}

} // namespace

PositionalProfile positional_profile(const QuestionRefs& questions, const std::string& tag) {
    PositionalProfile p;
    p.tag = tag;
    for (const auto* q : questions) {
        for (std::size_t x = 0; x < q->tags.size() && x < 5; ++x) {
            if (q->tags[x] == tag) ++p.position_counts[x];
        }
    }
    if (p.total() == 0) throw LookupError("tag \"" + tag + "\" does not occur");
    fill_phi(p);
    return p;
}

std::vector<PositionalProfile> all_positional_profiles(const QuestionRefs& questions) {
    std::unordered_map<std::string, std::array<std::uint64_t, 5>> counts;
    for (const auto* q : questions) {
        for (std::size_t x = 0; x < q->tags.size() && x < 5; ++x) ++counts[q->tags[x]][x];
    }
    std::vector<PositionalProfile> out;
    out.reserve(counts.size());
    for (auto& [tag, c] : counts) {
        PositionalProfile p;
        p.tag = tag;
        p.position_counts = c;
        fill_phi(p);
        out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end(),
              [](const PositionalProfile& a, const PositionalProfile& b) { return a.tag < b.tag; });
    return out;
}

std::string to_string(const PositionSet& set) {
    std::string s;
    for (int x : set) {
        if (!s.empty()) s += ',';
        s += std::to_string(x);
    }
    return s;
}

StabilityReport stability_report(const std::vector<PositionalProfile>& profiles,
                                 const std::vector<PositionSet>& position_sets, double delta,
                                 std::uint64_t min_count) {
    if (!(delta > 0 && delta <= 100)) throw UserError("stability threshold must be in (0, 100]");
    unsigned used = 0;
    for (const auto& set : position_sets) {
        if (set.empty()) throw UserError("empty position set");
        for (int x : set) {
            if (x < 1 || x > 5) throw UserError("positions must lie in 1..5");
            if (used & (1u << x)) throw UserError("position sets must be disjoint");
            used |= 1u << x;
        }
    }

    StabilityReport r;
    r.delta = delta;
    r.position_sets = position_sets;
    for (const auto& set : position_sets) r.q_sets[set];
    for (const auto& p : profiles) {
        const auto total = p.total();
        if (total == 0 || total < min_count) continue;
        ++r.universe;
        for (const auto& set : position_sets) {
            std::uint64_t in_set = 0;
            for (int x : set) in_set += p.position_counts[static_cast<std::size_t>(x - 1)];
            if (100.0 * static_cast<double>(in_set) >= delta * static_cast<double>(total)) {
                r.q_sets[set].push_back(p.tag);
            }
        }
    }
    for (auto& [set, tags] : r.q_sets) {
        std::sort(tags.begin(), tags.end());
        r.st[set] = r.universe == 0 ? 0.0
                                    : 100.0 * static_cast<double>(tags.size()) /
                                          static_cast<double>(r.universe);
    }
    return r;
}

StabilityReport stability_report(const QuestionRefs& questions,
                                 const std::vector<PositionSet>& position_sets, double delta,
                                 std::uint64_t min_count) {
    return stability_report(all_positional_profiles(questions), position_sets, delta, min_count);
}

} // namespace cqatag::analytics
