#include "cqatag/analytics/domain_stats.hpp"

#include "cqatag/error.hpp"

#include <algorithm>
#include <unordered_set>

namespace cqatag::analytics {

DomainStats compute_domain_stats(const ingest::DomainCorpus& corpus, std::int64_t view_threshold) {
    const auto& questions = corpus.questions();
    if (questions.empty()) throw UserError("domain " + corpus.domain() + " has no questions");

    DomainStats s;
    s.domain = corpus.domain();
    s.view_threshold = view_threshold;
    s.q_count = questions.size();
    s.answer_rows = corpus.answers().size();

    std::unordered_set<std::string> tags;
    std::unordered_set<std::string> askers;
    std::uint64_t tag_incidences = 0, no_answers = 0, no_scores = 0, no_accepted = 0;
    for (const auto& q : questions) {
        for (const auto& t : q.tags) tags.insert(t);
        tag_incidences += q.tags.size();
        askers.insert(q.owner_key());
        if (q.view_count > view_threshold) ++s.views_gt_threshold;
        if (q.answer_count == 0) ++no_answers;
        if (q.score == 0) ++no_scores;
        if (!q.accepted_answer_id) ++no_accepted;
        s.max_answers = std::max(s.max_answers, q.answer_count);
        s.max_views = std::max(s.max_views, q.view_count);
    }
    const auto n = static_cast<double>(s.q_count);
    s.tag_count = tags.size();
    s.askers = askers.size();
    s.ppt = n / static_cast<double>(s.tag_count);
    s.avg_tags = static_cast<double>(tag_incidences) / n;
    s.qpa = n / static_cast<double>(s.askers);
    s.pct_no_answers = 100.0 * static_cast<double>(no_answers) / n;
    s.pct_no_scores = 100.0 * static_cast<double>(no_scores) / n;
    s.pct_no_accepted = 100.0 * static_cast<double>(no_accepted) / n;
    return s;
}

} // namespace cqatag::analytics
