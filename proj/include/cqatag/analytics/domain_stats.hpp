#pragma once

#include "cqatag/ingest/corpus.hpp"

#include <cstdint>
#include <string>

namespace cqatag::analytics {

/// Community-level statistics of one domain. Ratios and percentages are kept
/// at full precision; reports round them to two decimals.
struct DomainStats {
    std::string domain;
    std::uint64_t q_count = 0;
    std::uint64_t tag_count = 0;        // distinct tags
    double ppt = 0;                     // posts per tag: q_count / tag_count
    double avg_tags = 0;                // mean tags per question
    std::uint64_t views_gt_threshold = 0;
    std::int64_t view_threshold = 100;
    std::uint64_t askers = 0;           // distinct question owners
    double qpa = 0;                     // q_count / askers
    std::uint64_t answer_rows = 0;      // answers retained in the corpus
    double pct_no_answers = 0;
    double pct_no_scores = 0;
    double pct_no_accepted = 0;
    std::int64_t max_answers = 0;
    std::int64_t max_views = 0;
};

/// Every field is computed over questions. Answer counts, acceptance and views
/// come from the question rows' AnswerCount/AcceptedAnswerId/ViewCount.
/// `view_threshold` sets the cutoff of the views_gt_threshold column.
/// Throws UserError for a corpus without questions.
DomainStats compute_domain_stats(const ingest::DomainCorpus& corpus,
                                 std::int64_t view_threshold = 100);

} // namespace cqatag::analytics
