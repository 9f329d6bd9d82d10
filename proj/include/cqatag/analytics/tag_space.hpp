#pragma once

#include "cqatag/analytics/tag_frequency.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cqatag::analytics {

/// Percentage of questions carrying at least one of the n most frequent tags.
/// n is clamped to the number of distinct tags. Throws UserError for n < 1.
double top_n_post_coverage(const TagFrequencyTable& freq, const QuestionRefs& questions,
                           std::size_t n);

/// covered[i] = number of questions covered by the (i+1) most frequent tags,
/// for i in [0, freq.size()). Computed in one pass from each post's best rank.
std::vector<std::uint64_t> coverage_curve(const TagFrequencyTable& freq,
                                          const QuestionRefs& questions);

/// Words in a tag: hyphen-separated parts ("dual-boot" has two).
std::size_t tag_word_count(std::string_view tag);

/// Share of distinct tags with 1, 2, 3, 4, 5 and more than 5 words.
std::array<double, 6> tag_word_length_distribution(const TagFrequencyTable& freq);

struct TagCharStats {
    std::string shortest;
    std::size_t shortest_length = 0;
    std::string longest;
    std::size_t longest_length = 0;
    double average_length = 0;
};

/// Lengths in Unicode code points over distinct tags. Ties pick the
/// lexicographically smallest tag.
TagCharStats tag_char_stats(const TagFrequencyTable& freq);

enum class OverlapScope { Title, TitleBody, TitleBodyAnswers };
enum class MatchMode { EMS, EMM };

const char* to_string(OverlapScope scope);
const char* to_string(MatchMode mode);

/// Lowercases and collapses whitespace; the form texts are matched in.
std::string overlap_normal_form(std::string_view text);

/// True when `phrase` occurs in `text` with non-word characters (or the text
/// ends) on both sides. Word characters are ASCII letters/digits and any
/// non-ASCII byte.
bool contains_phrase(std::string_view text, std::string_view phrase);

/// Whether one of a question's tags occurs in the given text. EMS only tries
/// single-word tags; EMM tries every tag both as written and with hyphens
/// replaced by spaces. `text` must already be in overlap_normal_form.
bool tags_overlap_text(const std::vector<std::string>& tags, std::string_view text, MatchMode mode);

/// Percentage of questions whose own tags appear in their scoped text.
/// Bodies and answers are stripped of HTML here.
double tag_post_overlap(const ingest::DomainCorpus& corpus, OverlapScope scope, MatchMode mode);

/// All scope/mode combinations in one pass: [scope][mode].
std::array<std::array<double, 2>, 3> tag_post_overlap_table(const ingest::DomainCorpus& corpus);

} // namespace cqatag::analytics
