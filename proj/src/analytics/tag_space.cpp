#include "cqatag/analytics/tag_space.hpp"

#include "cqatag/error.hpp"
#include "cqatag/ingest/html.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace cqatag::analytics {

std::vector<std::uint64_t> coverage_curve(const TagFrequencyTable& freq,
                                          const QuestionRefs& questions) {
    std::vector<std::uint64_t> covered(freq.size(), 0);
    for (const auto* q : questions) {
        std::size_t best = TagFrequencyTable::npos;
        for (const auto& t : q->tags) best = std::min(best, freq.rank_of(t));
        if (best != TagFrequencyTable::npos) ++covered[best];
    }
    for (std::size_t i = 1; i < covered.size(); ++i) covered[i] += covered[i - 1];
    return covered;
}

double top_n_post_coverage(const TagFrequencyTable& freq, const QuestionRefs& questions,
                           std::size_t n) {
    if (n < 1) throw UserError("top-n coverage needs n >= 1");
    if (questions.empty() || freq.size() == 0) return 0.0;
    n = std::min(n, freq.size());
    std::uint64_t covered = 0;
    for (const auto* q : questions) {
        for (const auto& t : q->tags) {
            if (freq.rank_of(t) < n) {
                ++covered;
                break;
            }
        }
    }
    return 100.0 * static_cast<double>(covered) / static_cast<double>(questions.size());
}

std::size_t tag_word_count(std::string_view tag) {
    return static_cast<std::size_t>(std::count(tag.begin(), tag.end(), '-')) + 1;
}

std::array<double, 6> tag_word_length_distribution(const TagFrequencyTable& freq) {
    std::array<double, 6> dist{};
    if (freq.size() == 0) return dist;
    for (const auto& tag : freq.ranked) {
        const auto words = tag_word_count(tag);
        dist[std::min<std::size_t>(words, 6) - 1] += 1;
    }
    for (auto& d : dist) d = 100.0 * d / static_cast<double>(freq.size());
    return dist;
}

namespace {

std::size_t code_points(std::string_view s) {
    return static_cast<std::size_t>(std::count_if(
        s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

bool is_word_byte(char c) {
    const auto u = static_cast<unsigned char>(c);
    return u >= 0x80 || std::isalnum(u);
}

} // namespace

TagCharStats tag_char_stats(const TagFrequencyTable& freq) {
    TagCharStats s;
    if (freq.size() == 0) return s;
    std::vector<std::string> tags = freq.ranked;
    std::sort(tags.begin(), tags.end());
    std::size_t total = 0;
    bool first = true;
    for (const auto& t : tags) {
        const auto len = code_points(t);
        total += len;
        if (first || len < s.shortest_length) s.shortest = t, s.shortest_length = len;
        if (first || len > s.longest_length) s.longest = t, s.longest_length = len;
        first = false;
    }
    s.average_length = static_cast<double>(total) / static_cast<double>(tags.size());
    return s;
}

const char* to_string(OverlapScope scope) {
    switch (scope) {
    case OverlapScope::Title: return "Title";
    case OverlapScope::TitleBody: return "Title+Body";
    case OverlapScope::TitleBodyAnswers: return "Title+Body+Answer";
    }
    return "?";
}

const char* to_string(MatchMode mode) { return mode == MatchMode::EMS ? "EMS" : "EMM"; }

std::string overlap_normal_form(std::string_view text) {
    std::string lowered(text);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(), [](unsigned char c) {
        return static_cast<char>(c < 0x80 ? std::tolower(c) : c);
    });
    return ingest::normalize_whitespace(lowered);
}

bool contains_phrase(std::string_view text, std::string_view phrase) {
    if (phrase.empty() || phrase.size() > text.size()) return false;
    const std::boyer_moore_horspool_searcher searcher(phrase.begin(), phrase.end());
    auto it = text.begin();
    while (true) {
        const auto [begin, end] = searcher(it, text.end());
        if (begin == text.end()) return false;
        const bool left_ok = begin == text.begin() || !is_word_byte(*(begin - 1));
        const bool right_ok = end == text.end() || !is_word_byte(*end);
        if (left_ok && right_ok) return true;
        it = begin + 1;
    }
}

bool tags_overlap_text(const std::vector<std::string>& tags, std::string_view text, MatchMode mode) {
    for (const auto& tag : tags) {
        const bool multi_word = tag.find('-') != std::string::npos;
        if (mode == MatchMode::EMS) {
            if (!multi_word && contains_phrase(text, tag)) return true;
            continue;
        }
        if (contains_phrase(text, tag)) return true;
        if (multi_word) {
            std::string spaced = tag;
            std::replace(spaced.begin(), spaced.end(), '-', ' ');
            if (contains_phrase(text, spaced)) return true;
        }
    }
    return false;
}

std::array<std::array<double, 2>, 3> tag_post_overlap_table(const ingest::DomainCorpus& corpus) {
    std::array<std::array<std::uint64_t, 2>, 3> hits{};
    for (const auto& q : corpus.questions()) {
        // Each wider scope extends the narrower one, so a hit in a narrow scope
        // counts for every wider scope too.
        std::array<std::string, 3> scoped;
        scoped[0] = overlap_normal_form(q.title);
        scoped[1] = overlap_normal_form(ingest::strip_html(q.body));
        std::string answers;
        for (const auto* a : corpus.answers_of(q.id)) {
            answers += ingest::strip_html(a->body);
            answers += '\n';
        }
        scoped[2] = overlap_normal_form(answers);
        for (int mode = 0; mode < 2; ++mode) {
            const auto m = mode == 0 ? MatchMode::EMS : MatchMode::EMM;
            bool hit = false;
            for (int scope = 0; scope < 3; ++scope) {
                hit = hit || tags_overlap_text(q.tags, scoped[scope], m);
                if (hit) ++hits[scope][mode];
            }
        }
    }
    std::array<std::array<double, 2>, 3> pct{};
    const auto n = static_cast<double>(corpus.questions().size());
    if (n == 0) return pct;
    for (int s = 0; s < 3; ++s)
        for (int m = 0; m < 2; ++m) pct[s][m] = 100.0 * static_cast<double>(hits[s][m]) / n;
    return pct;
}

double tag_post_overlap(const ingest::DomainCorpus& corpus, OverlapScope scope, MatchMode mode) {
    const auto table = tag_post_overlap_table(corpus);
    return table[static_cast<int>(scope)][mode == MatchMode::EMS ? 0 : 1];
}

} // namespace cqatag::analytics
