#include "cqatag/pipeline/analysis.hpp"

#include "cqatag/ingest/split.hpp"

#include <algorithm>

namespace cqatag::pipeline {

namespace {

std::string position_label(const analytics::PositionSet& set) {
    return "ST{" + analytics::to_string(set) + "}";
}

} // namespace

DomainAnalysis analyze_domain(const ingest::DomainCorpus& corpus, const PipelineConfig& config,
                              std::uint64_t example_seed) {
    DomainAnalysis d;
    d.example_seed = example_seed;
    d.stats = analytics::compute_domain_stats(corpus, config.view_threshold);
    const auto questions = analytics::all_questions(corpus);
    d.freq = analytics::build_tag_frequency(questions, corpus.domain());
    d.word_lengths = analytics::tag_word_length_distribution(d.freq);
    d.char_stats = analytics::tag_char_stats(d.freq);
    d.coverage_curve = analytics::coverage_curve(d.freq, questions);
    const auto n = static_cast<double>(questions.size());
    for (auto top : kCoverageTopN) {
        const auto idx = std::min(top, d.coverage_curve.size()) - 1;
        d.coverage.emplace_back(top, 100.0 * static_cast<double>(d.coverage_curve[idx]) / n);
    }
    d.overlap = analytics::tag_post_overlap_table(corpus);

    const auto co = analytics::build_cooccurrence(questions);
    for (auto k : kPairTopK) {
        const auto pc = analytics::pair_post_coverage(co, questions, k);
        d.pair_coverage.emplace_back(k, pc.coverage);
        d.single_tag = pc.single_tag;
    }
    const auto ranked = co.ranked_pairs();
    d.pair_ranking.assign(ranked.begin(),
                          ranked.begin() + static_cast<std::ptrdiff_t>(std::min(ranked.size(), kPairSeries)));
    for (std::size_t i = 0; i < ranked.size() && i < kOrderingPairs; ++i) {
        d.top_pairs.push_back(
            {ranked[i], analytics::ordering_preference(co, ranked[i].first, ranked[i].second)});
    }

    d.profiles = analytics::all_positional_profiles(questions);
    for (double delta : config.stability.deltas) {
        d.stability.push_back(analytics::stability_report(d.profiles, config.stability.position_sets,
                                                          delta, config.stability.min_count));
    }
    return d;
}

Table community_diversity_table(const std::vector<DomainAnalysis>& domains) {
    Table t;
    const std::string views = domains.empty()
                                  ? "V>100"
                                  : "V>" + std::to_string(domains.front().stats.view_threshold);
    t.header = {"Domain", "#Q", "#T", "PPT", "AvgT", views, "#A", "QPA"};
    for (const auto& d : domains) {
        const auto& s = d.stats;
        t.rows.push_back({s.domain, std::to_string(s.q_count), std::to_string(s.tag_count),
                          fixed(s.ppt), fixed(s.avg_tags), std::to_string(s.views_gt_threshold),
                          std::to_string(s.askers), fixed(s.qpa)});
    }
    return t;
}

Table domain_statistics_table(const std::vector<DomainAnalysis>& domains) {
    Table t;
    const std::string views =
        domains.empty() ? "VIEWGT100" : "VIEWGT" + std::to_string(domains.front().stats.view_threshold);
    t.header = {"Domain",        "Q",          "T",              "Q/T",
                "AVGT",          "NOANS (%)",  "NOSCORES (%)",   "NO ACCEPT ANS (%)",
                "MAXANS",        "MAXVIEW",    views,            "#ASKERS"};
    for (const auto& d : domains) {
        const auto& s = d.stats;
        t.rows.push_back({s.domain, std::to_string(s.q_count), std::to_string(s.tag_count),
                          fixed(s.ppt), fixed(s.avg_tags), fixed(s.pct_no_answers),
                          fixed(s.pct_no_scores), fixed(s.pct_no_accepted),
                          std::to_string(s.max_answers), std::to_string(s.max_views),
                          std::to_string(s.views_gt_threshold), std::to_string(s.askers)});
    }
    return t;
}

Table tag_word_length_table(const std::vector<DomainAnalysis>& domains) {
    Table t;
    t.header = {"Domain", "1", "2", "3", "4", "5", ">5"};
    for (const auto& d : domains) {
        std::vector<std::string> row{d.stats.domain};
        for (double v : d.word_lengths) row.push_back(fixed(v));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table tag_statistics_table(const std::vector<DomainAnalysis>& domains) {
    Table t;
    t.header = {"Domain", "Longest Tag", "Size", "Shortest Tag", "Size", "AvgTLen"};
    for (const auto& d : domains) {
        const auto& c = d.char_stats;
        t.rows.push_back({d.stats.domain, c.longest, std::to_string(c.longest_length), c.shortest,
                          std::to_string(c.shortest_length), fixed(c.average_length)});
    }
    return t;
}

Table tag_post_coverage_table(const std::vector<DomainAnalysis>& domains) {
    Table t;
    t.header = {"Domain", "#T"};
    for (auto n : kCoverageTopN) t.header.push_back("Top" + std::to_string(n));
    t.header.push_back("100T%");
    for (const auto& d : domains) {
        std::vector<std::string> row{d.stats.domain, std::to_string(d.freq.size())};
        for (const auto& [n, pct] : d.coverage) row.push_back(fixed(pct));
        const auto tags = static_cast<double>(d.freq.size());
        row.push_back(fixed(tags == 0 ? 0 : 100.0 * std::min(100.0, tags) / tags));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table tag_post_overlap_table(const std::vector<DomainAnalysis>& domains) {
    Table t;
    t.header = {"Domain"};
    const char* scopes[] = {"T", "T+B", "T+B+A"};
    for (auto s : scopes) {
        t.header.push_back(std::string(s) + " EMS%");
        t.header.push_back(std::string(s) + " EMM%");
    }
    for (const auto& d : domains) {
        std::vector<std::string> row{d.stats.domain};
        for (const auto& scope : d.overlap)
            for (double v : scope) row.push_back(fixed(v));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table tag_pair_coverage_table(const std::vector<DomainAnalysis>& domains) {
    Table t;
    t.header = {"Domain"};
    for (auto k : kPairTopK) t.header.push_back("Top-" + std::to_string(k));
    t.header.push_back("Single");
    for (const auto& d : domains) {
        std::vector<std::string> row{d.stats.domain};
        for (const auto& [k, pct] : d.pair_coverage) row.push_back(fixed(pct));
        row.push_back(fixed(d.single_tag));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table top_tag_pair_table(const std::vector<DomainAnalysis>& domains) {
    Table t;
    t.header = {"Domain", "Top Pair", "Post-Count"};
    for (const auto& d : domains) {
        if (d.top_pairs.empty()) {
            t.rows.push_back({d.stats.domain, "", "0"});
            continue;
        }
        const auto& p = d.top_pairs.front().pair;
        t.rows.push_back({d.stats.domain, "(" + p.first + "," + p.second + ")", std::to_string(p.count)});
    }
    return t;
}

Table tag_ordering_table(const std::vector<DomainAnalysis>& domains) {
    Table t;
    t.header = {"Domain", "Total", "Order-1", "%", "Order-2", "%"};
    for (const auto& d : domains) {
        for (const auto& [pair, order] : d.top_pairs) {
            const auto total = static_cast<double>(pair.count);
            t.rows.push_back({d.stats.domain, std::to_string(pair.count),
                              "(" + pair.first + "," + pair.second + ")",
                              fixed(100.0 * static_cast<double>(order.forward) / total),
                              "(" + pair.second + "," + pair.first + ")",
                              fixed(100.0 * static_cast<double>(order.backward) / total)});
        }
    }
    return t;
}

std::vector<Table> tag_stability_tables(const std::vector<DomainAnalysis>& domains) {
    std::vector<Table> tables;
    if (domains.empty()) return tables;
    for (std::size_t i = 0; i < domains.front().stability.size(); ++i) {
        Table t;
        t.header = {"Domain", "delta", "#T"};
        for (const auto& set : domains.front().stability[i].position_sets) {
            t.header.push_back(position_label(set));
            t.header.push_back("|Q{" + analytics::to_string(set) + "}|");
        }
        for (const auto& d : domains) {
            const auto& r = d.stability[i];
            std::vector<std::string> row{d.stats.domain, compact(r.delta), std::to_string(r.universe)};
            for (const auto& set : r.position_sets) {
                row.push_back(fixed(r.st.at(set)));
                row.push_back(std::to_string(r.q_sets.at(set).size()));
            }
            t.rows.push_back(std::move(row));
        }
        tables.push_back(std::move(t));
    }
    return tables;
}

Table stable_tag_examples_table(const std::vector<DomainAnalysis>& domains) {
    Table t;
    t.header = {"Domain", "delta", "Positions", "Tags"};
    for (const auto& d : domains) {
        if (d.stability.empty()) continue;
        const auto& r = *std::max_element(d.stability.begin(), d.stability.end(),
                                          [](const auto& a, const auto& b) { return a.delta < b.delta; });
        for (const auto& set : r.position_sets) {
            const auto& members = r.q_sets.at(set);
            std::vector<ingest::PostId> idx(members.size());
            for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<ingest::PostId>(i);
            ingest::portable_shuffle(idx, d.example_seed);
            std::vector<std::string> picked;
            for (std::size_t i = 0; i < idx.size() && i < kStableExamples; ++i) {
                picked.push_back(members[static_cast<std::size_t>(idx[i])]);
            }
            std::sort(picked.begin(), picked.end());
            std::string tags;
            for (const auto& p : picked) tags += (tags.empty() ? "" : " ") + p;
            t.rows.push_back({d.stats.domain, compact(r.delta), analytics::to_string(set), tags});
        }
    }
    return t;
}

Table tag_distribution_series(const DomainAnalysis& d, std::size_t top) {
    Table t;
    t.header = {"rank", "tag", "posts"};
    for (std::size_t i = 0; i < d.freq.size() && i < top; ++i) {
        t.rows.push_back({std::to_string(i + 1), d.freq.ranked[i],
                          std::to_string(d.freq.count(d.freq.ranked[i]))});
    }
    return t;
}

Table pair_distribution_series(const DomainAnalysis& d, std::size_t top) {
    Table t;
    t.header = {"rank", "pair", "posts"};
    for (std::size_t i = 0; i < d.pair_ranking.size() && i < top; ++i) {
        const auto& p = d.pair_ranking[i];
        t.rows.push_back({std::to_string(i + 1), "(" + p.first + "," + p.second + ")",
                          std::to_string(p.count)});
    }
    return t;
}

Table positional_profile_series(const DomainAnalysis& d) {
    Table t;
    t.header = {"tag", "total", "phi1", "phi2", "phi3", "phi4", "phi5"};
    for (const auto& p : d.profiles) {
        std::vector<std::string> row{p.tag, std::to_string(p.total())};
        for (double v : p.phi) row.push_back(fixed(v, 4));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table coverage_curve_series(const DomainAnalysis& d) {
    Table t;
    t.header = {"n", "covered_posts", "coverage%"};
    const auto q = static_cast<double>(d.stats.q_count);
    for (std::size_t i = 0; i < d.coverage_curve.size(); ++i) {
        t.rows.push_back({std::to_string(i + 1), std::to_string(d.coverage_curve[i]),
                          fixed(100.0 * static_cast<double>(d.coverage_curve[i]) / q, 4)});
    }
    return t;
}

nlohmann::json analysis_to_json(const DomainAnalysis& d) {
    const auto& s = d.stats;
    nlohmann::json j;
    j["domain"] = s.domain;
    j["stats"] = {{"questions", s.q_count},         {"tags", s.tag_count},
                  {"posts_per_tag", s.ppt},         {"avg_tags", s.avg_tags},
                  {"view_threshold", s.view_threshold},
                  {"views_gt_threshold", s.views_gt_threshold},
                  {"askers", s.askers},             {"questions_per_asker", s.qpa},
                  {"answers", s.answer_rows},       {"pct_no_answers", s.pct_no_answers},
                  {"pct_no_scores", s.pct_no_scores}, {"pct_no_accepted", s.pct_no_accepted},
                  {"max_answers", s.max_answers},   {"max_views", s.max_views}};
    j["word_lengths"] = d.word_lengths;
    j["char_stats"] = {{"longest", d.char_stats.longest},
                       {"longest_length", d.char_stats.longest_length},
                       {"shortest", d.char_stats.shortest},
                       {"shortest_length", d.char_stats.shortest_length},
                       {"average_length", d.char_stats.average_length}};
    for (const auto& [n, pct] : d.coverage) j["coverage"]["top" + std::to_string(n)] = pct;
    const char* scopes[] = {"title", "title_body", "title_body_answers"};
    for (int sc = 0; sc < 3; ++sc) {
        j["overlap"][scopes[sc]] = {{"ems", d.overlap[static_cast<std::size_t>(sc)][0]},
                                    {"emm", d.overlap[static_cast<std::size_t>(sc)][1]}};
    }
    for (const auto& [k, pct] : d.pair_coverage) j["pair_coverage"]["top" + std::to_string(k)] = pct;
    j["single_tag"] = d.single_tag;
    for (const auto& [pair, order] : d.top_pairs) {
        j["top_pairs"].push_back({{"first", pair.first},
                                  {"second", pair.second},
                                  {"count", pair.count},
                                  {"first_before_second", order.forward},
                                  {"second_before_first", order.backward},
                                  {"dominant_pct", order.dominant_pct}});
    }
    for (const auto& r : d.stability) {
        nlohmann::json sets = nlohmann::json::array();
        for (const auto& set : r.position_sets) {
            sets.push_back({{"positions", set}, {"share", r.st.at(set)}, {"tags", r.q_sets.at(set)}});
        }
        j["stability"].push_back({{"delta", r.delta}, {"universe", r.universe}, {"sets", sets}});
    }
    return j;
}

} // namespace cqatag::pipeline
