#include "cqatag/analytics/cooccurrence.hpp"
#include "cqatag/analytics/domain_stats.hpp"
#include "cqatag/analytics/positional.hpp"
#include "cqatag/analytics/tag_frequency.hpp"
#include "cqatag/analytics/tag_space.hpp"
#include "cqatag/error.hpp"
#include "cqatag/ingest/html.hpp"
#include "synthetic.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace cqatag;
using namespace cqatag::analytics;
using testsupport::question;

namespace {

ingest::DomainCorpus random_corpus(std::uint64_t seed, testsupport::CorpusShape shape = {}) {
    return ingest::build_corpus(testsupport::random_posts(shape, seed), "synthetic");
}

std::vector<std::string> oracle_ranking(const ingest::DomainCorpus& c) {
    std::map<std::string, std::uint64_t> counts;
    for (const auto& q : c.questions())
        for (const auto& t : q.tags) ++counts[t];
    std::vector<std::pair<std::string, std::uint64_t>> v(counts.begin(), counts.end());
    std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    std::vector<std::string> out;
    for (const auto& [t, n] : v) out.push_back(t);
    return out;
}

bool oracle_word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           static_cast<unsigned char>(c) >= 0x80;
}

bool oracle_contains(const std::string& text, const std::string& phrase) {
    for (std::size_t i = 0; i + phrase.size() <= text.size(); ++i) {
        if (text.compare(i, phrase.size(), phrase) != 0) continue;
        const bool left = i == 0 || !oracle_word_char(text[i - 1]);
        const bool right = i + phrase.size() == text.size() || !oracle_word_char(text[i + phrase.size()]);
        if (left && right) return true;
    }
    return false;
}

} // namespace

TEST_CASE("domain stats match a brute-force recount") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto c = random_corpus(seed, {.questions = 100});
        const auto s = compute_domain_stats(c, 100);
        std::set<std::string> tags, askers;
        double incidences = 0, views = 0, no_ans = 0, no_score = 0, no_acc = 0;
        for (const auto& q : c.questions()) {
            tags.insert(q.tags.begin(), q.tags.end());
            askers.insert(std::to_string(*q.owner_id));
            incidences += static_cast<double>(q.tags.size());
            views += q.view_count > 100;
            no_ans += q.answer_count == 0;
            no_score += q.score == 0;
            no_acc += !q.accepted_answer_id.has_value();
        }
        CHECK(s.q_count == 100);
        CHECK(s.tag_count == tags.size());
        CHECK(s.ppt == doctest::Approx(100.0 / static_cast<double>(tags.size())));
        CHECK(s.avg_tags == doctest::Approx(incidences / 100));
        CHECK(s.views_gt_threshold == static_cast<std::uint64_t>(views));
        CHECK(s.askers == askers.size());
        CHECK(s.qpa == doctest::Approx(100.0 / static_cast<double>(askers.size())));
        CHECK(s.pct_no_answers == doctest::Approx(no_ans));
        CHECK(s.pct_no_scores == doctest::Approx(no_score));
        CHECK(s.pct_no_accepted == doctest::Approx(no_acc));
    }
    CHECK_THROWS_AS(compute_domain_stats(ingest::build_corpus({}, "empty")), UserError);
}

TEST_CASE("view threshold is strict and configurable") {
    auto a = question(1, {"x"});
    a.view_count = 100;
    auto b = question(2, {"x"});
    b.view_count = 101;
    const auto c = ingest::build_corpus({a, b}, "d");
    CHECK(compute_domain_stats(c, 100).views_gt_threshold == 1);
    CHECK(compute_domain_stats(c, 99).views_gt_threshold == 2);
}

TEST_CASE("frequency ranking breaks ties lexicographically") {
    const auto c = ingest::build_corpus(
        {question(1, {"b", "a"}), question(2, {"c", "a"}), question(3, {"b", "d"})}, "d");
    const auto f = build_tag_frequency(c);
    CHECK(f.ranked == std::vector<std::string>{"a", "b", "c", "d"});
    CHECK(f.count("a") == 2);
    CHECK(f.count("zz") == 0);
    CHECK(f.rank_of("c") == 2);
    CHECK(f.rank_of("zz") == TagFrequencyTable::npos);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto r = random_corpus(seed);
        CHECK(build_tag_frequency(r).ranked == oracle_ranking(r));
    }
}

TEST_CASE("top-n coverage equals a set-intersection scan") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto c = random_corpus(seed, {.questions = 150, .tags = 40});
        const auto qs = all_questions(c);
        const auto f = build_tag_frequency(c);
        const auto ranking = oracle_ranking(c);
        const auto curve = coverage_curve(f, qs);
        for (std::size_t n : {1, 2, 5, 10, 25, 40, 100}) {
            const std::set<std::string> top(ranking.begin(),
                                            ranking.begin() + static_cast<std::ptrdiff_t>(std::min(n, ranking.size())));
            double covered = 0;
            for (const auto& q : c.questions())
                covered += std::any_of(q.tags.begin(), q.tags.end(), [&](const auto& t) { return top.contains(t); });
            CHECK(top_n_post_coverage(f, qs, n) == doctest::Approx(100.0 * covered / 150));
            CHECK(static_cast<double>(curve[std::min(n, curve.size()) - 1]) == covered);
        }
        CHECK(curve.back() == 150);
    }
    const auto c = random_corpus(1);
    CHECK_THROWS_AS(top_n_post_coverage(build_tag_frequency(c), all_questions(c), 0), UserError);
}

TEST_CASE("tag shape statistics") {
    CHECK(tag_word_count("boot") == 1);
    CHECK(tag_word_count("dual-boot") == 2);
    CHECK(tag_word_count("a-b-c-d-e-f-g") == 7);
    const auto c = ingest::build_corpus(
        {question(1, {"ab", "a-b", "a-b-c"}), question(2, {"a-b-c-d-e-f", "\xC3\xA9t\xC3\xA9"})}, "d");
    const auto f = build_tag_frequency(c);
    const auto dist = tag_word_length_distribution(f);
    CHECK(dist[0] == doctest::Approx(40));
    CHECK(dist[1] == doctest::Approx(20));
    CHECK(dist[2] == doctest::Approx(20));
    CHECK(dist[5] == doctest::Approx(20));
    const auto cs = tag_char_stats(f);
    CHECK(cs.longest == "a-b-c-d-e-f");
    CHECK(cs.longest_length == 11);
    CHECK(cs.shortest == "ab");
    CHECK(cs.shortest_length == 2);
    CHECK(cs.average_length == doctest::Approx((2 + 3 + 5 + 11 + 3) / 5.0));
}

TEST_CASE("phrase matching respects word boundaries") {
    CHECK(contains_phrase("i use grub2 daily", "grub2"));
    CHECK_FALSE(contains_phrase("i use grub2x daily", "grub2"));
    CHECK(contains_phrase("c++ rocks", "c++"));
    CHECK(contains_phrase("(boot)", "boot"));
    CHECK_FALSE(contains_phrase("reboot", "boot"));
    CHECK_FALSE(contains_phrase("caf\xC3\xA9", "caf"));
    CHECK(tags_overlap_text({"dual-boot"}, "my dual boot setup", MatchMode::EMM));
    CHECK_FALSE(tags_overlap_text({"dual-boot"}, "my dual boot setup", MatchMode::EMS));
    CHECK(tags_overlap_text({"dual-boot"}, "my dual-boot setup", MatchMode::EMM));
    CHECK(overlap_normal_form("  Dual\n  BOOT ") == "dual boot");
}

TEST_CASE("tag-post overlap equals a naive scan per scope") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto c = random_corpus(seed, {.questions = 80});
        const auto table = tag_post_overlap_table(c);
        std::array<std::array<double, 2>, 3> hits{};
        for (const auto& q : c.questions()) {
            std::string answers;
            for (const auto* a : c.answers_of(q.id)) answers += ingest::strip_html(a->body) + "\n";
            const std::array<std::string, 3> texts{overlap_normal_form(q.title),
                                                   overlap_normal_form(ingest::strip_html(q.body)),
                                                   overlap_normal_form(answers)};
            for (int mode = 0; mode < 2; ++mode) {
                bool any = false;
                for (int scope = 0; scope < 3; ++scope) {
                    for (const auto& t : q.tags) {
                        const bool multi = t.find('-') != std::string::npos;
                        if (mode == 0 && multi) continue;
                        auto spaced = t;
                        std::replace(spaced.begin(), spaced.end(), '-', ' ');
                        any = any || oracle_contains(texts[scope], t) ||
                              (mode == 1 && oracle_contains(texts[scope], spaced));
                    }
                    if (any) hits[scope][mode] += 1;
                }
            }
        }
        for (int s = 0; s < 3; ++s) {
            for (int m = 0; m < 2; ++m) CHECK(table[s][m] == doctest::Approx(100.0 * hits[s][m] / 80));
            CHECK(table[s][0] <= table[s][1] + 1e-12);
            if (s > 0) CHECK(table[s - 1][1] <= table[s][1] + 1e-12);
        }
        CHECK(tag_post_overlap(c, OverlapScope::TitleBody, MatchMode::EMM) == doctest::Approx(table[1][1]));
    }
}

TEST_CASE("co-occurrence counts equal a pairwise recount") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto c = random_corpus(seed, {.questions = 120, .tags = 15});
        const auto table = build_cooccurrence(c);
        std::map<std::pair<std::string, std::string>, std::uint64_t> pairs, orders;
        for (const auto& q : c.questions()) {
            for (std::size_t i = 0; i < q.tags.size(); ++i) {
                for (std::size_t j = i + 1; j < q.tags.size(); ++j) {
                    ++pairs[std::minmax(q.tags[i], q.tags[j])];
                    ++orders[{q.tags[i], q.tags[j]}];
                }
            }
        }
        CHECK(table.distinct_pairs() == pairs.size());
        for (const auto& [p, n] : pairs) {
            CHECK(table.pair_count(p.first, p.second) == n);
            CHECK(table.pair_count(p.second, p.first) == n);
            const auto fwd = orders.contains(p) ? orders[p] : 0;
            const auto bwd = orders.contains({p.second, p.first}) ? orders[{p.second, p.first}] : 0;
            CHECK(table.order_count(p.first, p.second) == fwd);
            CHECK(fwd + bwd == n);
        }
        std::size_t seen = 0;
        table.for_each_pair([&](const std::string& a, const std::string& b, std::uint64_t n,
                                std::uint64_t ab, std::uint64_t ba) {
            CHECK(n == ab + ba);
            CHECK(pairs[std::minmax(a, b)] == n);
            ++seen;
        });
        CHECK(seen == pairs.size());
        const auto ranked = table.ranked_pairs();
        for (std::size_t i = 1; i < ranked.size(); ++i) {
            const auto& x = ranked[i - 1];
            const auto& y = ranked[i];
            CHECK((x.count > y.count || (x.count == y.count && std::tie(x.first, x.second) < std::tie(y.first, y.second))));
        }
    }
}

TEST_CASE("pair coverage and ordering preference") {
    std::vector<ingest::Post> posts;
    ingest::PostId id = 1;
    for (int i = 0; i < 6; ++i) posts.push_back(question(id++, {"boot", "grub2"}));
    for (int i = 0; i < 2; ++i) posts.push_back(question(id++, {"grub2", "boot"}));
    posts.push_back(question(id++, {"bash"}));
    posts.push_back(question(id++, {"bash", "boot", "apt"}));
    const auto c = ingest::build_corpus(posts, "d");
    const auto table = build_cooccurrence(c);
    const auto qs = all_questions(c);
    const auto pc = pair_post_coverage(table, qs, 1);
    CHECK(pc.coverage == doctest::Approx(80));
    CHECK(pc.single_tag == doctest::Approx(10));
    CHECK(pair_post_coverage(table, qs, 100).coverage == doctest::Approx(90));
    const auto pref = ordering_preference(table, "boot", "grub2");
    CHECK(pref.forward == 6);
    CHECK(pref.backward == 2);
    CHECK(pref.dominant_pct == doctest::Approx(75));
    CHECK(ordering_preference(table, "grub2", "boot").forward == 2);
    CHECK_THROWS_AS(ordering_preference(table, "bash", "grub2"), LookupError);
    CHECK_THROWS_AS(ordering_preference(table, "nope", "boot"), LookupError);
    CHECK(table.pair_count("bash", "grub2") == 0);
    CHECK_THROWS_AS(pair_post_coverage(table, qs, 0), UserError);
}

TEST_CASE("positional profiles and phi normalisation on random corpora") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto c = random_corpus(seed, {.questions = 60, .tags = 20});
        const auto qs = all_questions(c);
        const auto f = build_tag_frequency(c);
        const auto profiles = all_positional_profiles(qs);
        CHECK(profiles.size() == f.size());
        for (const auto& p : profiles) {
            double sum = 0;
            for (std::size_t x = 0; x < 5; ++x) {
                CHECK(p.phi[x] >= 0);
                CHECK(p.phi[x] <= 100);
                sum += p.phi[x];
            }
            CHECK(sum == doctest::Approx(100).epsilon(1e-12));
            CHECK(p.total() == f.count(p.tag));
            std::array<std::uint64_t, 5> oracle{};
            for (const auto& q : c.questions())
                for (std::size_t x = 0; x < q.tags.size(); ++x)
                    if (q.tags[x] == p.tag) ++oracle[x];
            CHECK(oracle == p.position_counts);
        }
        CHECK(std::is_sorted(profiles.begin(), profiles.end(),
                             [](const auto& a, const auto& b) { return a.tag < b.tag; }));
    }
    const auto c = random_corpus(1);
    CHECK_THROWS_AS(positional_profile(all_questions(c), "absent"), LookupError);
}

TEST_CASE("stability membership equals an integer oracle and nests by delta") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto c = random_corpus(seed, {.questions = 80, .tags = 25, .max_tags_per_post = 3});
        const auto qs = all_questions(c);
        std::map<double, std::map<analytics::PositionSet, std::vector<std::string>>> by_delta;
        for (int delta : {80, 90, 99}) {
            const auto r = stability_report(qs, {{1, 2}, {3, 4, 5}}, delta);
            for (const auto& set : r.position_sets) {
                std::vector<std::string> oracle;
                for (const auto& p : all_positional_profiles(qs)) {
                    std::uint64_t in = 0;
                    for (int x : set) in += p.position_counts[static_cast<std::size_t>(x - 1)];
                    if (in * 100 >= static_cast<std::uint64_t>(delta) * p.total()) oracle.push_back(p.tag);
                }
                CHECK(r.q_sets.at(set) == oracle);
                CHECK(r.st.at(set) == doctest::Approx(100.0 * static_cast<double>(oracle.size()) /
                                                      static_cast<double>(r.universe)));
            }
            by_delta[delta] = r.q_sets;
        }
        for (const auto& set : {analytics::PositionSet{1, 2}, analytics::PositionSet{3, 4, 5}}) {
            const auto& a = by_delta[99][set];
            const auto& b = by_delta[90][set];
            const auto& d = by_delta[80][set];
            CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
            CHECK(std::includes(d.begin(), d.end(), b.begin(), b.end()));
        }
    }
}

TEST_CASE("stability boundary is exact and inputs are validated") {
    std::vector<ingest::Post> posts;
    ingest::PostId id = 1;
    for (int i = 0; i < 99; ++i) posts.push_back(question(id++, {"meta", "x" + std::to_string(i)}));
    posts.push_back(question(id++, {"y", "z", "meta"}));
    const auto c = ingest::build_corpus(posts, "d");
    const auto qs = all_questions(c);
    const auto r = stability_report(qs, {{1, 2}, {3, 4, 5}}, 99);
    const auto& stable = r.q_sets.at({1, 2});
    CHECK(std::binary_search(stable.begin(), stable.end(), "meta"));
    const auto r2 = stability_report(qs, {{1}}, 99.5);
    CHECK_FALSE(std::binary_search(r2.q_sets.at({1}).begin(), r2.q_sets.at({1}).end(), "meta"));

    CHECK_THROWS_AS(stability_report(qs, {{1, 2}, {2, 3}}, 90), UserError);
    CHECK_THROWS_AS(stability_report(qs, {{0}}, 90), UserError);
    CHECK_THROWS_AS(stability_report(qs, {{}}, 90), UserError);
    CHECK_THROWS_AS(stability_report(qs, {{1}}, 0), UserError);
    CHECK_THROWS_AS(stability_report(qs, {{1}}, 101), UserError);

    const auto filtered = stability_report(all_positional_profiles(qs), {{1, 2}}, 99, 50);
    CHECK(filtered.universe == 1);
}
