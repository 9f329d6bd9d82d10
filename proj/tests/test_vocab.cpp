#include "cqatag/analytics/tag_frequency.hpp"
#include "cqatag/error.hpp"
#include "cqatag/vocab/meta_vocab.hpp"
#include "synthetic.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace cqatag;
using testsupport::question;

namespace {

ingest::DomainCorpus random_corpus(std::uint64_t seed, std::size_t tags = 30) {
    return ingest::build_corpus(testsupport::random_posts({.questions = 200, .tags = tags}, seed), "d");
}

// Linear scan: grow the ranked prefix one tag at a time until the covered
// share of posts reaches the target.
std::vector<std::string> oracle_vocab(const analytics::QuestionRefs& qs, double target) {
    std::map<std::string, std::uint64_t> counts;
    for (const auto* q : qs)
        for (const auto& t : q->tags) ++counts[t];
    std::vector<std::pair<std::string, std::uint64_t>> ranked(counts.begin(), counts.end());
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    std::set<std::string> chosen;
    std::vector<std::string> out;
    for (const auto& [tag, n] : ranked) {
        chosen.insert(tag);
        out.push_back(tag);
        std::size_t covered = 0;
        for (const auto* q : qs)
            covered += std::any_of(q->tags.begin(), q->tags.end(), [&](const auto& t) { return chosen.contains(t); });
        if (static_cast<double>(covered) * 100 >= target * static_cast<double>(qs.size())) break;
    }
    return out;
}

} // namespace

TEST_CASE("vocabulary is the minimal covering prefix") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto c = random_corpus(seed);
        const auto qs = analytics::all_questions(c);
        for (double target : {10.0, 50.0, 85.0, 90.0, 95.0, 99.0, 100.0}) {
            const auto v = vocab::build_meta_vocab(qs, target, "d");
            CHECK(v.tags == oracle_vocab(qs, target));
            CHECK(v.achieved_coverage >= target - 1e-9);
            CHECK(v.counts.size() == v.tags.size());
            CHECK(std::is_sorted(v.counts.rbegin(), v.counts.rend()));
        }
    }
}

TEST_CASE("target 100 keeps every post covered and grows monotonically") {
    const auto c = random_corpus(7);
    const auto qs = analytics::all_questions(c);
    const auto full = vocab::build_meta_vocab(qs, 100);
    CHECK(full.achieved_coverage == doctest::Approx(100));
    for (const auto& q : c.questions())
        CHECK(std::any_of(q.tags.begin(), q.tags.end(), [&](const auto& t) { return full.contains(t); }));
    std::size_t previous = 0;
    for (double t = 5; t <= 100; t += 5) {
        const auto v = vocab::build_meta_vocab(qs, t);
        CHECK(v.size() >= previous);
        previous = v.size();
    }
    CHECK(vocab::build_meta_vocab(qs, 85).tags == vocab::build_meta_vocab(qs, 85).tags);
}

TEST_CASE("oov test is the complement of membership") {
    const auto c = random_corpus(3);
    const auto qs = analytics::all_questions(c);
    const auto v = vocab::build_meta_vocab(qs, 80);
    const auto f = analytics::build_tag_frequency(c);
    for (const auto& t : f.ranked) CHECK(vocab::is_oov(t, v) != v.contains(t));
    CHECK(vocab::is_oov("never-seen", v));
}

TEST_CASE("vocabulary json round trip and validation") {
    const auto c = random_corpus(5);
    auto v = vocab::build_meta_vocab(analytics::all_questions(c), 90, "d");
    v.built_from = "sha256:abc";
    const auto j = vocab::vocab_to_json(v);
    const auto back = vocab::vocab_from_json(j);
    CHECK(back.tags == v.tags);
    CHECK(back.counts == v.counts);
    CHECK(back.domain == "d");
    CHECK(back.built_from == "sha256:abc");
    CHECK(back.coverage_target == 90);
    CHECK(back.contains(v.tags.front()));

    auto dup = j;
    dup["tags"].push_back(v.tags.front());
    if (dup.contains("counts")) dup["counts"].push_back(1);
    CHECK_THROWS(vocab::vocab_from_json(dup));
}

TEST_CASE("invalid vocabulary inputs are rejected") {
    CHECK_THROWS_AS(vocab::build_meta_vocab({}, 90), UserError);
    const auto c = ingest::build_corpus({question(1, {"a"}), question(2, {"b"})}, "d");
    const auto qs = analytics::all_questions(c);
    CHECK_THROWS_AS(vocab::build_meta_vocab(qs, 0), UserError);
    CHECK_THROWS_AS(vocab::build_meta_vocab(qs, 100.5), UserError);
    const auto v = vocab::build_meta_vocab(qs, 50);
    CHECK(v.tags == std::vector<std::string>{"a"});
}
