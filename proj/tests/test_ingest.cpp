#include "cqatag/error.hpp"
#include "cqatag/ingest/corpus.hpp"
#include "cqatag/ingest/corpus_io.hpp"
#include "cqatag/ingest/html.hpp"
#include "cqatag/ingest/posts_reader.hpp"
#include "cqatag/ingest/split.hpp"
#include "cqatag/ingest/tag_field.hpp"
#include "synthetic.hpp"

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

using namespace cqatag;
using namespace cqatag::ingest;

namespace {

std::vector<Post> read_fixture(RejectsReport* report = nullptr) {
    std::ifstream in(std::string(CQATAG_FIXTURE_DIR) + "/small_posts.xml");
    REQUIRE(in);
    return read_all_posts(in, report);
}

} // namespace

TEST_CASE("html entities decode to utf-8") {
    CHECK(decode_entities("a &amp; b &lt;c&gt;") == "a & b <c>");
    CHECK(decode_entities("&#233;&#x263A;") == "\xC3\xA9\xE2\x98\xBA");
    CHECK(decode_entities("&bogus; & &#;") == "&bogus; & &#;");
    CHECK(decode_entities("&nbsp;") == "\xC2\xA0");
}

TEST_CASE("strip_html removes markup but keeps prose") {
    CHECK(strip_html("<p>Hello <b>world</b></p>") == "Hello world");
    CHECK(strip_html("if a < b then") == "if a < b then");
    CHECK(strip_html("<script>var x = '<p>';</script>after") == "after");
    CHECK(strip_html("x<!-- hidden -->y") == "xy");
    CHECK(strip_html("<p>one</p><p>two</p>") == "one\n\ntwo");
    CHECK(strip_html("<code>a &lt; b</code>") == "a < b");
    CHECK(normalize_whitespace("  a \n\t b  ") == "a b");
}

TEST_CASE("tag field parsing") {
    CHECK(parse_tag_field("<boot><grub2>") == std::vector<std::string>{"boot", "grub2"});
    CHECK(parse_tag_field("&lt;c++&gt;&lt;Dual-Boot&gt;") == std::vector<std::string>{"c++", "dual-boot"});
    CHECK_THROWS_AS(parse_tag_field("<boot><boot>"), TagFieldError);
    CHECK_THROWS_AS(parse_tag_field("<boot"), TagFieldError);
    CHECK_THROWS_AS(parse_tag_field("boot"), TagFieldError);
    CHECK_THROWS_AS(parse_tag_field(""), TagFieldError);
    CHECK_THROWS_AS(parse_tag_field("<>"), TagFieldError);
    CHECK_THROWS_AS(parse_tag_field("<a b>"), TagFieldError);
    CHECK_THROWS_AS(parse_tag_field("<a><b><c><d><e><f>"), TagFieldError);
    try {
        parse_tag_field("<x><x>", 42);
        FAIL("expected TagFieldError");
    } catch (const TagFieldError& e) {
        CHECK(e.post_id() == 42);
    }
}

TEST_CASE("reader keeps valid rows and accounts for every other row") {
    RejectsReport report;
    const auto posts = read_fixture(&report);
    std::set<PostId> ids;
    for (const auto& p : posts) ids.insert(p.id);
    CHECK(ids == std::set<PostId>{1, 2, 3, 4, 8, 9, 10});
    CHECK(report.rows_seen == 12);
    CHECK(report.posts_yielded == 7);
    CHECK(report.other_type_rows == 1);
    CHECK(report.total_rejects() == 4);
    CHECK(report.counts.at(RejectReason::NoOwner) == 1);
    CHECK(report.counts.at(RejectReason::BadTags) == 1);
    CHECK(report.counts.at(RejectReason::BadNumber) == 1);
    CHECK(report.counts.at(RejectReason::MissingAttribute) == 1);
    CHECK(report.rows_seen ==
          report.posts_yielded + report.other_type_rows + report.total_rejects());

    const auto& q1 = posts.front();
    CHECK(q1.is_question());
    CHECK(q1.tags == std::vector<std::string>{"boot", "grub2", "dual-boot"});
    CHECK(q1.accepted_answer_id == 3);
    CHECK(q1.view_count == 1200);
    CHECK(q1.body.find("<b>boot</b>") != std::string::npos);

    const auto q9 = *std::find_if(posts.begin(), posts.end(), [](const Post& p) { return p.id == 9; });
    CHECK(q9.owner_display_name == std::optional<std::string>("anon"));
    CHECK(q9.owner_key() == "name:anon");
    CHECK(q9.title == "Wi-Fi & drivers");
}

TEST_CASE("malformed xml reports the byte offset") {
    std::istringstream in("<posts><row Id=\"1\" PostTypeId=\"1\" <broken></posts>");
    try {
        read_all_posts(in);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.byte_offset() > 0);
        CHECK(e.byte_offset() < 60);
    }
}

TEST_CASE("streaming keeps only one chunk of rows in memory") {
    const auto posts = testsupport::random_posts({.questions = 300}, 3);
    const auto one = testsupport::to_posts_xml(posts);
    // Ten copies of the rows inside one document.
    const auto head = one.find("<row");
    const auto tail = one.rfind("</posts>");
    std::string rows = one.substr(head, tail - head);
    std::string big = one.substr(0, head);
    for (int i = 0; i < 10; ++i) big += rows;
    big += "</posts>\n";

    std::istringstream small_in(one), big_in(big);
    PostsReader small_reader(small_in, 4096), big_reader(big_in, 4096);
    std::size_t n_small = 0, n_big = 0;
    while (small_reader.next()) ++n_small;
    while (big_reader.next()) ++n_big;
    CHECK(n_big == 10 * n_small);
    CHECK(big_reader.peak_queued_rows() <= small_reader.peak_queued_rows() + 1);
    CHECK(big_reader.peak_queued_rows() < 64);
}

TEST_CASE("xml round trip reproduces generated posts") {
    const auto posts = testsupport::random_posts({.questions = 120}, 11);
    std::istringstream in(testsupport::to_posts_xml(posts));
    RejectsReport report;
    const auto back = read_all_posts(in, &report);
    CHECK(report.total_rejects() == 0);
    REQUIRE(back.size() == posts.size());
    for (std::size_t i = 0; i < posts.size(); ++i) CHECK(back[i] == posts[i]);
}

TEST_CASE("corpus links answers and flags orphans") {
    const auto corpus = build_corpus(read_fixture(), "fixture");
    CHECK(corpus.questions().size() == 3);
    CHECK(corpus.answers().size() == 4);
    CHECK(corpus.answers_of(1).size() == 2);
    CHECK(corpus.answers_of(2).empty());
    CHECK(corpus.orphan_count() == 1);
    CHECK(corpus.question_index(9) == 2);
    CHECK(corpus.question_index(3) == DomainCorpus::npos);
    const auto picked = corpus.select_questions({9, 1});
    REQUIRE(picked.size() == 2);
    CHECK(picked[0]->id == 1);

    std::vector<Post> dup{testsupport::question(1, {"a"}), testsupport::question(1, {"b"})};
    CHECK_THROWS_AS(build_corpus(dup, "x"), UserError);
}

TEST_CASE("corpus jsonl round trip") {
    const auto posts = testsupport::random_posts({.questions = 50}, 5);
    std::stringstream buf;
    write_posts(buf, posts);
    CHECK(read_posts(buf) == posts);
}

TEST_CASE("split sizes use largest remainder") {
    CHECK(allocate_split_sizes(100, {}) == std::array<std::size_t, 3>{70, 10, 20});
    CHECK(allocate_split_sizes(10, {}) == std::array<std::size_t, 3>{7, 1, 2});
    CHECK(allocate_split_sizes(11, {}) == std::array<std::size_t, 3>{8, 1, 2});
    CHECK(allocate_split_sizes(13, {}) == std::array<std::size_t, 3>{9, 1, 3});
    CHECK_THROWS_AS(allocate_split_sizes(10, {0.5, 0.5, 0.5}), UserError);
}

TEST_CASE("split is a seeded partition") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::size_t n = 10 + seed * 37;
        std::vector<PostId> ids;
        for (std::size_t i = 0; i < n; ++i) ids.push_back(static_cast<PostId>(i * 3 + 1));
        auto shuffled = ids;
        std::reverse(shuffled.begin(), shuffled.end());
        const auto a = split_ids(ids, {}, seed);
        const auto b = split_ids(shuffled, {}, seed);
        CHECK(a == b);
        std::vector<PostId> all;
        for (const auto* part : {&a.train, &a.dev, &a.test}) {
            CHECK(std::is_sorted(part->begin(), part->end()));
            all.insert(all.end(), part->begin(), part->end());
        }
        std::sort(all.begin(), all.end());
        CHECK(all == ids);
        const auto sizes = allocate_split_sizes(n, {});
        CHECK(a.train.size() == sizes[0]);
        CHECK(a.dev.size() == sizes[1]);
        CHECK(a.test.size() == sizes[2]);
    }
    std::vector<PostId> ids(200);
    std::iota(ids.begin(), ids.end(), PostId{1});
    CHECK_FALSE(split_ids(ids, {}, 1) == split_ids(ids, {}, 2));
    CHECK_THROWS_AS(split_ids({1, 2, 3}, {}, 0), UserError);
}

TEST_CASE("portable shuffle is pinned") {
    std::vector<PostId> ids{1, 2, 3, 4, 5, 6, 7, 8};
    portable_shuffle(ids, 42);
    auto again = std::vector<PostId>{1, 2, 3, 4, 5, 6, 7, 8};
    portable_shuffle(again, 42);
    CHECK(ids == again);
    auto sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<PostId>{1, 2, 3, 4, 5, 6, 7, 8});
}

TEST_CASE("split manifest round trip") {
    std::vector<PostId> ids(30);
    std::iota(ids.begin(), ids.end(), PostId{100});
    const auto s = split_ids(ids, {}, 9);
    const auto j = split_to_json(s);
    CHECK(j.at("prng") == kSplitPrng);
    CHECK(split_from_json(j) == s);
}
