#include "cqatag/decoder/assemble.hpp"
#include "cqatag/decoder/token_stream.hpp"
#include "cqatag/error.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

using namespace cqatag;
using namespace cqatag::decoder;
using baselines::Source;

namespace {

StreamToken sep() { return {"<tagsep>", -0.01, TokenKind::Separator}; }
StreamToken tok(std::string text, double lp = -0.1) {
    const auto kind = classify_token(text);
    return {std::move(text), lp, kind};
}

std::vector<std::string> texts(const std::vector<RefinedTag>& tags) {
    std::vector<std::string> out;
    for (const auto& t : tags) out.push_back(t.text);
    return out;
}

// Two-pass reference: cut the stream into closed segments, then build each tag.
std::vector<RefinedTag> oracle_assemble(const TokenStream& s) {
    std::vector<std::size_t> seps;
    for (std::size_t i = 0; i < s.tokens.size(); ++i)
        if (s.tokens[i].kind == TokenKind::Separator) seps.push_back(i);
    std::vector<RefinedTag> out;
    for (std::size_t k = 1; k < seps.size(); ++k) {
        std::string text;
        double sum = 0;
        std::size_t n = 0;
        for (std::size_t i = seps[k - 1] + 1; i < seps[k]; ++i) {
            const auto& t = s.tokens[i];
            if (t.kind == TokenKind::Punctuation) continue;
            std::string piece;
            for (char c : t.text)
                if (c != ' ' && c != '\t' && c != '\n') piece += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            bool punct = true;
            for (char c : piece) punct = punct && !std::isalnum(static_cast<unsigned char>(c)) && c != '-';
            if (punct) continue;
            text += piece;
            sum += t.log_prob;
            ++n;
        }
        if (n == 0 || text.front() == '-' || text.back() == '-') continue;
        if (!out.empty() && out.back().text == text) continue;
        out.push_back({text, n, std::exp(sum / static_cast<double>(n))});
    }
    return out;
}

TokenStream random_stream(std::mt19937_64& rng) {
    static const std::vector<std::string> pieces{"visa", "-", "refusals", "boot", "Grub", "2", ",",
                                                 ".", "-x", "x-", " ub ", "untu", "!!"};
    TokenStream s;
    s.post_id = static_cast<ingest::PostId>(rng() % 1000);
    const auto len = rng() % 16;
    std::uniform_real_distribution<double> lp(-5.0, 0.0);
    for (std::size_t i = 0; i < len; ++i) {
        if (rng() % 4 == 0) s.tokens.push_back({"<tagsep>", lp(rng), TokenKind::Separator});
        else s.tokens.push_back(tok(pieces[rng() % pieces.size()], lp(rng)));
    }
    return s;
}

} // namespace

TEST_CASE("token classification") {
    CHECK(is_punctuation_text(","));
    CHECK(is_punctuation_text(""));
    CHECK(is_punctuation_text("?!"));
    CHECK_FALSE(is_punctuation_text("-"));
    CHECK_FALSE(is_punctuation_text("a,"));
    CHECK_FALSE(is_punctuation_text("\xC3\xA9"));
    CHECK(classify_token(".") == TokenKind::Punctuation);
    CHECK(classify_token("-ing") == TokenKind::TagToken);
}

TEST_CASE("assembly of separator-delimited tags") {
    CHECK(assemble_tags({1, {}}).empty());
    CHECK(assemble_tags({1, {sep(), tok("visa")}}).empty());

    const TokenStream visa{1, {sep(), tok("visa", std::log(0.8)), tok("-refusals", std::log(0.2)), sep()}};
    const auto v = assemble_tags(visa);
    REQUIRE(v.size() == 1);
    CHECK(v[0].text == "visa-refusals");
    CHECK(v[0].token_count == 2);
    CHECK(v[0].combined_score == doctest::Approx(0.4));

    const TokenStream messy{2, {tok("stray"), sep(), tok("-boot"), sep(), tok("grub"), sep(), tok("Grub"),
                                tok(","), sep(), tok("ubuntu"), tok("-"), sep(), tok(" apt "), sep(), tok("tail")}};
    CHECK(texts(assemble_tags(messy)) == std::vector<std::string>{"grub", "apt"});

    const TokenStream nondup{3, {sep(), tok("a"), sep(), tok("b"), sep(), tok("a"), sep()}};
    CHECK(texts(assemble_tags(nondup)) == std::vector<std::string>{"a", "b", "a"});
}

TEST_CASE("assembly agrees with a two-pass reference on random streams") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 2000; ++i) {
        const auto s = random_stream(rng);
        const auto got = assemble_tags(s);
        const auto want = oracle_assemble(s);
        REQUIRE(got.size() == want.size());
        for (std::size_t k = 0; k < got.size(); ++k) {
            CHECK(got[k].text == want[k].text);
            CHECK(got[k].token_count == want[k].token_count);
            CHECK(got[k].combined_score == doctest::Approx(want[k].combined_score));
            CHECK(got[k].combined_score > 0);
            CHECK(got[k].combined_score <= 1);
            CHECK(got[k].text.find(' ') == std::string::npos);
        }
        const auto again = assemble_tags(tags_to_stream(s.post_id, got));
        REQUIRE(again.size() == got.size());
        for (std::size_t k = 0; k < got.size(); ++k) {
            CHECK(again[k].text == got[k].text);
            CHECK(again[k].combined_score == doctest::Approx(got[k].combined_score));
        }
    }
}

TEST_CASE("top-k refined selection is stable") {
    const std::vector<RefinedTag> tags{{"a", 1, 0.5}, {"b", 1, 0.9}, {"c", 1, 0.5}, {"d", 1, 0.1}};
    CHECK(texts(select_topk_refined(tags, 3)) == std::vector<std::string>{"b", "a", "c"});
    CHECK(texts(select_topk_refined(tags, 1)) == std::vector<std::string>{"b"});
    CHECK(select_topk_refined(tags, 10).size() == 4);
    CHECK(select_topk_refined({}, 3).empty());
}

TEST_CASE("merging meta and refined tags") {
    const MetaPrediction meta{9, {{"a", 0.9}, {"b", 0.7}, {"z", 0.6}}};
    const std::vector<RefinedTag> refined{{"c", 1, 0.8}, {"d", 1, 0.6}, {"e", 1, 0.5}, {"f", 1, 0.4}};
    const auto m = merge_predictions(meta, refined);
    CHECK(m.post_id == 9);
    REQUIRE(m.tags.size() == 5);
    CHECK(m.tags[0] == baselines::ScoredTag{"a", 0.9, Source::PHead});
    CHECK(m.tags[1].tag == "b");
    CHECK(m.tags[2] == baselines::ScoredTag{"c", 0.8, Source::GHead});
    CHECK(m.tags[4].tag == "e");
    CHECK_NOTHROW(baselines::validate(m));

    const std::vector<RefinedTag> with_dup{{"b", 1, 0.95}, {"c", 1, 0.8}, {"d", 1, 0.6}, {"e", 1, 0.5}};
    const auto d = merge_predictions(meta, with_dup);
    CHECK(d.tags.size() == 4);
    CHECK(d.tags[2].tag == "c");
    const auto filled = merge_predictions(meta, with_dup, {2, 3, true});
    REQUIRE(filled.tags.size() == 5);
    CHECK(filled.tags[4].tag == "e");

    CHECK_THROWS_AS(merge_predictions(meta, refined, {3, 3, false}), UserError);
    CHECK(merge_predictions(meta, refined, {5, 0, false}).tags.size() == 3);
    CHECK(merge_predictions({1, {}}, {}).tags.empty());
}

TEST_CASE("decoding pairs inputs by post id") {
    const std::vector<MetaPrediction> metas{{1, {{"a", 0.9}}}, {2, {{"b", 0.5}}}};
    const std::vector<TokenStream> streams{{2, {sep(), tok("x"), sep()}}, {1, {}}};
    const auto out = decode_predictions(metas, streams);
    REQUIRE(out.size() == 2);
    CHECK(out[0].post_id == 1);
    CHECK(out[1].tags.size() == 2);
    try {
        decode_predictions(metas, {{1, {}}, {3, {}}});
        FAIL("expected a mismatch error");
    } catch (const UserError& e) {
        const std::string msg = e.what();
        CHECK(msg.find('2') != std::string::npos);
        CHECK(msg.find('3') != std::string::npos);
    }
    CHECK_THROWS_AS(decode_predictions(metas, {{1, {}}, {1, {}}}), UserError);
}

TEST_CASE("stream and meta files round trip and validate") {
    std::mt19937_64 rng(5);
    std::vector<TokenStream> streams;
    for (int i = 0; i < 20; ++i) streams.push_back(random_stream(rng));
    std::stringstream buf;
    write_token_streams(buf, streams);
    CHECK(read_token_streams(buf) == streams);

    std::stringstream bad_lp(R"({"post_id": 1, "tokens": [["a", 0.5, "tag"]]})");
    CHECK_THROWS_AS(read_token_streams(bad_lp), UserError);
    std::stringstream bad_kind(R"({"post_id": 1, "tokens": [["a", -0.5, "word"]]})");
    CHECK_THROWS_AS(read_token_streams(bad_kind), UserError);

    const std::vector<MetaPrediction> metas{{4, {{"a", 0.9}, {"b", 0.9}, {"c", 0.1}}}, {5, {}}};
    std::stringstream mbuf;
    write_meta_predictions(mbuf, metas);
    CHECK(read_meta_predictions(mbuf) == metas);
    std::stringstream rising(R"({"post_id": 1, "tags": [{"tag": "a", "score": 0.1}, {"tag": "b", "score": 0.2}]})");
    CHECK_THROWS_AS(read_meta_predictions(rising), UserError);
    std::stringstream garbage("{not json");
    CHECK_THROWS_AS(read_meta_predictions(garbage), UserError);
}
