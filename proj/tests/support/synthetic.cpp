#include "synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

namespace testsupport {

namespace fs = std::filesystem;

std::vector<std::string> tag_pool(const CorpusShape& shape) {
    std::vector<std::string> pool;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0, 1);
    for (std::size_t i = 0; i < shape.tags; ++i) {
        std::string t = "t" + std::to_string(i);
        if (u(rng) < shape.multiword_share) t += "-w" + std::to_string(i % 7);
        pool.push_back(t);
    }
    return pool;
}

Post question(cqatag::ingest::PostId id, std::vector<std::string> tags, std::int64_t owner) {
    Post p;
    p.id = id;
    p.post_type = cqatag::ingest::PostType::Question;
    p.title = "question " + std::to_string(id);
    p.body = "<p>body of " + std::to_string(id) + "</p>";
    p.tags = std::move(tags);
    p.owner_id = owner;
    p.creation_date = "2020-01-01T00:00:00.000";
    return p;
}

Post answer(cqatag::ingest::PostId id, cqatag::ingest::PostId parent, std::int64_t owner) {
    Post p;
    p.id = id;
    p.post_type = cqatag::ingest::PostType::Answer;
    p.parent_id = parent;
    p.body = "<p>answer " + std::to_string(id) + "</p>";
    p.owner_id = owner;
    p.creation_date = "2020-01-02T00:00:00.000";
    return p;
}

std::vector<Post> random_posts(const CorpusShape& shape, std::uint64_t seed) {
    const auto pool = tag_pool(shape);
    std::vector<double> weights(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
        weights[i] = 1.0 / std::pow(static_cast<double>(i + 1), shape.zipf_exponent);
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<std::size_t> n_tags(1, std::min(shape.max_tags_per_post, pool.size()));
    std::uniform_int_distribution<std::int64_t> asker(1, static_cast<std::int64_t>(shape.askers));
    std::poisson_distribution<int> answers(shape.answer_rate);
    const char* words[] = {"how", "do", "i", "fix", "the", "error", "when", "using", "my", "setup"};

    std::vector<Post> posts;
    cqatag::ingest::PostId next_id = 1;
    std::vector<cqatag::ingest::PostId> question_ids;
    for (std::size_t q = 0; q < shape.questions; ++q) {
        const auto want = n_tags(rng);
        std::vector<double> w = weights;
        std::vector<std::string> tags;
        while (tags.size() < want) {
            std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
            const auto i = pick(rng);
            tags.push_back(pool[i]);
            w[i] = 0;
        }
        Post p = question(next_id++, tags, asker(rng));
        std::string title;
        for (int i = 0; i < 5; ++i) title += std::string(words[rng() % 10]) + " ";
        if (u(rng) < 0.4) title += tags.front();
        p.title = title;
        std::string body = "<p>";
        for (int i = 0; i < 12; ++i) body += std::string(words[rng() % 10]) + " ";
        if (u(rng) < 0.3) {
            auto spaced = tags.back();
            std::replace(spaced.begin(), spaced.end(), '-', ' ');
            body += spaced;
        }
        body += " &amp; <code>x &lt; y</code></p>";
        p.body = body;
        p.score = static_cast<std::int64_t>(rng() % 5) - 1;
        p.view_count = static_cast<std::int64_t>(rng() % 400);
        p.answer_count = 0;
        posts.push_back(std::move(p));
        question_ids.push_back(posts.back().id);
    }
    for (auto qid : question_ids) {
        const int n = answers(rng);
        const auto qi = static_cast<std::size_t>(qid - 1);
        const auto tags = posts[qi].tags;
        posts[qi].answer_count = n;
        for (int a = 0; a < n; ++a) {
            Post ans = answer(next_id++, qid, asker(rng));
            if (u(rng) < 0.5) ans.body = "<p>try " + tags[rng() % tags.size()] + " settings</p>";
            if (a == 0 && u(rng) < 0.5) posts[qi].accepted_answer_id = ans.id;
            posts.push_back(std::move(ans));
        }
    }
    return posts;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\n': out += "&#xA;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string to_posts_xml(const std::vector<Post>& posts) {
    std::string xml = "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n<posts>\n";
    for (const auto& p : posts) {
        xml += "  <row Id=\"" + std::to_string(p.id) + "\" PostTypeId=\"" +
               std::to_string(static_cast<int>(p.post_type)) + "\"";
        if (p.parent_id) xml += " ParentId=\"" + std::to_string(*p.parent_id) + "\"";
        if (p.accepted_answer_id) xml += " AcceptedAnswerId=\"" + std::to_string(*p.accepted_answer_id) + "\"";
        xml += " CreationDate=\"" + p.creation_date + "\"";
        xml += " Score=\"" + std::to_string(p.score) + "\"";
        if (p.is_question()) xml += " ViewCount=\"" + std::to_string(p.view_count) + "\"";
        xml += " Body=\"" + xml_escape(p.body) + "\"";
        if (p.owner_id) xml += " OwnerUserId=\"" + std::to_string(*p.owner_id) + "\"";
        if (p.owner_display_name) xml += " OwnerDisplayName=\"" + xml_escape(*p.owner_display_name) + "\"";
        if (p.is_question()) {
            xml += " Title=\"" + xml_escape(p.title) + "\"";
            std::string tags;
            for (const auto& t : p.tags) tags += "<" + t + ">";
            xml += " Tags=\"" + xml_escape(tags) + "\"";
            xml += " AnswerCount=\"" + std::to_string(p.answer_count) + "\"";
        }
        xml += " />\n";
    }
    return xml + "</posts>\n";
}

TempDir::TempDir(const std::string& prefix) {
    static std::mt19937_64 rng(std::random_device{}());
    for (int attempt = 0; attempt < 100; ++attempt) {
        auto p = fs::temp_directory_path() / (prefix + "-" + std::to_string(rng() % 1000000000));
        if (fs::create_directory(p)) {
            path_ = p;
            return;
        }
    }
    throw std::runtime_error("cannot create a temporary directory");
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

void write_text(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << text;
}

} // namespace testsupport
