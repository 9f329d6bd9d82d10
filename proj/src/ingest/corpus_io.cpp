#include "cqatag/ingest/corpus_io.hpp"

#include "cqatag/error.hpp"

#include <string>

namespace cqatag::ingest {

nlohmann::json post_to_json(const Post& p) {
    nlohmann::json j;
    j["id"] = p.id;
    j["post_type"] = p.is_question() ? "question" : "answer";
    if (p.parent_id) j["parent_id"] = *p.parent_id;
    if (p.is_question()) {
        j["title"] = p.title;
        j["tags"] = p.tags;
    }
    j["body"] = p.body;
    if (p.owner_id) j["owner_user_id"] = *p.owner_id;
    if (p.owner_display_name) j["owner_display_name"] = *p.owner_display_name;
    j["score"] = p.score;
    j["view_count"] = p.view_count;
    j["answer_count"] = p.answer_count;
    if (p.accepted_answer_id) j["accepted_answer_id"] = *p.accepted_answer_id;
    j["creation_date"] = p.creation_date;
    return j;
}

Post post_from_json(const nlohmann::json& j) {
    Post p;
    p.id = j.at("id").get<PostId>();
    const auto type = j.at("post_type").get<std::string>();
    if (type == "question") p.post_type = PostType::Question;
    else if (type == "answer") p.post_type = PostType::Answer;
    else throw UserError("unknown post_type \"" + type + "\"");
    if (j.contains("parent_id")) p.parent_id = j["parent_id"].get<PostId>();
    if (p.is_question()) {
        p.title = j.at("title").get<std::string>();
        p.tags = j.at("tags").get<std::vector<std::string>>();
    }
    p.body = j.at("body").get<std::string>();
    if (j.contains("owner_user_id")) p.owner_id = j["owner_user_id"].get<std::int64_t>();
    if (j.contains("owner_display_name")) {
        p.owner_display_name = j["owner_display_name"].get<std::string>();
    }
    p.score = j.value("score", std::int64_t{0});
    p.view_count = j.value("view_count", std::int64_t{0});
    p.answer_count = j.value("answer_count", std::int64_t{0});
    if (j.contains("accepted_answer_id")) {
        p.accepted_answer_id = j["accepted_answer_id"].get<PostId>();
    }
    p.creation_date = j.value("creation_date", std::string{});
    return p;
}

void write_posts(std::ostream& out, const std::vector<Post>& posts) {
    for (const auto& p : posts) out << post_to_json(p).dump() << '\n';
}

std::vector<Post> read_posts(std::istream& in) {
    std::vector<Post> posts;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            posts.push_back(post_from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw UserError("corpus line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return posts;
}

nlohmann::json rejects_to_json(const RejectsReport& r) {
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [reason, n] : r.counts) counts[to_string(reason)] = n;
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& s : r.samples) {
        samples.push_back({{"id", s.id}, {"reason", to_string(s.reason)}, {"detail", s.detail}});
    }
    return {
        {"rows_seen", r.rows_seen},
        {"posts_yielded", r.posts_yielded},
        {"other_type_rows", r.other_type_rows},
        {"total_rejects", r.total_rejects()},
        {"rejects_by_reason", counts},
        {"samples", samples},
    };
}

} // namespace cqatag::ingest
