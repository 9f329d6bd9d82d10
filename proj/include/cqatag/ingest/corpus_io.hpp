#pragma once

#include "cqatag/ingest/post.hpp"
#include "cqatag/ingest/posts_reader.hpp"

#include <istream>
#include <json.hpp>
#include <ostream>
#include <vector>

namespace cqatag::ingest {

// Corpus files hold one JSON object per line, one line per post, with the
// dump's field names in snake case. Optional fields are omitted when absent.

nlohmann::json post_to_json(const Post& post);
Post post_from_json(const nlohmann::json& j);

void write_posts(std::ostream& out, const std::vector<Post>& posts);
std::vector<Post> read_posts(std::istream& in);

nlohmann::json rejects_to_json(const RejectsReport& report);

} // namespace cqatag::ingest
