#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cqatag::ingest {

using PostId = std::int64_t;

enum class PostType { Question = 1, Answer = 2 };

/// StackExchange allows between one and five tags per question.
inline constexpr std::size_t kMaxTagsPerPost = 5;

/// One question or answer row of a Posts.xml dump.
///
/// Questions carry title and tags (in the order the asker entered them);
/// answers carry parent_id and no tags. Text fields hold the raw dump
/// markup; strip_html() is applied by consumers that need plain text.
struct Post {
    PostId id = 0;
    PostType post_type = PostType::Question;
    std::optional<PostId> parent_id;
    std::string title;
    std::string body;
    std::vector<std::string> tags;
    std::optional<std::int64_t> owner_id;
    std::optional<std::string> owner_display_name;
    std::int64_t score = 0;
    std::int64_t view_count = 0;
    std::int64_t answer_count = 0;
    std::optional<PostId> accepted_answer_id;
    std::string creation_date; // ISO-8601 as written in the dump

    bool is_question() const { return post_type == PostType::Question; }
    bool is_answer() const { return post_type == PostType::Answer; }

    /// Stable key identifying the asker: the numeric owner id when present,
    /// otherwise the display name.
    std::string owner_key() const;

    friend bool operator==(const Post&, const Post&) = default;
};

} // namespace cqatag::ingest
