#pragma once

#include "cqatag/ingest/post.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace cqatag::ingest {

/// Splits a dump Tags attribute ("<boot><grub2>", possibly entity-escaped as
/// "&lt;boot&gt;&lt;grub2&gt;") into tags in document order, lowercased.
///
/// Throws TagFieldError (naming post_id) on unbalanced brackets, stray text
/// between brackets, empty or duplicate tags, no tags at all, or more than
/// kMaxTagsPerPost tags.
std::vector<std::string> parse_tag_field(std::string_view raw, PostId post_id = 0);

} // namespace cqatag::ingest
