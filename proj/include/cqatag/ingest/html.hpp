#pragma once

#include <string>
#include <string_view>

namespace cqatag::ingest {

/// Decodes named (&amp; &lt; ...) and numeric (&#38; &#x26;) character
/// references. Unknown or unterminated references are copied verbatim.
std::string decode_entities(std::string_view text);

/// Removes markup from a post body, keeping visible text.
///
/// Element tags, comments and <script>/<style> contents are dropped; block
/// elements (p, div, pre, li, br, headings, ...) become line breaks so words
/// from adjacent blocks never fuse. Code blocks keep their text. Entities are
/// decoded after markup removal, so "&lt;b&gt;" survives as the literal "<b>".
/// The result is trimmed. Never fails: unterminated markup is treated as text.
std::string strip_html(std::string_view html);

/// Collapses every run of whitespace into one space and trims both ends.
std::string normalize_whitespace(std::string_view text);

} // namespace cqatag::ingest
