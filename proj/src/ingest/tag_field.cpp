#include "cqatag/ingest/tag_field.hpp"

#include "cqatag/error.hpp"
#include "cqatag/ingest/html.hpp"

#include <algorithm>
#include <cctype>

namespace cqatag::ingest {

std::vector<std::string> parse_tag_field(std::string_view raw, PostId post_id) {
    const std::string decoded = decode_entities(raw);
    std::vector<std::string> tags;
    std::size_t i = 0;
    while (i < decoded.size()) {
        const char c = decoded[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c != '<') {
            throw TagFieldError("unexpected character outside brackets in tag field", post_id);
        }
        const auto close = decoded.find('>', i + 1);
        const auto reopen = decoded.find('<', i + 1);
        if (close == std::string::npos || (reopen != std::string::npos && reopen < close)) {
            throw TagFieldError("unbalanced brackets in tag field \"" + decoded + "\"", post_id);
        }
        std::string tag = decoded.substr(i + 1, close - i - 1);
        std::transform(tag.begin(), tag.end(), tag.begin(),
                       [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
        if (tag.empty() || std::any_of(tag.begin(), tag.end(), [](unsigned char ch) {
                return std::isspace(ch);
            })) {
            throw TagFieldError("empty or blank tag in tag field", post_id);
        }
        if (std::find(tags.begin(), tags.end(), tag) != tags.end()) {
            throw TagFieldError("duplicate tag \"" + tag + "\"", post_id);
        }
        tags.push_back(std::move(tag));
        i = close + 1;
    }
    if (tags.empty()) throw TagFieldError("question has no tags", post_id);
    if (tags.size() > kMaxTagsPerPost) {
        throw TagFieldError("question has " + std::to_string(tags.size()) + " tags (max 5)",
                            post_id);
    }
    return tags;
}

} // namespace cqatag::ingest
