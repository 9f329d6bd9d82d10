#include "cqatag/ingest/posts_reader.hpp"

#include "cqatag/error.hpp"
#include "cqatag/ingest/tag_field.hpp"

#include <charconv>
#include <cstring>
#include <expat.h>
#include <numeric>
#include <string_view>

namespace cqatag::ingest {

const char* to_string(RejectReason reason) {
    switch (reason) {
    case RejectReason::MissingAttribute: return "missing_attribute";
    case RejectReason::BadNumber: return "bad_number";
    case RejectReason::NoOwner: return "no_owner";
    case RejectReason::BadTags: return "bad_tags";
    }
    return "unknown";
}

std::uint64_t RejectsReport::total_rejects() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0},
                           [](std::uint64_t acc, const auto& kv) { return acc + kv.second; });
}

std::string Post::owner_key() const {
    if (owner_id) return std::to_string(*owner_id);
    if (owner_display_name) return "name:" + *owner_display_name;
    return {};
}

struct PostsReader::ParserHandle {
    XML_Parser parser = nullptr;
    ~ParserHandle() {
        if (parser) XML_ParserFree(parser);
    }
};

namespace {

void XMLCALL start_element(void* user, const XML_Char* name, const XML_Char** attrs) {
    static_cast<PostsReader*>(user)->on_start_element(name, attrs);
}

void XMLCALL end_element(void* user, const XML_Char* name) {
    static_cast<PostsReader*>(user)->on_end_element(name);
}

struct RowAttributes {
    std::string_view id, post_type, parent_id, title, body, tags, owner_user_id,
        owner_display_name, score, view_count, answer_count, accepted_answer_id, creation_date;
    bool has_title = false, has_body = false, has_tags = false, has_display_name = false;
};

RowAttributes collect(const char** attrs) {
    RowAttributes r;
    for (std::size_t i = 0; attrs[i]; i += 2) {
        const std::string_view key = attrs[i];
        const std::string_view value = attrs[i + 1];
        if (key == "Id") r.id = value;
        else if (key == "PostTypeId") r.post_type = value;
        else if (key == "ParentId") r.parent_id = value;
        else if (key == "Title") r.title = value, r.has_title = true;
        else if (key == "Body") r.body = value, r.has_body = true;
        else if (key == "Tags") r.tags = value, r.has_tags = true;
        else if (key == "OwnerUserId") r.owner_user_id = value;
        else if (key == "OwnerDisplayName") r.owner_display_name = value, r.has_display_name = true;
        else if (key == "Score") r.score = value;
        else if (key == "ViewCount") r.view_count = value;
        else if (key == "AnswerCount") r.answer_count = value;
        else if (key == "AcceptedAnswerId") r.accepted_answer_id = value;
        else if (key == "CreationDate") r.creation_date = value;
    }
    return r;
}

bool parse_int(std::string_view s, std::int64_t& out) {
    if (s.empty()) return false;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

} // namespace

PostsReader::PostsReader(std::istream& source, std::size_t chunk_size)
    : source_(source), parser_(std::make_unique<ParserHandle>()), buffer_(chunk_size) {
    parser_->parser = XML_ParserCreate("UTF-8");
    if (!parser_->parser) throw Error("could not allocate XML parser");
    XML_SetUserData(parser_->parser, this);
    XML_SetElementHandler(parser_->parser, start_element, end_element);
}

PostsReader::~PostsReader() = default;

void PostsReader::reject(std::string id, RejectReason reason, std::string detail) {
    ++report_.counts[reason];
    if (report_.samples.size() < kMaxRejectSamples) {
        report_.samples.push_back({std::move(id), reason, std::move(detail)});
    }
}

void PostsReader::on_start_element(const char* name, const char** attributes) {
    ++depth_;
    // Rows are the children of the document element.
    if (depth_ != 2 || std::strcmp(name, "row") != 0) return;
    ++report_.rows_seen;

    const RowAttributes a = collect(attributes);
    const std::string raw_id(a.id);
    if (a.id.empty() || a.post_type.empty()) {
        reject(raw_id, RejectReason::MissingAttribute, "Id/PostTypeId");
        return;
    }
    Post post;
    std::int64_t type = 0;
    if (!parse_int(a.id, post.id) || !parse_int(a.post_type, type)) {
        reject(raw_id, RejectReason::BadNumber, "Id/PostTypeId");
        return;
    }
    if (type != 1 && type != 2) {
        ++report_.other_type_rows;
        return;
    }
    post.post_type = static_cast<PostType>(type);

    if (post.is_question() && (!a.has_title || !a.has_tags)) {
        reject(raw_id, RejectReason::MissingAttribute, "question without Title/Tags");
        return;
    }
    if (post.is_answer() && a.parent_id.empty()) {
        reject(raw_id, RejectReason::MissingAttribute, "answer without ParentId");
        return;
    }

    auto optional_int = [&](std::string_view s, const char* field,
                            std::optional<std::int64_t>& out) {
        if (s.empty()) return true;
        std::int64_t v = 0;
        if (!parse_int(s, v)) {
            reject(raw_id, RejectReason::BadNumber, field);
            return false;
        }
        out = v;
        return true;
    };
    auto counter = [&](std::string_view s, const char* field, std::int64_t& out) {
        std::optional<std::int64_t> v;
        if (!optional_int(s, field, v)) return false;
        out = v.value_or(0);
        return true;
    };

    std::optional<std::int64_t> parent;
    if (!optional_int(a.parent_id, "ParentId", parent)) return;
    if (post.is_answer()) post.parent_id = parent;
    if (!optional_int(a.owner_user_id, "OwnerUserId", post.owner_id)) return;
    if (!counter(a.score, "Score", post.score)) return;
    if (!counter(a.view_count, "ViewCount", post.view_count)) return;
    if (!counter(a.answer_count, "AnswerCount", post.answer_count)) return;
    if (!optional_int(a.accepted_answer_id, "AcceptedAnswerId", post.accepted_answer_id)) return;

    if (a.has_display_name && !a.owner_display_name.empty()) {
        post.owner_display_name = std::string(a.owner_display_name);
    }
    if (!post.owner_id && !post.owner_display_name) {
        reject(raw_id, RejectReason::NoOwner, "no OwnerUserId or OwnerDisplayName");
        return;
    }

    if (post.is_question()) {
        try {
            post.tags = parse_tag_field(a.tags, post.id);
        } catch (const TagFieldError& e) {
            reject(raw_id, RejectReason::BadTags, e.what());
            return;
        }
        post.title = std::string(a.title);
    }
    post.body = std::string(a.body);
    post.creation_date = std::string(a.creation_date);

    queue_.push_back(std::move(post));
    peak_queued_ = std::max(peak_queued_, queue_.size());
}

void PostsReader::on_end_element(const char*) { --depth_; }

bool PostsReader::feed_chunk() {
    if (finished_) return false;
    source_.read(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
    const auto got = source_.gcount();
    const bool last = got < static_cast<std::streamsize>(buffer_.size());
    if (source_.bad()) throw Error("I/O error while reading posts");
    if (XML_Parse(parser_->parser, buffer_.data(), static_cast<int>(got), last ? 1 : 0) ==
        XML_STATUS_ERROR) {
        const auto code = XML_GetErrorCode(parser_->parser);
        throw ParseError(std::string("malformed posts XML: ") + XML_ErrorString(code),
                         static_cast<std::int64_t>(XML_GetCurrentByteIndex(parser_->parser)));
    }
    finished_ = last;
    return true;
}

std::optional<Post> PostsReader::next() {
    while (queue_.empty()) {
        if (!feed_chunk()) return std::nullopt;
    }
    Post post = std::move(queue_.front());
    queue_.pop_front();
    ++report_.posts_yielded;
    return post;
}

std::vector<Post> read_all_posts(std::istream& source, RejectsReport* report) {
    PostsReader reader(source);
    std::vector<Post> posts;
    while (auto p = reader.next()) posts.push_back(std::move(*p));
    if (report) *report = reader.rejects();
    return posts;
}

} // namespace cqatag::ingest
