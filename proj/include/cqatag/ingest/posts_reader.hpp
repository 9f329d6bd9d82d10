#pragma once

#include "cqatag/ingest/post.hpp"

#include <cstddef>
#include <cstdint>
#include <deque>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cqatag::ingest {

/// Why a row was dropped by the reader. Rows of other post types (wiki
/// excerpts, moderator nominations, ...) are not rejects; they are counted
/// separately in RejectsReport::other_type_rows.
enum class RejectReason {
    MissingAttribute,
    BadNumber,
    NoOwner,
    BadTags,
};

const char* to_string(RejectReason reason);

struct RejectsReport {
    std::uint64_t rows_seen = 0;
    std::uint64_t posts_yielded = 0;
    std::uint64_t other_type_rows = 0;
    std::map<RejectReason, std::uint64_t> counts;
    /// The first few rejected rows, for diagnostics.
    struct Sample {
        std::string id; // raw Id attribute, may be empty
        RejectReason reason;
        std::string detail;
    };
    std::vector<Sample> samples;

    std::uint64_t total_rejects() const;
};

/// Single-pass streaming reader over a Posts.xml dump.
///
/// The input is fed to expat in fixed-size chunks and rows are handed out
/// one at a time, so memory stays bounded by the chunk size plus the rows
/// decoded from one chunk, independent of file size.
///
///     PostsReader reader(file);
///     while (auto post = reader.next()) { ... }
///
/// Malformed XML raises ParseError with the byte offset of the failure.
class PostsReader {
public:
    static constexpr std::size_t kDefaultChunkSize = 1 << 16;
    static constexpr std::size_t kMaxRejectSamples = 32;

    explicit PostsReader(std::istream& source, std::size_t chunk_size = kDefaultChunkSize);
    ~PostsReader();
    PostsReader(const PostsReader&) = delete;
    PostsReader& operator=(const PostsReader&) = delete;

    std::optional<Post> next();

    const RejectsReport& rejects() const { return report_; }

    /// Largest number of decoded rows ever held at once.
    std::size_t peak_queued_rows() const { return peak_queued_; }

    // Called from the expat callbacks.
    void on_start_element(const char* name, const char** attributes);
    void on_end_element(const char* name);

private:
    bool feed_chunk();
    void reject(std::string id, RejectReason reason, std::string detail);

    struct ParserHandle;
    std::istream& source_;
    std::unique_ptr<ParserHandle> parser_;
    std::vector<char> buffer_;
    std::deque<Post> queue_;
    RejectsReport report_;
    std::size_t peak_queued_ = 0;
    int depth_ = 0;
    bool finished_ = false;
};

/// Convenience wrapper: reads every post of a stream into memory.
std::vector<Post> read_all_posts(std::istream& source, RejectsReport* report = nullptr);

} // namespace cqatag::ingest
