#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cqatag {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input supplied by the caller (bad config, bad arguments, bad files).
/// The CLI maps these to exit code 1.
class UserError : public Error {
public:
    using Error::Error;
};

/// Malformed XML in a dump. Carries the byte offset reported by the parser.
class ParseError : public UserError {
public:
    ParseError(const std::string& what, std::int64_t byte_offset)
        : UserError(what + " (at byte " + std::to_string(byte_offset) + ")"),
          offset_(byte_offset) {}

    std::int64_t byte_offset() const noexcept { return offset_; }

private:
    std::int64_t offset_;
};

class TagFieldError : public UserError {
public:
    TagFieldError(const std::string& what, std::int64_t post_id)
        : UserError("post " + std::to_string(post_id) + ": " + what), post_id_(post_id) {}

    std::int64_t post_id() const noexcept { return post_id_; }

private:
    std::int64_t post_id_;
};

} // namespace cqatag

namespace cqatag {

/// A lookup for something the data never contained: an unseen tag pair, a
/// tag with no occurrences. Distinct from a legitimate zero count.
class LookupError : public UserError {
public:
    using UserError::UserError;
};

} // namespace cqatag
