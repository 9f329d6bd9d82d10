#pragma once

#include "cqatag/ingest/post.hpp"

#include <istream>
#include <json.hpp>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cqatag::decoder {

enum class TokenKind { TagToken, Separator, Punctuation };

const char* to_string(TokenKind kind);
TokenKind token_kind_from_string(const std::string& name);

struct StreamToken {
    std::string text;
    double log_prob = 0; // natural log; <= 0
    TokenKind kind = TokenKind::TagToken;

    bool operator==(const StreamToken&) const = default;
};

/// Generated tokens for one post, in generation order.
struct TokenStream {
    ingest::PostId post_id = 0;
    std::vector<StreamToken> tokens;

    bool operator==(const TokenStream&) const = default;
};

/// Punctuation when every character is ASCII, non-alphanumeric and not '-'.
/// Empty text counts as punctuation.
bool is_punctuation_text(std::string_view text);

/// Kind for a decoded token that is not a separator.
TokenKind classify_token(std::string_view text);

// Token-stream files: one JSON object per line,
//   {"post_id": 7, "tokens": [["visa", -0.1, "tag"], ["<sep>", -0.01, "sep"], ...]}
// Log-probabilities must be finite and <= 0.

nlohmann::json stream_to_json(const TokenStream& stream);
TokenStream stream_from_json(const nlohmann::json& j);
void write_token_streams(std::ostream& out, const std::vector<TokenStream>& streams);
std::vector<TokenStream> read_token_streams(std::istream& in);

/// A ranked list of vocabulary tags for one post, as produced by the closed-set head.
struct MetaPrediction {
    ingest::PostId post_id = 0;
    std::vector<std::pair<std::string, double>> tags; // (tag, probability), non-increasing

    bool operator==(const MetaPrediction&) const = default;
};

// Meta-prediction files: one JSON object per line,
//   {"post_id": 7, "tags": [{"tag": "boot", "score": 0.8}, ...]}

nlohmann::json meta_to_json(const MetaPrediction& meta);
MetaPrediction meta_from_json(const nlohmann::json& j);
void write_meta_predictions(std::ostream& out, const std::vector<MetaPrediction>& metas);
std::vector<MetaPrediction> read_meta_predictions(std::istream& in);

} // namespace cqatag::decoder
