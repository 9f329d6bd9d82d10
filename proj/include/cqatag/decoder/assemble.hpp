#pragma once

#include "cqatag/baselines/prediction.hpp"
#include "cqatag/decoder/token_stream.hpp"

#include <string>
#include <vector>

namespace cqatag::decoder {

struct RefinedTag {
    std::string text;
    std::size_t token_count = 0;
    double combined_score = 0; // geometric mean of the token probabilities

    bool operator==(const RefinedTag&) const = default;
};

inline constexpr const char* kCombinedScore = "geometric-mean";

/// Joins the tag tokens between consecutive separators into tags.
/// Tokens outside a closed separator pair are ignored. Punctuation tokens are
/// skipped, token text is trimmed and joined without spaces, candidates that
/// start or end with '-' are dropped, and a tag equal to the one emitted just
/// before it is collapsed (the first score is kept).
std::vector<RefinedTag> assemble_tags(const TokenStream& stream);

/// Descending combined score; equal scores keep their input order.
std::vector<RefinedTag> select_topk_refined(std::vector<RefinedTag> tags, std::size_t k);

struct MergeOptions {
    std::size_t n_meta = 2;
    std::size_t n_refined = 3;
    /// Refill refined slots lost to duplicates from lower-ranked candidates.
    bool backfill = false;
};

/// First n_meta meta tags (P-head), then up to n_refined refined tags (G-head)
/// by descending score. A tag already present is dropped.
/// Throws UserError when n_meta + n_refined exceeds 5.
baselines::PredictionSet merge_predictions(const MetaPrediction& meta,
                                           const std::vector<RefinedTag>& refined,
                                           const MergeOptions& options = {});

/// Pairs meta predictions with token streams by post id and merges each pair.
/// Throws UserError listing post ids present in only one input.
std::vector<baselines::PredictionSet> decode_predictions(const std::vector<MetaPrediction>& metas,
                                                         const std::vector<TokenStream>& streams,
                                                         const MergeOptions& options = {});

/// Whole-tag stream: separator, tag, separator, ... with log-prob log(score).
TokenStream tags_to_stream(ingest::PostId post_id, const std::vector<RefinedTag>& tags);

} // namespace cqatag::decoder
