#include "cqatag/decoder/assemble.hpp"

#include "cqatag/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <unordered_set>

namespace cqatag::decoder {

namespace {

std::string_view trim(std::string_view s) {
    auto space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
    while (!s.empty() && space(s.front())) s.remove_prefix(1);
    while (!s.empty() && space(s.back())) s.remove_suffix(1);
    return s;
}

} // namespace

std::vector<RefinedTag> assemble_tags(const TokenStream& stream) {
    std::vector<RefinedTag> out;
    bool open = false;
    std::string text;
    double log_sum = 0;
    std::size_t count = 0;

    for (const auto& tok : stream.tokens) {
        if (tok.kind == TokenKind::Separator) {
            if (open && count > 0 && text.front() != '-' && text.back() != '-' &&
                (out.empty() || out.back().text != text)) {
                out.push_back({text, count, std::exp(log_sum / static_cast<double>(count))});
            }
            open = true;
            text.clear();
            log_sum = 0;
            count = 0;
            continue;
        }
        if (!open || tok.kind == TokenKind::Punctuation) continue;
        const auto piece = trim(tok.text);
        if (is_punctuation_text(piece)) continue;
        for (char c : piece) {
            const auto u = static_cast<unsigned char>(c);
            text.push_back(static_cast<char>(u < 0x80 ? std::tolower(u) : u));
        }
        log_sum += tok.log_prob;
        ++count;
    }
    return out;
}

std::vector<RefinedTag> select_topk_refined(std::vector<RefinedTag> tags, std::size_t k) {
    std::stable_sort(tags.begin(), tags.end(), [](const RefinedTag& a, const RefinedTag& b) {
        return a.combined_score > b.combined_score;
    });
    if (tags.size() > k) tags.resize(k);
    return tags;
}

baselines::PredictionSet merge_predictions(const MetaPrediction& meta,
                                           const std::vector<RefinedTag>& refined,
                                           const MergeOptions& options) {
    if (options.n_meta + options.n_refined > baselines::kMaxPredictions) {
        throw UserError("n_meta + n_refined may not exceed 5");
    }
    baselines::PredictionSet set;
    set.post_id = meta.post_id;
    std::unordered_set<std::string> seen;

    for (std::size_t i = 0; i < meta.tags.size() && i < options.n_meta; ++i) {
        const auto& [tag, score] = meta.tags[i];
        if (seen.insert(tag).second) set.tags.push_back({tag, score, baselines::Source::PHead});
    }

    const auto ranked = select_topk_refined(refined, options.backfill ? refined.size()
                                                                       : options.n_refined);
    std::size_t added = 0;
    for (const auto& r : ranked) {
        if (added == options.n_refined) break;
        if (!seen.insert(r.text).second) continue;
        set.tags.push_back({r.text, r.combined_score, baselines::Source::GHead});
        ++added;
    }
    return set;
}

std::vector<baselines::PredictionSet> decode_predictions(const std::vector<MetaPrediction>& metas,
                                                         const std::vector<TokenStream>& streams,
                                                         const MergeOptions& options) {
    std::map<ingest::PostId, const TokenStream*> by_post;
    for (const auto& s : streams) {
        if (!by_post.emplace(s.post_id, &s).second) {
            throw UserError("token streams list post " + std::to_string(s.post_id) + " twice");
        }
    }
    std::vector<baselines::PredictionSet> out;
    std::vector<ingest::PostId> missing;
    std::unordered_set<ingest::PostId> used;
    for (const auto& m : metas) {
        const auto it = by_post.find(m.post_id);
        if (it == by_post.end()) {
            missing.push_back(m.post_id);
            continue;
        }
        if (!used.insert(m.post_id).second) {
            throw UserError("meta predictions list post " + std::to_string(m.post_id) + " twice");
        }
        out.push_back(merge_predictions(m, assemble_tags(*it->second), options));
    }
    for (const auto& [id, _] : by_post)
        if (!used.contains(id)) missing.push_back(id);
    if (!missing.empty()) {
        std::string list;
        for (std::size_t i = 0; i < missing.size() && i < 20; ++i) {
            list += (i ? ", " : "") + std::to_string(missing[i]);
        }
        throw UserError(std::to_string(missing.size()) +
                        " post(s) appear in only one of the meta/stream inputs: " + list);
    }
    return out;
}

TokenStream tags_to_stream(ingest::PostId post_id, const std::vector<RefinedTag>& tags) {
    TokenStream s;
    s.post_id = post_id;
    s.tokens.push_back({"<tagsep>", 0.0, TokenKind::Separator});
    for (const auto& t : tags) {
        s.tokens.push_back({t.text, std::log(t.combined_score), TokenKind::TagToken});
        s.tokens.push_back({"<tagsep>", 0.0, TokenKind::Separator});
    }
    return s;
}

} // namespace cqatag::decoder
