#include "cqatag/decoder/token_stream.hpp"

#include "cqatag/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace cqatag::decoder {

namespace {

template <typename T, typename Parse>
std::vector<T> read_lines(std::istream& in, const char* what, Parse parse) {
    std::vector<T> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            out.push_back(parse(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw UserError(std::string(what) + " line " + std::to_string(line_no) + ": " + e.what());
        } catch (const UserError& e) {
            throw UserError(std::string(what) + " line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

} // namespace

const char* to_string(TokenKind kind) {
    switch (kind) {
    case TokenKind::TagToken: return "tag";
    case TokenKind::Separator: return "sep";
    case TokenKind::Punctuation: return "punct";
    }
    return "?";
}

TokenKind token_kind_from_string(const std::string& name) {
    if (name == "tag") return TokenKind::TagToken;
    if (name == "sep") return TokenKind::Separator;
    if (name == "punct") return TokenKind::Punctuation;
    throw UserError("unknown token kind \"" + name + "\"");
}

bool is_punctuation_text(std::string_view text) {
    return std::all_of(text.begin(), text.end(), [](char c) {
        const auto u = static_cast<unsigned char>(c);
        return u < 0x80 && !std::isalnum(u) && c != '-';
    });
}

TokenKind classify_token(std::string_view text) {
    return is_punctuation_text(text) ? TokenKind::Punctuation : TokenKind::TagToken;
}

nlohmann::json stream_to_json(const TokenStream& stream) {
    nlohmann::json tokens = nlohmann::json::array();
    for (const auto& t : stream.tokens) tokens.push_back({t.text, t.log_prob, to_string(t.kind)});
    return {{"post_id", stream.post_id}, {"tokens", tokens}};
}

TokenStream stream_from_json(const nlohmann::json& j) {
    TokenStream s;
    s.post_id = j.at("post_id").get<ingest::PostId>();
    for (const auto& t : j.at("tokens")) {
        if (!t.is_array() || t.size() != 3) throw UserError("token must be [text, log_prob, kind]");
        StreamToken tok{t.at(0).get<std::string>(), t.at(1).get<double>(),
                        token_kind_from_string(t.at(2).get<std::string>())};
        if (!std::isfinite(tok.log_prob) || tok.log_prob > 0) {
            throw UserError("token log-probability must be finite and <= 0");
        }
        s.tokens.push_back(std::move(tok));
    }
    return s;
}

void write_token_streams(std::ostream& out, const std::vector<TokenStream>& streams) {
    for (const auto& s : streams) out << stream_to_json(s).dump() << '\n';
}

std::vector<TokenStream> read_token_streams(std::istream& in) {
    return read_lines<TokenStream>(in, "token stream", stream_from_json);
}

nlohmann::json meta_to_json(const MetaPrediction& meta) {
    nlohmann::json tags = nlohmann::json::array();
    for (const auto& [tag, score] : meta.tags) tags.push_back({{"tag", tag}, {"score", score}});
    return {{"post_id", meta.post_id}, {"tags", tags}};
}

MetaPrediction meta_from_json(const nlohmann::json& j) {
    MetaPrediction m;
    m.post_id = j.at("post_id").get<ingest::PostId>();
    for (const auto& t : j.at("tags")) {
        m.tags.emplace_back(t.at("tag").get<std::string>(), t.at("score").get<double>());
        if (m.tags.size() > 1 && m.tags.back().second > m.tags[m.tags.size() - 2].second) {
            throw UserError("meta tags must be ranked by non-increasing score");
        }
    }
    return m;
}

void write_meta_predictions(std::ostream& out, const std::vector<MetaPrediction>& metas) {
    for (const auto& m : metas) out << meta_to_json(m).dump() << '\n';
}

std::vector<MetaPrediction> read_meta_predictions(std::istream& in) {
    return read_lines<MetaPrediction>(in, "meta prediction", meta_from_json);
}

} // namespace cqatag::decoder
