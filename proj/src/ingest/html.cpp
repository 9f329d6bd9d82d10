#include "cqatag/ingest/html.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <string>
#include <utility>

namespace cqatag::ingest {

namespace {

struct NamedEntity {
    std::string_view name;
    char32_t code;
};

// The entities that actually occur in StackExchange bodies plus the XML five.
constexpr std::array<NamedEntity, 32> kNamedEntities{{
    {"amp", U'&'},     {"lt", U'<'},       {"gt", U'>'},      {"quot", U'"'},
    {"apos", U'\''},   {"nbsp", 0xA0},     {"copy", 0xA9},    {"reg", 0xAE},
    {"trade", 0x2122}, {"hellip", 0x2026}, {"mdash", 0x2014}, {"ndash", 0x2013},
    {"lsquo", 0x2018}, {"rsquo", 0x2019},  {"ldquo", 0x201C}, {"rdquo", 0x201D},
    {"laquo", 0xAB},   {"raquo", 0xBB},    {"times", 0xD7},   {"divide", 0xF7},
    {"deg", 0xB0},     {"plusmn", 0xB1},   {"middot", 0xB7},  {"para", 0xB6},
    {"sect", 0xA7},    {"euro", 0x20AC},   {"pound", 0xA3},   {"cent", 0xA2},
    {"yen", 0xA5},     {"bull", 0x2022},   {"larr", 0x2190},  {"rarr", 0x2192},
}};

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Parses the reference starting at text[pos] == '&'. Returns the number of
// bytes consumed, or 0 when this is not a well-formed reference.
std::size_t decode_one(std::string_view text, std::size_t pos, std::string& out) {
    const auto semi = text.find(';', pos + 1);
    if (semi == std::string_view::npos || semi - pos > 12 || semi == pos + 1) return 0;
    const auto body = text.substr(pos + 1, semi - pos - 1);

    if (body.front() == '#') {
        std::uint32_t cp = 0;
        const bool hex = body.size() > 1 && (body[1] == 'x' || body[1] == 'X');
        const auto digits = body.substr(hex ? 2 : 1);
        if (digits.empty()) return 0;
        for (char c : digits) {
            int d;
            if (std::isdigit(static_cast<unsigned char>(c))) {
                d = c - '0';
            } else if (hex && std::isxdigit(static_cast<unsigned char>(c))) {
                d = std::tolower(static_cast<unsigned char>(c)) - 'a' + 10;
            } else {
                return 0;
            }
            cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(d);
            if (cp > 0x10FFFF) return 0;
        }
        if (cp == 0 || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
        append_utf8(out, cp);
        return semi - pos + 1;
    }

    for (const auto& e : kNamedEntities) {
        if (e.name == body) {
            append_utf8(out, e.code);
            return semi - pos + 1;
        }
    }
    return 0;
}

bool is_block_element(std::string_view name) {
    static constexpr std::array<std::string_view, 24> kBlocks{
        "p",  "br", "div", "pre", "li", "ul",    "ol",    "h1",         "h2", "h3", "h4", "h5",
        "h6", "hr", "tr",  "td",  "th", "table", "blockquote", "section", "dd", "dt", "dl", "img"};
    return std::find(kBlocks.begin(), kBlocks.end(), name) != kBlocks.end();
}

std::string lower_name(std::string_view tag) {
    // tag is the text between '<' and '>', e.g. "/pre" or "a href=...".
    std::size_t i = 0;
    if (i < tag.size() && tag[i] == '/') ++i;
    std::string name;
    while (i < tag.size() && std::isalnum(static_cast<unsigned char>(tag[i]))) {
        name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(tag[i]))));
        ++i;
    }
    return name;
}

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string_view trim_view(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

} // namespace

std::string decode_entities(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size();) {
        if (text[i] == '&') {
            if (auto used = decode_one(text, i, out)) {
                i += used;
                continue;
            }
        }
        out.push_back(text[i++]);
    }
    return out;
}

std::string strip_html(std::string_view html) {
    std::string text;
    text.reserve(html.size());
    std::size_t i = 0;
    while (i < html.size()) {
        const char c = html[i];
        if (c != '<') {
            text.push_back(c);
            ++i;
            continue;
        }
        if (html.substr(i, 4) == "<!--") {
            const auto end = html.find("-->", i + 4);
            i = end == std::string_view::npos ? html.size() : end + 3;
            continue;
        }
        // Only treat '<' as markup when it opens something tag-like; a bare
        // "a < b" in prose stays as text.
        const bool tag_like = i + 1 < html.size() &&
                              (std::isalpha(static_cast<unsigned char>(html[i + 1])) ||
                               html[i + 1] == '/' || html[i + 1] == '!' || html[i + 1] == '?');
        const auto close = html.find('>', i + 1);
        if (!tag_like || close == std::string_view::npos) {
            text.push_back(c);
            ++i;
            continue;
        }
        const auto inner = html.substr(i + 1, close - i - 1);
        const auto name = lower_name(inner);
        i = close + 1;

        if ((name == "script" || name == "style") && inner.front() != '/') {
            const std::string closing = "</" + name;
            std::size_t end = i;
            // case-insensitive search for the closing tag
            while (end < html.size()) {
                end = html.find("</", end);
                if (end == std::string_view::npos) break;
                if (lower_name(html.substr(end + 1, name.size() + 1)) == name) break;
                end += 2;
            }
            if (end == std::string_view::npos) {
                i = html.size();
            } else {
                const auto gt = html.find('>', end);
                i = gt == std::string_view::npos ? html.size() : gt + 1;
            }
            continue;
        }
        if (is_block_element(name)) text.push_back('\n');
    }
    return std::string(trim_view(decode_entities(text)));
}

std::string normalize_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char c : text) {
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out.push_back(' ');
        pending_space = false;
        out.push_back(c);
    }
    return out;
}

} // namespace cqatag::ingest
