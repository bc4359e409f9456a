#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <unicode/unorm2.h>
#include <unicode/ustring.h>

#include "litlink/errors.hpp"

namespace litlink {

/// An ordered list of normalized terms, as produced by tokenize().
using TokenStream = std::vector<std::string>;

/// One tokenizer hit with its half-open byte span in the source text.
struct RawToken {
    std::string text;
    std::size_t begin = 0;
    std::size_t end = 0;
};

inline bool is_ascii_alnum(unsigned char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline bool is_ascii_space(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline char to_lower_ascii(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline std::string to_lower_ascii(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) out.push_back(to_lower_ascii(c));
    return out;
}

/// Canonical composition (NFC) via ICU. Pure-ASCII input is returned as-is;
/// invalid UTF-8 sequences are replaced with U+FFFD rather than rejected.
inline std::string normalize_nfc(std::string_view s) {
    bool ascii = true;
    for (unsigned char c : s) {
        if (c >= 0x80) {
            ascii = false;
            break;
        }
    }
    if (ascii) return std::string(s);

    UErrorCode ec = U_ZERO_ERROR;
    const UNormalizer2* nfc = unorm2_getNFCInstance(&ec);
    if (U_FAILURE(ec)) throw Error("ICU NFC normalizer unavailable");

    std::vector<UChar> u16(s.size() + 1);
    int32_t u16len = 0;
    u_strFromUTF8WithSub(u16.data(), static_cast<int32_t>(u16.size()), &u16len, s.data(),
                         static_cast<int32_t>(s.size()), 0xFFFD, nullptr, &ec);
    if (U_FAILURE(ec)) throw Error("UTF-8 decode failed during normalization");

    std::vector<UChar> norm(static_cast<size_t>(u16len) * 3 + 16);
    int32_t nlen = unorm2_normalize(nfc, u16.data(), u16len, norm.data(),
                                    static_cast<int32_t>(norm.size()), &ec);
    if (U_FAILURE(ec)) throw Error("NFC normalization failed");

    std::string out(static_cast<size_t>(nlen) * 4 + 16, '\0');
    int32_t u8len = 0;
    u_strToUTF8(out.data(), static_cast<int32_t>(out.size()), &u8len, norm.data(), nlen, &ec);
    if (U_FAILURE(ec)) throw Error("UTF-8 encode failed during normalization");
    out.resize(static_cast<size_t>(u8len));
    return out;
}

/// Collapses runs of whitespace (ASCII plus U+00A0) to one space and trims.
inline std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    size_t i = 0;
    bool pending_space = false;
    while (i < s.size()) {
        unsigned char c = s[i];
        bool ws = is_ascii_space(c);
        if (!ws && c == 0xC2 && i + 1 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0xA0) {
            ws = true;
            ++i;
        }
        if (ws) {
            pending_space = !out.empty();
        } else {
            if (pending_space) out.push_back(' ');
            pending_space = false;
            out.push_back(static_cast<char>(c));
        }
        ++i;
    }
    return out;
}

/// Ingestion-time text normalization: NFC then whitespace collapse.
/// Case is deliberately preserved; folding happens at tokenization.
inline std::string normalize_text(std::string_view s) {
    return collapse_whitespace(normalize_nfc(s));
}

/// Splits on non-alphanumeric boundaries, preserving case and byte spans.
/// Bytes >= 0x80 (UTF-8 continuations and non-ASCII starters) count as word
/// characters, so multi-byte sequences are never split mid-codepoint.
inline std::vector<RawToken> scan_tokens(std::string_view s) {
    std::vector<RawToken> out;
    size_t i = 0;
    while (i < s.size()) {
        unsigned char c = s[i];
        if (is_ascii_alnum(c) || c >= 0x80) {
            size_t begin = i;
            while (i < s.size()) {
                unsigned char d = s[i];
                if (!is_ascii_alnum(d) && d < 0x80) break;
                ++i;
            }
            out.push_back(RawToken{std::string(s.substr(begin, i - begin)), begin, i});
        } else {
            ++i;
        }
    }
    return out;
}

/// The index tokenizer: lowercased word segmentation, no stemming, no
/// stopword removal. Deterministic; empty input yields an empty stream.
inline TokenStream tokenize(std::string_view s) {
    TokenStream out;
    for (auto& t : scan_tokens(s)) out.push_back(to_lower_ascii(t.text));
    return out;
}

inline void append_tokens(TokenStream& dst, std::string_view s) {
    for (auto& t : scan_tokens(s)) dst.push_back(to_lower_ascii(t.text));
}

/// Case- and punctuation-insensitive comparison key: the token stream of a
/// name joined with single spaces ("Proc. Natl. Acad. Sci." -> "proc natl acad sci").
inline std::string norm_key(std::string_view s) {
    std::string out;
    for (auto& t : scan_tokens(s)) {
        if (!out.empty()) out.push_back(' ');
        out += to_lower_ascii(t.text);
    }
    return out;
}

}  // namespace litlink
