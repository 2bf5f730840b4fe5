#include <algorithm>
#include <charconv>
#include <tuple>

#include "ontolex/finding.hpp"
#include "ontolex/ids.hpp"
#include "ontolex/utf8.hpp"

namespace ontolex {

std::uint64_t parse_id_text(std::string_view text) {
    if (!text.empty() && text.front() == ':') text.remove_prefix(1);
    if (text.empty()) return 0;
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return 0;
    return v;
}

std::string format_id_text(std::uint64_t value) { return ":" + std::to_string(value); }

const char* to_string(Severity s) { return s == Severity::error ? "error" : "warning"; }

void sort_findings(Findings& findings) {
    auto key = [](const Finding& f) {
        return std::make_tuple(f.concept_id, f.rule_id, f.related.value_or(ConceptId{}),
                               f.world.value_or(std::string{}), f.message);
    };
    std::stable_sort(findings.begin(), findings.end(),
                     [&](const Finding& a, const Finding& b) { return key(a) < key(b); });
}

bool has_errors(const Findings& findings) {
    return std::any_of(findings.begin(), findings.end(),
                       [](const Finding& f) { return f.severity == Severity::error; });
}

std::string format_finding(const Finding& f) {
    std::string out = std::string(to_string(f.severity)) + " " + f.rule_id + " concept " +
                      f.concept_id.str();
    if (f.related) out += " (with " + f.related->str() + ")";
    if (f.world) out += " [world " + *f.world + "]";
    out += ": " + f.message;
    return out;
}

namespace utf8 {

void append(std::string& out, char32_t cp) {
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

std::u32string decode(std::string_view bytes) {
    std::u32string out;
    out.reserve(bytes.size());
    std::size_t i = 0;
    const auto n = bytes.size();
    while (i < n) {
        const auto b0 = static_cast<unsigned char>(bytes[i]);
        int len = 0;
        char32_t cp = 0;
        if (b0 < 0x80) {
            len = 1;
            cp = b0;
        } else if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1F;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0F;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07;
        } else {
            out.push_back(U'�');
            ++i;
            continue;
        }
        if (i + len > n) {
            out.push_back(U'�');
            break;
        }
        bool ok = true;
        for (int k = 1; k < len; ++k) {
            const auto b = static_cast<unsigned char>(bytes[i + k]);
            if ((b & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (b & 0x3F);
        }
        if (!ok) {
            out.push_back(U'�');
            ++i;
            continue;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string encode(std::u32string_view text) {
    std::string out;
    out.reserve(text.size() * 2);
    for (char32_t cp : text) append(out, cp);
    return out;
}

bool is_arabic_letter(char32_t cp) {
    return (cp >= 0x0621 && cp <= 0x064A) || (cp >= 0x0671 && cp <= 0x06D3) ||
           (cp >= 0x06FA && cp <= 0x06FC);
}

bool contains_arabic(std::string_view bytes) {
    for (char32_t cp : decode(bytes))
        if (cp >= 0x0600 && cp <= 0x06FF) return true;
    return false;
}

std::string ascii_lower(std::string_view text) {
    std::string out(text);
    for (char& ch : out)
        if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
    return out;
}

}  // namespace utf8
}  // namespace ontolex
