#include "xml.hpp"

#include <cctype>
#include <charconv>

#include "ontolex/errors.hpp"
#include "ontolex/utf8.hpp"

namespace ontolex::xml {

namespace {

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

bool is_name_char(char ch) {
    const auto u = static_cast<unsigned char>(ch);
    return std::isalnum(u) || ch == '_' || ch == '-' || ch == '.' || ch == ':' || u >= 0x80;
}

class Parser {
public:
    explicit Parser(std::string_view in) : in_(in) {}

    Element document() {
        Element doc;
        doc.name = "#document";
        doc.line = 1;
        doc.column = 1;
        while (!eof()) {
            if (starts_with("<?")) {
                skip_past("?>", "unterminated processing instruction");
            } else if (starts_with("<!--")) {
                skip_past("-->", "unterminated comment");
            } else if (starts_with("<!")) {
                skip_past(">", "unterminated declaration");
            } else if (starts_with("</")) {
                fail("unexpected closing tag");
            } else if (peek() == '<') {
                doc.children.push_back(element());
            } else {
                // Stray character data between top-level elements (e.g. "...").
                advance();
            }
        }
        return doc;
    }

private:
    Element element() {
        Element el;
        el.line = line_;
        el.column = col_;
        expect('<');
        el.name = name();
        for (;;) {
            skip_space();
            if (eof()) fail("unterminated start tag <" + el.name + ">");
            if (starts_with("/>")) {
                advance(2);
                return el;
            }
            if (peek() == '>') {
                advance();
                break;
            }
            auto key = name();
            skip_space();
            expect('=');
            skip_space();
            el.attributes.emplace_back(std::move(key), quoted());
        }
        content(el);
        return el;
    }

    void content(Element& el) {
        for (;;) {
            if (eof()) fail("missing closing tag </" + el.name + ">");
            if (starts_with("</")) {
                const auto line = line_, col = col_;
                advance(2);
                const auto closing = name();
                skip_space();
                expect('>');
                if (closing != el.name) {
                    throw ParseError("closing tag </" + closing + "> does not match <" + el.name + ">", line, col);
                }
                return;
            }
            if (starts_with("<!--")) {
                skip_past("-->", "unterminated comment");
            } else if (starts_with("<![CDATA[")) {
                advance(9);
                const auto end = in_.find("]]>", pos_);
                if (end == std::string_view::npos) fail("unterminated CDATA section");
                while (pos_ < end) el.text.push_back(advance());
                advance(3);
            } else if (starts_with("<?")) {
                skip_past("?>", "unterminated processing instruction");
            } else if (peek() == '<') {
                el.children.push_back(element());
            } else if (peek() == '&') {
                el.text += reference();
            } else {
                el.text.push_back(advance());
            }
        }
    }

    std::string quoted() {
        if (eof() || (peek() != '"' && peek() != '\'')) fail("expected quoted attribute value");
        const char q = advance();
        std::string out;
        for (;;) {
            if (eof()) fail("unterminated attribute value");
            if (peek() == q) {
                advance();
                return out;
            }
            if (peek() == '<') fail("'<' in attribute value");
            if (peek() == '&')
                out += reference();
            else
                out.push_back(advance());
        }
    }

    // At '&'. Well-formed references are decoded; anything else is a literal '&'.
    std::string reference() {
        const auto semi = in_.find(';', pos_);
        if (semi != std::string_view::npos && semi - pos_ <= 10) {
            const auto body = in_.substr(pos_ + 1, semi - pos_ - 1);
            std::string decoded;
            if (body == "lt") decoded = "<";
            else if (body == "gt") decoded = ">";
            else if (body == "amp") decoded = "&";
            else if (body == "quot") decoded = "\"";
            else if (body == "apos") decoded = "'";
            else if (body.size() > 1 && body[0] == '#') {
                const bool hex = body[1] == 'x' || body[1] == 'X';
                const auto digits = body.substr(hex ? 2 : 1);
                std::uint32_t cp = 0;
                auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp, hex ? 16 : 10);
                if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty() && cp <= 0x10FFFF)
                    utf8::append(decoded, static_cast<char32_t>(cp));
            }
            if (!decoded.empty()) {
                advance(semi - pos_ + 1);
                return decoded;
            }
        }
        advance();
        return "&";
    }

    std::string name() {
        const auto start = pos_;
        while (!eof() && is_name_char(peek())) advance();
        if (pos_ == start) fail("expected a name");
        return std::string(in_.substr(start, pos_ - start));
    }

    void skip_space() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) advance();
    }

    void skip_past(std::string_view token, const char* message) {
        const auto end = in_.find(token, pos_);
        if (end == std::string_view::npos) fail(message);
        advance(end + token.size() - pos_);
    }

    void expect(char ch) {
        if (eof() || peek() != ch) fail(std::string("expected '") + ch + "'");
        advance();
    }

    bool eof() const { return pos_ >= in_.size(); }
    char peek() const { return in_[pos_]; }
    bool starts_with(std::string_view s) const { return in_.substr(pos_, s.size()) == s; }

    char advance() {
        const char ch = in_[pos_++];
        if (ch == '\n') {
            ++line_;
            col_ = 1;
        } else if ((static_cast<unsigned char>(ch) & 0xC0) != 0x80) {
            ++col_;  // count code points, not continuation bytes
        }
        return ch;
    }
    void advance(std::size_t n) {
        while (n-- > 0 && !eof()) advance();
    }

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, col_); }

    std::string_view in_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

std::string escape(std::string_view raw, bool attribute) {
    std::string out;
    out.reserve(raw.size());
    for (char ch : raw) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"':
                if (attribute) out += "&quot;";
                else out.push_back(ch);
                break;
            case '\n':
                if (attribute) out += "&#10;";
                else out.push_back(ch);
                break;
            case '\t':
                if (attribute) out += "&#9;";
                else out.push_back(ch);
                break;
            case '\r': out += "&#13;"; break;
            default: out.push_back(ch);
        }
    }
    return out;
}

}  // namespace

const std::string* Element::attribute(std::string_view key) const {
    for (const auto& [k, v] : attributes)
        if (iequals(k, key)) return &v;
    return nullptr;
}

bool Element::is(std::string_view other) const { return iequals(name, other); }

Element parse(std::string_view input) {
    if (input.substr(0, 3) == "\xEF\xBB\xBF") input.remove_prefix(3);
    return Parser(input).document();
}

std::string escape_text(std::string_view raw) { return escape(raw, false); }
std::string escape_attribute(std::string_view raw) { return escape(raw, true); }

}  // namespace ontolex::xml
