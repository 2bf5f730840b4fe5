#pragma once
// Minimal UTF-8 codec. Invalid bytes decode to U+FFFD and never throw.

#include <string>
#include <string_view>

namespace ontolex::utf8 {

std::u32string decode(std::string_view bytes);
std::string encode(std::u32string_view text);
void append(std::string& out, char32_t cp);

bool is_arabic_letter(char32_t cp);
bool contains_arabic(std::string_view bytes);

// ASCII-only lowercase; non-ASCII bytes are passed through.
std::string ascii_lower(std::string_view text);

}  // namespace ontolex::utf8
