#pragma once
// Small XML reader/writer for the interchange format. Not a general XML
// processor: no namespaces, no DTD processing, no external entities.
//
// One leniency: an '&' that does not start a well-formed entity reference
// is read as a literal '&', so attribute values such as
// ":Palestine&Jordan" load as written.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ontolex::xml {

struct Element {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<Element> children;
    std::string text;  // concatenated character data directly inside this element
    std::size_t line = 0;
    std::size_t column = 0;

    // Case-insensitive attribute lookup; nullptr when absent.
    const std::string* attribute(std::string_view key) const;
    bool is(std::string_view other) const;  // case-insensitive name match
};

// Parses a document or a fragment with several top-level elements. The
// returned element is a synthetic "#document" holding the top-level
// elements as children. Throws ParseError with line and column.
Element parse(std::string_view input);

std::string escape_text(std::string_view raw);
std::string escape_attribute(std::string_view raw);

}  // namespace ontolex::xml
