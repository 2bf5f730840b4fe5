#pragma once
// Strongly typed identifiers for concepts, individuals and senses.
//
// Concept and individual ids share the numeric range but live in separate
// types; the store rejects any value used by both.

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace ontolex {

template <class Tag>
struct StrongId {
    std::uint64_t value = 0;

    constexpr StrongId() = default;
    constexpr explicit StrongId(std::uint64_t v) : value(v) {}

    constexpr bool valid() const { return value > 0; }
    std::string str() const { return std::to_string(value); }

    friend constexpr auto operator<=>(StrongId, StrongId) = default;
};

struct ConceptTag {};
struct IndividualTag {};
struct SenseTag {};

using ConceptId = StrongId<ConceptTag>;
using IndividualId = StrongId<IndividualTag>;
using SenseId = StrongId<SenseTag>;

// Parses an id as written in the interchange format: digits with an
// optional leading ':' (":291234"). Returns 0 on malformed input.
std::uint64_t parse_id_text(std::string_view text);

// Formats an id the way the interchange format writes it (":291234").
std::string format_id_text(std::uint64_t value);

}  // namespace ontolex

template <class Tag>
struct std::hash<ontolex::StrongId<Tag>> {
    std::size_t operator()(ontolex::StrongId<Tag> id) const noexcept {
        return std::hash<std::uint64_t>{}(id.value);
    }
};
