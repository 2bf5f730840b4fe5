#pragma once
// Metamodel records: concepts, senses, individuals, relations and the
// ontological analysis profile attached to each concept.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontolex/ids.hpp"

namespace ontolex {

enum class Rigidity { unspecified, rigid, anti_rigid };
enum class BenchmarkLevel { unspecified, scientific, expert, commonsense };
enum class ConceptStatus { partial, well_investigated };

const char* to_string(Rigidity r);
const char* to_string(BenchmarkLevel b);
const char* to_string(ConceptStatus s);
Rigidity parse_rigidity(std::string_view text);
BenchmarkLevel parse_benchmark_level(std::string_view text);
ConceptStatus parse_status(std::string_view text);

// Relation codes. Open extension codes are allowed; these are the ones the
// mapping framework and the URL scheme know about.
namespace rel {
inline constexpr std::string_view SubTypeOf = "SubTypeOf";
inline constexpr std::string_view PartOf = "PartOf";
inline constexpr std::string_view HasPart = "HasPart";
inline constexpr std::string_view InstanceOf = "InstanceOf";
inline constexpr std::string_view Type = "Type";
inline constexpr std::string_view SameAs = "SameAs";
inline constexpr std::string_view SuperClassOf = "SuperClassOf";
inline constexpr std::string_view SubClassOf = "SubClassOf";
inline constexpr std::string_view Similar = "Similar";
}  // namespace rel

const std::vector<std::string_view>& known_relation_codes();
bool is_known_relation(std::string_view code);

inline constexpr std::string_view kDefaultPos = "noun";

struct Sense {
    SenseId id;
    std::string term;
    std::string area;
    std::string era;
    std::string lexicalization_type;
    std::string pos{kDefaultPos};

    bool is_noun() const { return pos == kDefaultPos; }
    friend bool operator==(const Sense&, const Sense&) = default;
};

struct Relation {
    std::string type;
    ConceptId target;
    friend bool operator==(const Relation&, const Relation&) = default;
};

struct OntologicalProfile {
    std::string distinguishing_characteristics;
    std::vector<std::string> example_instances;
    std::string identity_criteria;
    Rigidity rigidity = Rigidity::unspecified;
    std::vector<std::string> formal_axioms;  // opaque, never interpreted
    BenchmarkLevel benchmark_level = BenchmarkLevel::unspecified;
    // Justification required for gap-filler concepts.
    std::string rationale;

    bool is_default() const { return *this == OntologicalProfile{}; }
    friend bool operator==(const OntologicalProfile&, const OntologicalProfile&) = default;
};

struct Concept {
    ConceptId id;
    std::string gloss;
    std::optional<std::string> example_sentence;
    std::vector<Sense> synset;
    std::string area;
    std::string era;
    ConceptStatus status = ConceptStatus::partial;
    bool gap_filler = false;
    std::optional<ConceptId> parent;
    std::vector<Relation> relations;
    OntologicalProfile profile;

    friend bool operator==(const Concept&, const Concept&) = default;
};

struct Individual {
    IndividualId id;
    std::vector<Sense> names;
    ConceptId instance_of;

    friend bool operator==(const Individual&, const Individual&) = default;
};

}  // namespace ontolex
