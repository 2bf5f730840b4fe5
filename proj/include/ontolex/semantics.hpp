#pragma once
// Intensional interpretation of concepts over finite world models.
//
// A model fixes a domain D and a set of worlds W, and gives every covered
// concept an extension ext(c, w) subset of D in each world. Subsumption,
// identity and sibling disjointness are all decided world by world.

#include <map>
#include <set>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "ontolex/execution.hpp"
#include "ontolex/finding.hpp"
#include "ontolex/ids.hpp"

namespace ontolex {

class Store;
class Taxonomy;

using IndividualSet = boost::dynamic_bitset<>;

class WorldModel {
public:
    WorldModel() = default;
    // Labels must be unique. Throws Error otherwise.
    WorldModel(std::vector<std::string> domain, std::vector<std::string> worlds);

    // Covering a concept gives it an empty extension in every world.
    void cover(ConceptId c);
    // Throws Error on an unknown world or individual label.
    void set_extension(ConceptId c, const std::string& world, const std::vector<std::string>& individuals);
    void set_extension(ConceptId c, std::size_t world, IndividualSet members);

    bool covers(ConceptId c) const { return ext_.count(c) != 0; }
    std::vector<ConceptId> covered() const;

    const std::vector<std::string>& domain() const { return domain_; }
    const std::vector<std::string>& worlds() const { return worlds_; }
    std::size_t world_count() const { return worlds_.size(); }

    // Throws UncoveredConceptError.
    const IndividualSet& extension(ConceptId c, std::size_t world) const;
    std::set<std::string> labels(const IndividualSet& members) const;

    // {"domain": [...], "worlds": [...], "ext": {"<id>": {"<world>": [...]}}}
    // Worlds omitted for a listed concept default to the empty extension.
    static WorldModel from_json(const std::string& text);
    static WorldModel load_json_file(const std::string& path);
    std::string to_json() const;

private:
    std::size_t world_index(const std::string& label) const;

    std::vector<std::string> domain_;
    std::vector<std::string> worlds_;
    std::map<std::string, std::size_t> domain_index_;
    std::map<ConceptId, std::vector<IndividualSet>> ext_;
};

// E_c: the distinct extensions c takes across the worlds.
using AdmissibleExtensions = std::set<std::set<std::string>>;

AdmissibleExtensions admissible_extensions(ConceptId c, const WorldModel& m);

// True iff ext(narrower, w) is a subset of ext(broader, w) in every world.
bool subsumes(ConceptId broader, ConceptId narrower, const WorldModel& m);

// How two concepts are compared for sameness.
enum class Identity {
    pointwise,        // ext(a, w) == ext(b, w) for every w (default)
    admissible_sets,  // E_a == E_b, ignoring which world gives which extension
};

bool concepts_identical(ConceptId a, ConceptId b, const WorldModel& m,
                        Identity mode = Identity::pointwise);

// SubsumptionViolation for parent edges the model does not support,
// DisjointnessViolation (one per world) for overlapping siblings, and an
// UncoveredConcept warning for each taxonomy node the model does not cover
// (checks touching it are skipped, never counted as passing).
Findings check_taxonomy(const WorldModel& m, const Taxonomy& t, Execution exec = Execution::parallel);

// Synsets as equivalence classes of terms, keyed by concept.
std::map<ConceptId, std::vector<std::string>> synonym_classes(const Store& store);

}  // namespace ontolex
