#pragma once
// Mapping correspondences <e1, e2, R, P, C> between entities of different
// resources, and the statistics computed over sets of them: relation
// histograms, inter-annotator agreement and ontology coverage.

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ontolex/execution.hpp"
#include "ontolex/ids.hpp"

namespace ontolex {

class Taxonomy;

struct EntityRef {
    std::string resource;   // "ontology", a lexicon id, or an external resource id
    std::string entity_id;  // opaque outside the ontology

    std::string str() const { return resource + ":" + entity_id; }
    friend auto operator<=>(const EntityRef&, const EntityRef&) = default;
};

inline constexpr std::string_view kOntologyResource = "ontology";

struct MappingCorrespondence {
    EntityRef e1;
    EntityRef e2;
    std::string relation;
    double precision = 100;   // percent
    double confidence = 100;  // percent
    std::string annotator;
    std::string note;

    friend bool operator==(const MappingCorrespondence&, const MappingCorrespondence&) = default;
};

// Relation codes allowed in correspondences.
const std::vector<std::string_view>& mapping_relation_codes();

// Rejects out-of-range percents (RangeError) and unknown relations
// (UnknownRelationError).
void validate_mapping(const MappingCorrespondence& m);

class MappingStore {
public:
    // Throws RangeError, UnknownRelationError, DuplicateMappingError (same
    // e1, e2, relation and annotator).
    void add(MappingCorrespondence m);

    const std::vector<MappingCorrespondence>& all() const { return items_; }
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }

    // UTF-8 TSV: e1_resource, e1_id, e2_resource, e2_id, R, P, C,
    // annotator, note. '#' lines are comments.
    static MappingStore load_tsv(std::istream& in);
    static MappingStore load_tsv_file(const std::string& path);
    void save_tsv(std::ostream& out) const;
    static void write_tsv_row(std::ostream& out, const MappingCorrespondence& m);

private:
    std::vector<MappingCorrespondence> items_;
    std::set<std::tuple<EntityRef, EntityRef, std::string, std::string>> keys_;
};

// Correspondences with P < p_min or C < c_min. Thresholds must be in
// [0, 100] (RangeError).
std::vector<MappingCorrespondence> weak_mappings(const MappingStore& store, double p_min, double c_min);

struct RelationHistogram {
    std::map<std::string, std::size_t> per_relation;
    std::size_t total = 0;

    // Rows paired the way the mapping statistics report them:
    // SameAs, SubClassOf/SuperClassOf, PartOf/HasPart, InstanceOf/Type, Similar.
    std::vector<std::pair<std::string, std::size_t>> grouped() const;
    std::string to_text() const;
    std::string to_json() const;
};

RelationHistogram relation_histogram(const MappingStore& store);

// Target pairs counted as partial agreement. Matching is direction-blind.
struct PartialRuleSet {
    std::vector<std::pair<std::string, std::set<std::string>>> parent_subtype_pairs;
    std::vector<std::pair<std::string, std::string>> symmetric_pairs;

    bool related(const std::string& a, const std::string& b) const;

    // {"parent_subtype": [{"general": "x", "subtypes": ["y", ...]}],
    //  "symmetric": [["a", "b"], ...]}
    static PartialRuleSet from_json(const std::string& text);
    static PartialRuleSet load_json_file(const std::string& path);
};

// Integer percent of part/whole, rounded half away from zero; 0 when whole is 0.
int percent_rounded(std::size_t part, std::size_t whole);

struct AgreementRow {
    std::string label;
    std::size_t exact = 0;
    std::size_t partial = 0;
    std::size_t different = 0;
    std::size_t couldnt_map = 0;
    std::size_t mapped_by_both = 0;

    // All four use mapped_by_both as the denominator.
    int exact_pct() const { return percent_rounded(exact, mapped_by_both); }
    int partial_pct() const { return percent_rounded(partial, mapped_by_both); }
    int different_pct() const { return percent_rounded(different, mapped_by_both); }
    int couldnt_map_pct() const { return percent_rounded(couldnt_map, mapped_by_both); }

    friend bool operator==(const AgreementRow&, const AgreementRow&) = default;
};

struct AgreementTable {
    std::vector<AgreementRow> rows;

    std::string to_text() const;
    std::string to_json() const;
};

// Compares two annotators' mappings of the same sources (keyed by e1).
// A source mapped by both is Exact when the two share a (target, relation)
// pair, Partial when some pair of their targets is related by `rules`, and
// Different otherwise. CouldntMap counts universe sources that at least one
// side left unmapped. An empty universe means every source either side
// mapped. Throws TargetMismatchError when the two sets point into
// different target resources.
AgreementRow agreement_stats(const MappingStore& a, const MappingStore& b, const PartialRuleSet& rules,
                             const std::vector<std::string>& universe, std::string label = {},
                             Execution exec = Execution::parallel);

// (exact + partial) / mapped_by_both as a rounded integer percent.
int combined_agreement(const AgreementRow& row);

enum class Placement { EquivalentToNode, UnderLeaf, UnderNonLeaf, Unmappable };

const char* to_string(Placement p);

// SameAs -> EquivalentToNode; SubClassOf -> UnderLeaf / UnderNonLeaf by
// whether the target has children; any other relation -> Unmappable.
Placement classify_placement(const MappingCorrespondence& m, const Taxonomy& t);

struct NodeTally {
    std::size_t equivalents = 0;
    std::size_t subclasses = 0;
};

struct MissingCategory {
    ConceptId node;
    std::string label;
    std::size_t count = 0;
};

struct PlacementReport {
    std::size_t total_considered = 0;
    std::size_t excluded = 0;
    std::size_t mapped = 0;
    std::map<Placement, std::size_t> by_category;
    std::map<ConceptId, NodeTally> per_node;
    std::vector<MissingCategory> missing_categories;  // non-leaf nodes with direct subclass placements

    std::size_t count(Placement p) const;
    std::size_t correctly_placed() const { return count(Placement::EquivalentToNode) + count(Placement::UnderLeaf); }
    // Percent with one decimal, e.g. 90.4.
    double comprehensiveness() const;
    std::string comprehensiveness_display() const;  // "90%"

    std::string to_text() const;
    std::string to_json() const;
};

// Targets (e2.entity_id) are concept ids in t; anything else throws
// UnresolvedTargetError. `labels` names nodes in the missing-category list.
PlacementReport coverage_report(const MappingStore& mappings, const Taxonomy& t, std::size_t total_considered,
                                std::size_t excluded, const std::map<ConceptId, std::string>& labels = {});

}  // namespace ontolex
