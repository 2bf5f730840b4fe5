#pragma once
// The subsumption tree over concepts, plus audits for externally supplied
// hierarchies (which may contain redundant edges and cycles).

#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ontolex/execution.hpp"
#include "ontolex/finding.hpp"
#include "ontolex/model.hpp"

namespace ontolex {

class Store;

// Immutable forest snapshot. Edits return a new snapshot.
class Taxonomy {
public:
    Taxonomy() = default;

    // Nodes and parent links of every concept in the store.
    static Taxonomy from_store(const Store& store);

    Taxonomy add_node(ConceptId id) const;

    // Throws UnknownIdError, CycleError (parent is the child or one of its
    // descendants) or MultipleParentError (child already has a different
    // parent and `reparent` is false).
    Taxonomy set_parent(ConceptId child, ConceptId parent, bool reparent = false) const;

    bool contains(ConceptId id) const { return nodes_.count(id) != 0; }
    const std::set<ConceptId>& nodes() const { return nodes_; }
    std::optional<ConceptId> parent(ConceptId id) const;
    // Sorted children; empty for leaves and unknown ids.
    const std::vector<ConceptId>& children(ConceptId id) const;
    bool is_leaf(ConceptId id) const { return children(id).empty(); }
    std::vector<ConceptId> roots() const;

    // Direct parent first, root last. Throws UnknownIdError.
    std::vector<ConceptId> ancestors(ConceptId id) const;
    bool is_ancestor(ConceptId ancestor, ConceptId of) const;

    // Children of one parent, for every parent with at least two. Roots of
    // separate trees are not siblings.
    std::vector<std::vector<ConceptId>> sibling_sets() const;

    std::size_t size() const { return nodes_.size(); }

    friend bool operator==(const Taxonomy& a, const Taxonomy& b) {
        return a.nodes_ == b.nodes_ && a.parent_of_ == b.parent_of_;
    }

private:
    std::set<ConceptId> nodes_;
    std::map<ConceptId, ConceptId> parent_of_;
    std::map<ConceptId, std::vector<ConceptId>> children_;
};

// A hierarchy from another resource, kept as raw labelled edges so that
// faults can be reported instead of rejected.
struct ForeignHierarchy {
    using Edge = std::pair<std::string, std::string>;  // (child, parent)

    std::set<std::string> nodes;
    std::set<Edge> edges;

    void add_edge(std::string child, std::string parent);

    // Two-column UTF-8 TSV (child<TAB>parent); blank lines and lines
    // starting with '#' are skipped. Throws ParseError on other lines.
    static ForeignHierarchy load_tsv(std::istream& in);
    static ForeignHierarchy load_tsv_file(const std::string& path);
};

// Closed paths, one per strongly connected component (and per self-loop).
// Each cycle starts at the smallest label of its component; the edge from
// the last element back to the first closes it. Empty iff acyclic.
std::vector<std::vector<std::string>> audit_cycles(const ForeignHierarchy& h);

// Edges (a,b) where b is also reachable from a through a path of length
// >= 2, i.e. edges an inference engine would derive anyway. Throws
// CyclicInputError on cyclic input.
std::set<ForeignHierarchy::Edge> audit_redundant_edges(const ForeignHierarchy& h,
                                                       Execution exec = Execution::parallel);

// One RigidityViolation per (anti-rigid ancestor, rigid descendant) pair.
// `concept` is the rigid descendant, `related` the anti-rigid ancestor.
Findings check_rigidity(const Taxonomy& t, const std::map<ConceptId, Rigidity>& rigidity);
Findings check_rigidity(const Taxonomy& t, const Store& store);

}  // namespace ontolex
