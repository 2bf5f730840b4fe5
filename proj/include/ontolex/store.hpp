#pragma once
// Immutable store snapshots and the builder that produces them.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>

#include "ontolex/finding.hpp"
#include "ontolex/model.hpp"

namespace ontolex {

class StoreBuilder;

// A published snapshot. Never mutated after build(); share it freely
// between readers.
class Store {
public:
    Store() = default;

    const std::map<ConceptId, Concept>& concepts() const { return concepts_; }
    const std::map<IndividualId, Individual>& individuals() const { return individuals_; }

    const Concept* find_concept(ConceptId id) const;
    const Individual* find_individual(IndividualId id) const;
    // Throws UnknownIdError.
    const Concept& get_concept(ConceptId id) const;

    // The concept owning a sense, if the sense belongs to a concept synset.
    std::optional<ConceptId> concept_of_sense(SenseId id) const;

    std::size_t sense_count() const { return sense_owner_.size(); }
    bool empty() const { return concepts_.empty() && individuals_.empty(); }

    friend bool operator==(const Store& a, const Store& b) {
        return a.concepts_ == b.concepts_ && a.individuals_ == b.individuals_;
    }

private:
    friend class StoreBuilder;

    std::map<ConceptId, Concept> concepts_;
    std::map<IndividualId, Individual> individuals_;
    // sense id -> owning concept (0 for individual names)
    std::unordered_map<SenseId, std::uint64_t> sense_owner_;
};

using StorePtr = std::shared_ptr<const Store>;

// Accumulates records and publishes a validated Store. Ids of value 0 are
// allocated monotonically (max seen + 1) in insertion order.
class StoreBuilder {
public:
    StoreBuilder() = default;
    explicit StoreBuilder(const Store& base);

    // Throws DuplicateIdError on a reused concept, individual or sense id.
    ConceptId add_concept(Concept c);
    IndividualId add_individual(Individual ind);

    // Replaces an existing concept record (same id). Sense ids are re-checked.
    void replace_concept(Concept c);

    bool has_concept(ConceptId id) const { return concepts_.count(id) != 0; }
    std::size_t concept_count() const { return concepts_.size(); }

    // Checks parent and instance_of references and the forest shape of the
    // parent links. Throws DanglingReferenceError or CycleError.
    Store build() const;

private:
    void claim_senses(std::vector<Sense>& senses, std::uint64_t owner);
    void release_senses(const std::vector<Sense>& senses);
    void check_entity_id_free(std::uint64_t id) const;

    std::map<ConceptId, Concept> concepts_;
    std::map<IndividualId, Individual> individuals_;
    std::unordered_map<SenseId, std::uint64_t> sense_owner_;
    std::uint64_t next_entity_ = 1;
    std::uint64_t next_sense_ = 1;
};

// Local (non-graph) checks on one concept record: synset shape, profile
// completeness, relation list hygiene. The store context resolves parent
// and relation targets. Empty result iff the record is locally valid.
Findings validate_concept_record(const Concept& c, const Store& store);

// Every concept record in the store, in id order.
Findings validate_store(const Store& store);

// term -> concepts whose synsets contain it. Terms mapped to more than one
// concept are the polysemous ones.
std::map<std::string, std::set<ConceptId>> polysemy_index(const Store& store);

}  // namespace ontolex
