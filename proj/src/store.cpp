#include "ontolex/store.hpp"

#include <algorithm>
#include <unordered_set>

#include "ontolex/errors.hpp"

namespace ontolex {

const Concept* Store::find_concept(ConceptId id) const {
    auto it = concepts_.find(id);
    return it == concepts_.end() ? nullptr : &it->second;
}

const Individual* Store::find_individual(IndividualId id) const {
    auto it = individuals_.find(id);
    return it == individuals_.end() ? nullptr : &it->second;
}

const Concept& Store::get_concept(ConceptId id) const {
    if (const auto* c = find_concept(id)) return *c;
    throw UnknownIdError("unknown concept " + id.str());
}

std::optional<ConceptId> Store::concept_of_sense(SenseId id) const {
    auto it = sense_owner_.find(id);
    if (it == sense_owner_.end() || it->second == 0) return std::nullopt;
    return ConceptId{it->second};
}

StoreBuilder::StoreBuilder(const Store& base)
    : concepts_(base.concepts_), individuals_(base.individuals_), sense_owner_(base.sense_owner_) {
    for (const auto& [id, c] : concepts_) next_entity_ = std::max(next_entity_, id.value + 1);
    for (const auto& [id, i] : individuals_) next_entity_ = std::max(next_entity_, id.value + 1);
    for (const auto& [sid, owner] : sense_owner_) next_sense_ = std::max(next_sense_, sid.value + 1);
}

void StoreBuilder::check_entity_id_free(std::uint64_t id) const {
    if (concepts_.count(ConceptId{id}) || individuals_.count(IndividualId{id}))
        throw DuplicateIdError("id " + std::to_string(id) + " is already in use");
}

void StoreBuilder::claim_senses(std::vector<Sense>& senses, std::uint64_t owner) {
    // Validate first so a rejected record leaves the builder untouched.
    std::unordered_set<SenseId> local;
    for (const auto& s : senses) {
        if (!s.id.valid()) continue;
        if (sense_owner_.count(s.id) || !local.insert(s.id).second)
            throw DuplicateIdError("sense id " + s.id.str() + " is already in use");
    }
    for (auto& s : senses) {
        if (!s.id.valid()) {
            while (sense_owner_.count(SenseId{next_sense_}) || local.count(SenseId{next_sense_}))
                ++next_sense_;
            s.id = SenseId{next_sense_++};
        }
        next_sense_ = std::max(next_sense_, s.id.value + 1);
        sense_owner_[s.id] = owner;
    }
}

void StoreBuilder::release_senses(const std::vector<Sense>& senses) {
    for (const auto& s : senses) sense_owner_.erase(s.id);
}

ConceptId StoreBuilder::add_concept(Concept c) {
    if (!c.id.valid()) {
        while (concepts_.count(ConceptId{next_entity_}) || individuals_.count(IndividualId{next_entity_}))
            ++next_entity_;
        c.id = ConceptId{next_entity_};
    }
    check_entity_id_free(c.id.value);
    claim_senses(c.synset, c.id.value);
    next_entity_ = std::max(next_entity_, c.id.value + 1);
    const auto id = c.id;
    concepts_.emplace(id, std::move(c));
    return id;
}

IndividualId StoreBuilder::add_individual(Individual ind) {
    if (!ind.id.valid()) {
        while (concepts_.count(ConceptId{next_entity_}) || individuals_.count(IndividualId{next_entity_}))
            ++next_entity_;
        ind.id = IndividualId{next_entity_};
    }
    check_entity_id_free(ind.id.value);
    claim_senses(ind.names, 0);
    next_entity_ = std::max(next_entity_, ind.id.value + 1);
    const auto id = ind.id;
    individuals_.emplace(id, std::move(ind));
    return id;
}

void StoreBuilder::replace_concept(Concept c) {
    auto it = concepts_.find(c.id);
    if (it == concepts_.end()) throw UnknownIdError("unknown concept " + c.id.str());
    release_senses(it->second.synset);
    try {
        claim_senses(c.synset, c.id.value);
    } catch (...) {
        claim_senses(it->second.synset, c.id.value);
        throw;
    }
    it->second = std::move(c);
}

Store StoreBuilder::build() const {
    for (const auto& [id, c] : concepts_) {
        if (c.parent && !concepts_.count(*c.parent))
            throw DanglingReferenceError("concept " + id.str() + " has unknown parent " +
                                         c.parent->str());
    }
    for (const auto& [id, ind] : individuals_) {
        if (!concepts_.count(ind.instance_of))
            throw DanglingReferenceError("individual " + id.str() + " is an instance of unknown concept " +
                                         ind.instance_of.str());
    }
    // Parent links must form a forest. 0 = unvisited, 1 = on current walk, 2 = done.
    std::unordered_map<ConceptId, int> state;
    for (const auto& [start, unused] : concepts_) {
        std::vector<ConceptId> walk;
        auto cur = std::optional<ConceptId>{start};
        while (cur && state[*cur] == 0) {
            state[*cur] = 1;
            walk.push_back(*cur);
            cur = concepts_.at(*cur).parent;
        }
        if (cur && state[*cur] == 1) throw CycleError("parent links form a cycle through " + cur->str());
        for (auto id : walk) state[id] = 2;
    }
    Store s;
    s.concepts_ = concepts_;
    s.individuals_ = individuals_;
    s.sense_owner_ = sense_owner_;
    return s;
}

namespace {

Finding make(std::string rule, Severity sev, ConceptId id, std::string msg) {
    Finding f;
    f.rule_id = std::move(rule);
    f.severity = sev;
    f.concept_id = id;
    f.message = std::move(msg);
    return f;
}

}  // namespace

Findings validate_concept_record(const Concept& c, const Store& store) {
    Findings out;
    if (c.parent && c.synset.empty())
        out.push_back(make("EmptySynset", Severity::error, c.id, "non-root concept has no senses"));

    std::unordered_set<std::string> seen;
    for (const auto& s : c.synset) {
        if (s.term.empty()) {
            out.push_back(make("EmptyTerm", Severity::error, c.id, "sense " + s.id.str() + " has an empty term"));
            continue;
        }
        if (!seen.insert(s.term).second)
            out.push_back(make("DuplicateSenseTerm", Severity::error, c.id,
                               "term '" + s.term + "' occurs more than once in the synset"));
    }

    if (c.status == ConceptStatus::well_investigated &&
        (c.profile.distinguishing_characteristics.empty() || c.profile.rigidity == Rigidity::unspecified))
        out.push_back(make("IncompleteProfile", Severity::error, c.id,
                           "well-investigated concept needs distinguishing characteristics and a rigidity value"));

    if (c.parent && !store.find_concept(*c.parent))
        out.push_back(make("UnknownParent", Severity::error, c.id, "parent " + c.parent->str() + " does not exist"));

    for (const auto& r : c.relations) {
        if (r.type == rel::SubTypeOf)
            out.push_back(make("StoredSubTypeOf", Severity::error, c.id,
                               "SubTypeOf belongs in the parent field, not the relation list"));
        else if (r.type == rel::InstanceOf)
            out.push_back(make("ConceptInstanceOf", Severity::error, c.id,
                               "InstanceOf is only recorded on individuals"));
        if (!store.find_concept(r.target) && !store.find_individual(IndividualId{r.target.value}))
            out.push_back(make("DanglingRelation", Severity::error, c.id,
                               r.type + " target " + r.target.str() + " does not exist"));
    }
    return out;
}

Findings validate_store(const Store& store) {
    Findings out;
    for (const auto& [id, c] : store.concepts()) {
        auto f = validate_concept_record(c, store);
        out.insert(out.end(), f.begin(), f.end());
    }
    return out;
}

std::map<std::string, std::set<ConceptId>> polysemy_index(const Store& store) {
    std::map<std::string, std::set<ConceptId>> index;
    for (const auto& [id, c] : store.concepts())
        for (const auto& s : c.synset) index[s.term].insert(id);
    return index;
}

}  // namespace ontolex
