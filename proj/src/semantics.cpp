#include "ontolex/semantics.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "ontolex/errors.hpp"
#include "ontolex/store.hpp"
#include "ontolex/taxonomy.hpp"

namespace ontolex {

using nlohmann::json;

WorldModel::WorldModel(std::vector<std::string> domain, std::vector<std::string> worlds)
    : domain_(std::move(domain)), worlds_(std::move(worlds)) {
    for (std::size_t i = 0; i < domain_.size(); ++i)
        if (!domain_index_.emplace(domain_[i], i).second)
            throw Error("duplicate individual '" + domain_[i] + "' in model domain");
    std::set<std::string> seen;
    for (const auto& w : worlds_)
        if (!seen.insert(w).second) throw Error("duplicate world '" + w + "'");
}

void WorldModel::cover(ConceptId c) {
    ext_.try_emplace(c, worlds_.size(), IndividualSet(domain_.size()));
}

std::size_t WorldModel::world_index(const std::string& label) const {
    auto it = std::find(worlds_.begin(), worlds_.end(), label);
    if (it == worlds_.end()) throw Error("unknown world '" + label + "'");
    return static_cast<std::size_t>(it - worlds_.begin());
}

void WorldModel::set_extension(ConceptId c, const std::string& world,
                               const std::vector<std::string>& individuals) {
    IndividualSet members(domain_.size());
    for (const auto& label : individuals) {
        auto it = domain_index_.find(label);
        if (it == domain_index_.end()) throw Error("individual '" + label + "' is not in the domain");
        members.set(it->second);
    }
    set_extension(c, world_index(world), std::move(members));
}

void WorldModel::set_extension(ConceptId c, std::size_t world, IndividualSet members) {
    if (world >= worlds_.size()) throw Error("world index out of range");
    if (members.size() != domain_.size()) throw Error("extension size does not match the domain");
    cover(c);
    ext_.at(c)[world] = std::move(members);
}

std::vector<ConceptId> WorldModel::covered() const {
    std::vector<ConceptId> out;
    for (const auto& [c, e] : ext_) out.push_back(c);
    return out;
}

const IndividualSet& WorldModel::extension(ConceptId c, std::size_t world) const {
    auto it = ext_.find(c);
    if (it == ext_.end()) throw UncoveredConceptError("concept " + c.str() + " is not covered by the model");
    return it->second.at(world);
}

std::set<std::string> WorldModel::labels(const IndividualSet& members) const {
    std::set<std::string> out;
    for (auto i = members.find_first(); i != IndividualSet::npos; i = members.find_next(i))
        out.insert(domain_[i]);
    return out;
}

WorldModel WorldModel::from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid world model JSON: ") + e.what(), 1, e.byte);
    }
    try {
        WorldModel m(doc.at("domain").get<std::vector<std::string>>(),
                     doc.at("worlds").get<std::vector<std::string>>());
        if (doc.contains("ext")) {
            for (const auto& [key, per_world] : doc.at("ext").items()) {
                const auto id = parse_id_text(key);
                if (id == 0) throw Error("invalid concept id '" + key + "' in model");
                m.cover(ConceptId{id});
                for (const auto& [world, members] : per_world.items())
                    m.set_extension(ConceptId{id}, world, members.get<std::vector<std::string>>());
            }
        }
        return m;
    } catch (const json::exception& e) {
        throw Error(std::string("malformed world model: ") + e.what());
    }
}

WorldModel WorldModel::load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

std::string WorldModel::to_json() const {
    json doc;
    doc["domain"] = domain_;
    doc["worlds"] = worlds_;
    doc["ext"] = json::object();
    for (const auto& [c, per_world] : ext_) {
        json entry = json::object();
        for (std::size_t w = 0; w < worlds_.size(); ++w) {
            const auto members = labels(per_world[w]);
            entry[worlds_[w]] = std::vector<std::string>(members.begin(), members.end());
        }
        doc["ext"][c.str()] = entry;
    }
    return doc.dump(2);
}

AdmissibleExtensions admissible_extensions(ConceptId c, const WorldModel& m) {
    if (!m.covers(c)) throw UncoveredConceptError("concept " + c.str() + " is not covered by the model");
    AdmissibleExtensions out;
    for (std::size_t w = 0; w < m.world_count(); ++w) out.insert(m.labels(m.extension(c, w)));
    return out;
}

bool subsumes(ConceptId broader, ConceptId narrower, const WorldModel& m) {
    // Resolve both before iterating so an uncovered concept always throws,
    // even in a model with no worlds.
    if (!m.covers(broader)) throw UncoveredConceptError("concept " + broader.str() + " is not covered by the model");
    if (!m.covers(narrower)) throw UncoveredConceptError("concept " + narrower.str() + " is not covered by the model");
    for (std::size_t w = 0; w < m.world_count(); ++w)
        if (!m.extension(narrower, w).is_subset_of(m.extension(broader, w))) return false;
    return true;
}

bool concepts_identical(ConceptId a, ConceptId b, const WorldModel& m, Identity mode) {
    if (!m.covers(a)) throw UncoveredConceptError("concept " + a.str() + " is not covered by the model");
    if (!m.covers(b)) throw UncoveredConceptError("concept " + b.str() + " is not covered by the model");
    if (mode == Identity::admissible_sets) return admissible_extensions(a, m) == admissible_extensions(b, m);
    for (std::size_t w = 0; w < m.world_count(); ++w)
        if (m.extension(a, w) != m.extension(b, w)) return false;
    return true;
}

Findings check_taxonomy(const WorldModel& m, const Taxonomy& t, Execution exec) {
    Findings out;
    for (auto id : t.nodes()) {
        if (m.covers(id)) continue;
        Finding f;
        f.rule_id = "UncoveredConcept";
        f.severity = Severity::warning;
        f.concept_id = id;
        f.message = "concept is not covered by the model; checks involving it were skipped";
        out.push_back(std::move(f));
    }

    for (auto id : t.nodes()) {
        const auto p = t.parent(id);
        if (!p || !m.covers(id) || !m.covers(*p)) continue;
        for (std::size_t w = 0; w < m.world_count(); ++w) {
            if (m.extension(id, w).is_subset_of(m.extension(*p, w))) continue;
            Finding f;
            f.rule_id = "SubsumptionViolation";
            f.severity = Severity::error;
            f.concept_id = id;
            f.related = *p;
            f.world = m.worlds()[w];
            f.message = "extension of " + id.str() + " is not contained in its parent " + p->str();
            out.push_back(std::move(f));
        }
    }

    // Sibling pairs are independent; each pair writes its own slot.
    std::vector<std::pair<ConceptId, ConceptId>> pairs;
    for (const auto& siblings : t.sibling_sets())
        for (std::size_t i = 0; i < siblings.size(); ++i)
            for (std::size_t j = i + 1; j < siblings.size(); ++j)
                if (m.covers(siblings[i]) && m.covers(siblings[j])) pairs.emplace_back(siblings[i], siblings[j]);

    std::vector<Findings> per_pair(pairs.size());
    auto check_pair = [&](std::size_t k) {
        const auto [a, b] = pairs[k];
        for (std::size_t w = 0; w < m.world_count(); ++w) {
            if (!m.extension(a, w).intersects(m.extension(b, w))) continue;
            Finding f;
            f.rule_id = "DisjointnessViolation";
            f.severity = Severity::error;
            f.concept_id = a;
            f.related = b;
            f.world = m.worlds()[w];
            f.message = "siblings " + a.str() + " and " + b.str() + " share instances";
            per_pair[k].push_back(std::move(f));
        }
    };
    const auto count = static_cast<long>(pairs.size());
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 32)
        for (long k = 0; k < count; ++k) check_pair(static_cast<std::size_t>(k));
    } else {
        for (long k = 0; k < count; ++k) check_pair(static_cast<std::size_t>(k));
    }
    for (auto& fs : per_pair) out.insert(out.end(), fs.begin(), fs.end());
    sort_findings(out);
    return out;
}

std::map<ConceptId, std::vector<std::string>> synonym_classes(const Store& store) {
    std::map<ConceptId, std::vector<std::string>> out;
    for (const auto& [id, c] : store.concepts()) {
        auto& terms = out[id];
        for (const auto& s : c.synset) terms.push_back(s.term);
    }
    return out;
}

}  // namespace ontolex
