#include "ontolex/mapping.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

#include "ontolex/errors.hpp"
#include "ontolex/model.hpp"
#include "ontolex/taxonomy.hpp"

namespace ontolex {

using nlohmann::json;

const std::vector<std::string_view>& mapping_relation_codes() {
    static const std::vector<std::string_view> codes = {rel::SameAs,  rel::SubClassOf, rel::SuperClassOf,
                                                        rel::PartOf,  rel::HasPart,    rel::InstanceOf,
                                                        rel::Type,    rel::Similar};
    return codes;
}

void validate_mapping(const MappingCorrespondence& m) {
    auto in_range = [](double v) { return std::isfinite(v) && v >= 0 && v <= 100; };
    if (!in_range(m.precision)) throw RangeError("precision must be within [0, 100]");
    if (!in_range(m.confidence)) throw RangeError("confidence must be within [0, 100]");
    const auto& codes = mapping_relation_codes();
    if (std::find(codes.begin(), codes.end(), m.relation) == codes.end())
        throw UnknownRelationError("unknown mapping relation '" + m.relation + "'");
}

void MappingStore::add(MappingCorrespondence m) {
    validate_mapping(m);
    auto key = std::make_tuple(m.e1, m.e2, m.relation, m.annotator);
    if (keys_.count(key))
        throw DuplicateMappingError("duplicate mapping " + m.e1.str() + " " + m.relation + " " + m.e2.str() +
                                    " by '" + m.annotator + "'");
    keys_.insert(std::move(key));
    items_.push_back(std::move(m));
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto tab = line.find('\t', start);
        out.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
        if (tab == std::string::npos) break;
        start = tab + 1;
    }
    return out;
}

double parse_percent(const std::string& text, std::size_t lineno) {
    std::string_view v = text;
    if (!v.empty() && v.back() == '%') v.remove_suffix(1);
    double out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size())
        throw ParseError("malformed percent '" + text + "'", lineno, 1);
    return out;
}

std::string format_percent(double v) {
    std::ostringstream out;
    if (v == std::floor(v))
        out << static_cast<long long>(v);
    else
        out << std::setprecision(6) << v;
    return out.str();
}

}  // namespace

MappingStore MappingStore::load_tsv(std::istream& in) {
    MappingStore store;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto cols = split_tabs(line);
        if (cols.size() < 8 || cols.size() > 9) throw ParseError("expected 8 or 9 tab-separated columns", lineno, 1);
        MappingCorrespondence m;
        m.e1 = {cols[0], cols[1]};
        m.e2 = {cols[2], cols[3]};
        m.relation = cols[4];
        m.precision = parse_percent(cols[5], lineno);
        m.confidence = parse_percent(cols[6], lineno);
        m.annotator = cols[7];
        if (cols.size() == 9) m.note = cols[8];
        try {
            store.add(std::move(m));
        } catch (const DuplicateMappingError& e) {
            throw DuplicateMappingError(std::string(e.what()) + " (line " + std::to_string(lineno) + ")");
        } catch (const RangeError& e) {
            throw RangeError(std::string(e.what()) + " (line " + std::to_string(lineno) + ")");
        } catch (const UnknownRelationError& e) {
            throw UnknownRelationError(std::string(e.what()) + " (line " + std::to_string(lineno) + ")");
        }
    }
    return store;
}

MappingStore MappingStore::load_tsv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return load_tsv(in);
}

void MappingStore::write_tsv_row(std::ostream& out, const MappingCorrespondence& m) {
    out << m.e1.resource << '\t' << m.e1.entity_id << '\t' << m.e2.resource << '\t' << m.e2.entity_id << '\t'
        << m.relation << '\t' << format_percent(m.precision) << '\t' << format_percent(m.confidence) << '\t'
        << m.annotator << '\t' << m.note << '\n';
}

void MappingStore::save_tsv(std::ostream& out) const {
    out << "# e1_resource\te1_id\te2_resource\te2_id\tR\tP\tC\tannotator\tnote\n";
    for (const auto& m : items_) write_tsv_row(out, m);
}

std::vector<MappingCorrespondence> weak_mappings(const MappingStore& store, double p_min, double c_min) {
    if (!(p_min >= 0 && p_min <= 100) || !(c_min >= 0 && c_min <= 100))
        throw RangeError("thresholds must be within [0, 100]");
    std::vector<MappingCorrespondence> out;
    for (const auto& m : store.all())
        if (m.precision < p_min || m.confidence < c_min) out.push_back(m);
    return out;
}

std::vector<std::pair<std::string, std::size_t>> RelationHistogram::grouped() const {
    auto get = [&](std::string_view code) {
        auto it = per_relation.find(std::string(code));
        return it == per_relation.end() ? std::size_t{0} : it->second;
    };
    std::vector<std::pair<std::string, std::size_t>> rows = {
        {"SameAs", get(rel::SameAs)},
        {"SubClassOf/SuperClassOf", get(rel::SubClassOf) + get(rel::SuperClassOf)},
        {"PartOf/HasPart", get(rel::PartOf) + get(rel::HasPart)},
        {"InstanceOf/Type", get(rel::InstanceOf) + get(rel::Type)},
        {"Similar", get(rel::Similar)},
    };
    return rows;
}

std::string RelationHistogram::to_text() const {
    std::ostringstream out;
    out << std::left << std::setw(26) << "Relation" << "Number of Mappings\n";
    for (const auto& [name, n] : grouped()) out << std::left << std::setw(26) << name << n << '\n';
    out << std::left << std::setw(26) << "Total" << total << '\n';
    return out.str();
}

std::string RelationHistogram::to_json() const {
    json doc;
    doc["per_relation"] = per_relation;
    json rows = json::array();
    for (const auto& [name, n] : grouped()) rows.push_back({{"relation", name}, {"count", n}});
    doc["rows"] = rows;
    doc["total"] = total;
    return doc.dump(2);
}

RelationHistogram relation_histogram(const MappingStore& store) {
    RelationHistogram h;
    for (const auto& code : mapping_relation_codes()) h.per_relation[std::string(code)] = 0;
    for (const auto& m : store.all()) ++h.per_relation[m.relation];
    h.total = store.size();
    return h;
}

bool PartialRuleSet::related(const std::string& a, const std::string& b) const {
    for (const auto& [general, subtypes] : parent_subtype_pairs) {
        if (a == general && subtypes.count(b)) return true;
        if (b == general && subtypes.count(a)) return true;
    }
    for (const auto& [x, y] : symmetric_pairs)
        if ((a == x && b == y) || (a == y && b == x)) return true;
    return false;
}

PartialRuleSet PartialRuleSet::from_json(const std::string& text) {
    PartialRuleSet rules;
    try {
        const auto doc = json::parse(text);
        if (doc.contains("parent_subtype"))
            for (const auto& entry : doc.at("parent_subtype")) {
                const auto subs = entry.at("subtypes").get<std::vector<std::string>>();
                rules.parent_subtype_pairs.emplace_back(entry.at("general").get<std::string>(),
                                                        std::set<std::string>(subs.begin(), subs.end()));
            }
        if (doc.contains("symmetric"))
            for (const auto& pair : doc.at("symmetric")) {
                const auto ids = pair.get<std::vector<std::string>>();
                if (ids.size() != 2) throw Error("symmetric rules are pairs");
                rules.symmetric_pairs.emplace_back(ids[0], ids[1]);
            }
    } catch (const json::exception& e) {
        throw Error(std::string("malformed partial rule set: ") + e.what());
    }
    return rules;
}

PartialRuleSet PartialRuleSet::load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

int percent_rounded(std::size_t part, std::size_t whole) {
    if (whole == 0) return 0;
    // floor(100 * part / whole + 1/2) in exact integer arithmetic
    return static_cast<int>((200 * static_cast<std::uint64_t>(part) + whole) / (2 * static_cast<std::uint64_t>(whole)));
}

namespace {

using Choices = std::vector<std::pair<std::string, std::string>>;  // (target, relation)

std::unordered_map<std::string, Choices> by_source(const MappingStore& s) {
    std::unordered_map<std::string, Choices> out;
    for (const auto& m : s.all()) out[m.e1.str()].emplace_back(m.e2.entity_id, m.relation);
    return out;
}

enum class Verdict : std::uint8_t { exact, partial, different };

Verdict judge(const Choices& a, const Choices& b, const PartialRuleSet& rules) {
    for (const auto& x : a)
        for (const auto& y : b)
            if (x == y) return Verdict::exact;
    for (const auto& x : a)
        for (const auto& y : b)
            if (rules.related(x.first, y.first)) return Verdict::partial;
    return Verdict::different;
}

}  // namespace

AgreementRow agreement_stats(const MappingStore& a, const MappingStore& b, const PartialRuleSet& rules,
                             const std::vector<std::string>& universe, std::string label, Execution exec) {
    std::set<std::string> targets;
    for (const auto* s : {&a, &b})
        for (const auto& m : s->all()) targets.insert(m.e2.resource);
    if (targets.size() > 1) throw TargetMismatchError("mapping sets point into different target resources");

    const auto map_a = by_source(a);
    const auto map_b = by_source(b);

    std::set<std::string> sources(universe.begin(), universe.end());
    if (sources.empty()) {
        for (const auto& [k, v] : map_a) sources.insert(k);
        for (const auto& [k, v] : map_b) sources.insert(k);
    }

    std::vector<std::pair<const Choices*, const Choices*>> both;
    for (const auto& src : sources) {
        auto ia = map_a.find(src);
        auto ib = map_b.find(src);
        if (ia != map_a.end() && ib != map_b.end()) both.emplace_back(&ia->second, &ib->second);
    }

    std::vector<Verdict> verdicts(both.size());
    const auto count = static_cast<long>(both.size());
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < count; ++i)
            verdicts[static_cast<std::size_t>(i)] = judge(*both[static_cast<std::size_t>(i)].first,
                                                          *both[static_cast<std::size_t>(i)].second, rules);
    } else {
        for (long i = 0; i < count; ++i)
            verdicts[static_cast<std::size_t>(i)] = judge(*both[static_cast<std::size_t>(i)].first,
                                                          *both[static_cast<std::size_t>(i)].second, rules);
    }

    AgreementRow row;
    row.label = std::move(label);
    row.mapped_by_both = both.size();
    for (auto v : verdicts) {
        if (v == Verdict::exact) ++row.exact;
        else if (v == Verdict::partial) ++row.partial;
        else ++row.different;
    }
    row.couldnt_map = sources.size() - both.size();
    return row;
}

int combined_agreement(const AgreementRow& row) { return percent_rounded(row.exact + row.partial, row.mapped_by_both); }

std::string AgreementTable::to_text() const {
    std::size_t label_width = 18;
    for (const auto& r : rows) label_width = std::max(label_width, r.label.size() + 2);
    auto cell = [](std::size_t n, int pct) { return std::to_string(n) + " (" + std::to_string(pct) + "%)"; };
    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(label_width)) << "" << std::setw(18) << "Exact Mapping"
        << std::setw(18) << "Partial Mapping" << std::setw(20) << "Different Mapping" << "Couldn't Map\n";
    for (const auto& r : rows) {
        out << std::left << std::setw(static_cast<int>(label_width)) << r.label << std::setw(18)
            << cell(r.exact, r.exact_pct()) << std::setw(18) << cell(r.partial, r.partial_pct()) << std::setw(20)
            << cell(r.different, r.different_pct()) << cell(r.couldnt_map, r.couldnt_map_pct()) << '\n';
    }
    return out.str();
}

std::string AgreementTable::to_json() const {
    json doc = json::array();
    for (const auto& r : rows) {
        doc.push_back({{"label", r.label},
                       {"mapped_by_both", r.mapped_by_both},
                       {"exact", {{"count", r.exact}, {"percent", r.exact_pct()}}},
                       {"partial", {{"count", r.partial}, {"percent", r.partial_pct()}}},
                       {"different", {{"count", r.different}, {"percent", r.different_pct()}}},
                       {"couldnt_map", {{"count", r.couldnt_map}, {"percent", r.couldnt_map_pct()}}},
                       {"combined_agreement", combined_agreement(r)}});
    }
    return json{{"rows", doc}}.dump(2);
}

const char* to_string(Placement p) {
    switch (p) {
        case Placement::EquivalentToNode: return "EquivalentToNode";
        case Placement::UnderLeaf: return "UnderLeaf";
        case Placement::UnderNonLeaf: return "UnderNonLeaf";
        case Placement::Unmappable: break;
    }
    return "Unmappable";
}

namespace {

ConceptId resolve_target(const MappingCorrespondence& m, const Taxonomy& t) {
    const ConceptId id{parse_id_text(m.e2.entity_id)};
    if (!id.valid() || !t.contains(id))
        throw UnresolvedTargetError("mapping target '" + m.e2.str() + "' is not a node of the taxonomy");
    return id;
}

}  // namespace

Placement classify_placement(const MappingCorrespondence& m, const Taxonomy& t) {
    if (m.relation == rel::SameAs) {
        resolve_target(m, t);
        return Placement::EquivalentToNode;
    }
    if (m.relation == rel::SubClassOf)
        return t.is_leaf(resolve_target(m, t)) ? Placement::UnderLeaf : Placement::UnderNonLeaf;
    return Placement::Unmappable;
}

std::size_t PlacementReport::count(Placement p) const {
    auto it = by_category.find(p);
    return it == by_category.end() ? 0 : it->second;
}

double PlacementReport::comprehensiveness() const {
    if (mapped == 0) return 0.0;
    return std::round(1000.0 * static_cast<double>(correctly_placed()) / static_cast<double>(mapped)) / 10.0;
}

std::string PlacementReport::comprehensiveness_display() const {
    return std::to_string(percent_rounded(correctly_placed(), mapped)) + "%";
}

std::string PlacementReport::to_text() const {
    std::ostringstream out;
    out << "considered " << total_considered << ", excluded " << excluded << ", mapped " << mapped << '\n';
    for (auto p : {Placement::EquivalentToNode, Placement::UnderLeaf, Placement::UnderNonLeaf, Placement::Unmappable})
        out << std::left << std::setw(18) << to_string(p) << count(p) << '\n';
    out << "correctly placed  " << correctly_placed() << " (" << std::fixed << std::setprecision(1)
        << comprehensiveness() << "%, shown as " << comprehensiveness_display() << ")\n";
    out << "per node (equivalent / subclasses):\n";
    for (const auto& [node, tally] : per_node)
        out << "  " << std::left << std::setw(12) << node.str() << tally.equivalents << " / " << tally.subclasses << '\n';
    out << "missing categories (subclasses placed under non-leaf nodes):\n";
    for (const auto& m : missing_categories) out << "  " << m.label << ": " << m.count << '\n';
    return out.str();
}

std::string PlacementReport::to_json() const {
    json doc;
    doc["total_considered"] = total_considered;
    doc["excluded"] = excluded;
    doc["mapped"] = mapped;
    json cats = json::object();
    for (auto p : {Placement::EquivalentToNode, Placement::UnderLeaf, Placement::UnderNonLeaf, Placement::Unmappable})
        cats[to_string(p)] = count(p);
    doc["categories"] = cats;
    doc["correctly_placed"] = correctly_placed();
    doc["comprehensiveness"] = comprehensiveness();
    doc["comprehensiveness_display"] = comprehensiveness_display();
    json nodes = json::object();
    for (const auto& [node, tally] : per_node)
        nodes[node.str()] = {{"equivalents", tally.equivalents}, {"subclasses", tally.subclasses}};
    doc["per_node"] = nodes;
    json missing = json::array();
    for (const auto& m : missing_categories)
        missing.push_back({{"node", m.node.value}, {"label", m.label}, {"count", m.count}});
    doc["missing_categories"] = missing;
    return doc.dump(2);
}

PlacementReport coverage_report(const MappingStore& mappings, const Taxonomy& t, std::size_t total_considered,
                                std::size_t excluded, const std::map<ConceptId, std::string>& labels) {
    PlacementReport r;
    r.total_considered = total_considered;
    r.excluded = excluded;
    r.mapped = mappings.size();
    for (auto p : {Placement::EquivalentToNode, Placement::UnderLeaf, Placement::UnderNonLeaf, Placement::Unmappable})
        r.by_category[p] = 0;

    std::map<ConceptId, std::size_t> non_leaf;
    for (const auto& m : mappings.all()) {
        const auto p = classify_placement(m, t);
        ++r.by_category[p];
        if (p == Placement::Unmappable) continue;
        const ConceptId node{parse_id_text(m.e2.entity_id)};
        if (p == Placement::EquivalentToNode) {
            ++r.per_node[node].equivalents;
        } else {
            ++r.per_node[node].subclasses;
            if (p == Placement::UnderNonLeaf) ++non_leaf[node];
        }
    }
    for (const auto& [node, n] : non_leaf) {
        auto it = labels.find(node);
        r.missing_categories.push_back({node, it == labels.end() ? node.str() : it->second, n});
    }
    return r;
}

}  // namespace ontolex
