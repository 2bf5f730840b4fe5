#include "ontolex/interchange.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ontolex/errors.hpp"
#include "xml.hpp"

namespace ontolex {

namespace {

std::string attr_or_empty(const xml::Element& el, std::string_view key) {
    const auto* v = el.attribute(key);
    return v ? *v : std::string{};
}

std::uint64_t required_id(const xml::Element& el, std::string_view key) {
    const auto* v = el.attribute(key);
    if (!v) throw ParseError("<" + el.name + "> is missing attribute " + std::string(key), el.line, el.column);
    const auto id = parse_id_text(*v);
    if (id == 0) throw ParseError("malformed id '" + *v + "' in attribute " + std::string(key), el.line, el.column);
    return id;
}

bool parse_bool(const xml::Element& el, std::string_view key) {
    const auto v = attr_or_empty(el, key);
    if (v.empty() || v == "false" || v == "0") return false;
    if (v == "true" || v == "1") return true;
    throw ParseError("malformed boolean '" + v + "'", el.line, el.column);
}

template <class F>
auto at_element(const xml::Element& el, F&& f) {
    try {
        return f();
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(e.what(), el.line, el.column);
    }
}

Sense read_sense(const xml::Element& el) {
    Sense s;
    if (el.attribute("ID")) s.id = SenseId{required_id(el, "ID")};
    s.term = attr_or_empty(el, "Term");
    s.area = attr_or_empty(el, "area");
    s.era = attr_or_empty(el, "era");
    s.lexicalization_type = attr_or_empty(el, "lexicalizationType");
    if (const auto* pos = el.attribute("pos"); pos && !pos->empty()) s.pos = *pos;
    return s;
}

OntologicalProfile read_profile(const xml::Element& el) {
    OntologicalProfile p;
    at_element(el, [&] {
        p.rigidity = parse_rigidity(attr_or_empty(el, "rigidity"));
        p.benchmark_level = parse_benchmark_level(attr_or_empty(el, "benchmarkLevel"));
        return 0;
    });
    for (const auto& child : el.children) {
        if (child.is("DistinguishingCharacteristics")) p.distinguishing_characteristics = child.text;
        else if (child.is("ExampleInstance")) p.example_instances.push_back(child.text);
        else if (child.is("IdentityCriteria")) p.identity_criteria = child.text;
        else if (child.is("FormalAxiom")) p.formal_axioms.push_back(child.text);
        else if (child.is("Rationale")) p.rationale = child.text;
    }
    return p;
}

Concept read_concept(const xml::Element& el) {
    Concept c;
    c.id = ConceptId{required_id(el, "conceptID")};
    c.area = attr_or_empty(el, "area");
    c.era = attr_or_empty(el, "era");
    c.status = at_element(el, [&] { return parse_status(attr_or_empty(el, "status")); });
    c.gap_filler = parse_bool(el, "gapFiller");
    if (el.attribute("parent")) c.parent = ConceptId{required_id(el, "parent")};
    for (const auto& child : el.children) {
        if (child.is("Gloss")) {
            c.gloss = child.text;
        } else if (child.is("Example")) {
            c.example_sentence = child.text;
        } else if (child.is("Synset")) {
            for (const auto& s : child.children)
                if (s.is("Sense")) c.synset.push_back(read_sense(s));
        } else if (child.is("Sense")) {
            c.synset.push_back(read_sense(child));
        } else if (child.is("Relation")) {
            Relation r;
            r.type = attr_or_empty(child, "type");
            if (r.type.empty()) throw ParseError("<Relation> is missing attribute type", child.line, child.column);
            r.target = ConceptId{required_id(child, "target")};
            c.relations.push_back(std::move(r));
        } else if (child.is("Profile")) {
            c.profile = read_profile(child);
        }
    }
    return c;
}

Individual read_individual(const xml::Element& el) {
    Individual ind;
    ind.id = IndividualId{required_id(el, "ID")};
    ind.instance_of = ConceptId{required_id(el, "instanceOf")};
    for (const auto& child : el.children) {
        if (child.is("Sense")) {
            ind.names.push_back(read_sense(child));
        } else if (child.is("Synset")) {
            for (const auto& s : child.children)
                if (s.is("Sense")) ind.names.push_back(read_sense(s));
        }
    }
    return ind;
}

void add_record(StoreBuilder& builder, const xml::Element& el) {
    if (el.is("Concept"))
        builder.add_concept(read_concept(el));
    else if (el.is("Individual"))
        builder.add_individual(read_individual(el));
}

// Wraps DuplicateIdError with the element position while keeping its type.
template <class F>
void with_position(const xml::Element& el, F&& f) {
    try {
        f();
    } catch (const DuplicateIdError& e) {
        throw DuplicateIdError(std::string(e.what()) + " (line " + std::to_string(el.line) + ")");
    }
}

void write_sense(std::ostringstream& out, const Sense& s, const char* indent) {
    out << indent << "<Sense ID=\"" << format_id_text(s.id.value) << "\" Term=\"" << xml::escape_attribute(s.term)
        << "\" area=\"" << xml::escape_attribute(s.area) << "\" era=\"" << xml::escape_attribute(s.era)
        << "\" lexicalizationType=\"" << xml::escape_attribute(s.lexicalization_type) << "\" pos=\""
        << xml::escape_attribute(s.pos) << "\"/>\n";
}

std::vector<Sense> by_sense_id(std::vector<Sense> senses) {
    std::stable_sort(senses.begin(), senses.end(), [](const Sense& a, const Sense& b) { return a.id < b.id; });
    return senses;
}

void write_text_element(std::ostringstream& out, const char* indent, const char* name, const std::string& text) {
    out << indent << '<' << name << '>' << xml::escape_text(text) << "</" << name << ">\n";
}

}  // namespace

Store import_interchange(std::string_view bytes) {
    const auto doc = xml::parse(bytes);
    StoreBuilder builder;
    for (const auto& top : doc.children) {
        if (top.is("Ontology")) {
            for (const auto& el : top.children) with_position(el, [&] { add_record(builder, el); });
        } else {
            with_position(top, [&] { add_record(builder, top); });
        }
    }
    return builder.build();
}

Store import_interchange_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return import_interchange(ss.str());
}

std::string export_interchange(const Store& store) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    if (store.empty()) {
        out << "<Ontology/>\n";
        return out.str();
    }
    out << "<Ontology>\n";
    for (const auto& [id, c] : store.concepts()) {
        out << "  <Concept conceptID=\"" << format_id_text(id.value) << "\" area=\"" << xml::escape_attribute(c.area)
            << "\" era=\"" << xml::escape_attribute(c.era) << "\" status=\"" << to_string(c.status)
            << "\" gapFiller=\"" << (c.gap_filler ? "true" : "false") << '"';
        if (c.parent) out << " parent=\"" << format_id_text(c.parent->value) << '"';
        out << ">\n";
        write_text_element(out, "    ", "Gloss", c.gloss);
        if (c.example_sentence) write_text_element(out, "    ", "Example", *c.example_sentence);
        if (c.synset.empty()) {
            out << "    <Synset/>\n";
        } else {
            out << "    <Synset>\n";
            for (const auto& s : by_sense_id(c.synset)) write_sense(out, s, "      ");
            out << "    </Synset>\n";
        }
        for (const auto& r : c.relations)
            out << "    <Relation type=\"" << xml::escape_attribute(r.type) << "\" target=\""
                << format_id_text(r.target.value) << "\"/>\n";
        if (!c.profile.is_default()) {
            const auto& p = c.profile;
            out << "    <Profile rigidity=\"" << to_string(p.rigidity) << "\" benchmarkLevel=\""
                << to_string(p.benchmark_level) << "\">\n";
            write_text_element(out, "      ", "DistinguishingCharacteristics", p.distinguishing_characteristics);
            for (const auto& e : p.example_instances) write_text_element(out, "      ", "ExampleInstance", e);
            write_text_element(out, "      ", "IdentityCriteria", p.identity_criteria);
            for (const auto& a : p.formal_axioms) write_text_element(out, "      ", "FormalAxiom", a);
            write_text_element(out, "      ", "Rationale", p.rationale);
            out << "    </Profile>\n";
        }
        out << "  </Concept>\n";
    }
    for (const auto& [id, ind] : store.individuals()) {
        out << "  <Individual ID=\"" << format_id_text(id.value) << "\" instanceOf=\""
            << format_id_text(ind.instance_of.value) << "\">\n";
        for (const auto& s : by_sense_id(ind.names)) write_sense(out, s, "    ");
        out << "  </Individual>\n";
    }
    out << "</Ontology>\n";
    return out.str();
}

void export_interchange_file(const Store& store, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << export_interchange(store);
}

}  // namespace ontolex
