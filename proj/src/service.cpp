#include "ontolex/service.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "httplib.h"
#include "ontolex/errors.hpp"
#include "ontolex/model.hpp"
#include "ontolex/utf8.hpp"

namespace ontolex {

namespace {

constexpr std::string_view kPrefix = "/concept/";
constexpr std::string_view kJson = "application/json; charset=utf-8";
constexpr std::string_view kNTriples = "application/n-triples";

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Canonical decimal id: no leading zeros, non-zero, fits in 64 bits.
std::optional<std::uint64_t> canonical_id(std::string_view s) {
    if (!all_digits(s) || s[0] == '0') return std::nullopt;
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

bool query_has_term_flag(std::string_view query) {
    if (query.empty()) return false;
    for (auto part : split(query.substr(1), '&'))
        if (part == "term=1") return true;
    return false;
}

std::string lower_camel(std::string_view code) {
    std::string s(code);
    if (!s.empty() && s[0] >= 'A' && s[0] <= 'Z') s[0] = static_cast<char>(s[0] - 'A' + 'a');
    return s;
}

const char* lang_of(std::string_view text) { return utf8::contains_arabic(text) ? "ar" : "en"; }

}  // namespace

bool Route::forced_term() const { return query_has_term_flag(query); }

Route Route::concept_at(std::uint64_t id) {
    Route r;
    r.kind = Kind::concept_by_id;
    r.id = id;
    return r;
}

Route Route::profile_of(std::uint64_t id) {
    Route r;
    r.kind = Kind::profile;
    r.id = id;
    return r;
}

Route Route::relation_of(std::string relation, std::uint64_t id) {
    Route r;
    r.kind = Kind::relation_query;
    r.relation = std::move(relation);
    r.id = id;
    return r;
}

Route Route::term_lookup(std::string term) {
    Route r;
    r.kind = Kind::term_lookup;
    r.segment = percent_encode(term);
    if (all_digits(term)) r.query = "?term=1";
    r.term = std::move(term);
    return r;
}

const char* to_string(Route::Kind k) {
    switch (k) {
    case Route::Kind::concept_by_id: return "ConceptById";
    case Route::Kind::relation_query: return "RelationQuery";
    case Route::Kind::term_lookup: return "TermLookup";
    case Route::Kind::profile: return "Profile";
    }
    return "?";
}

const std::vector<std::string>& relation_route_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v = {"instances", "parts", "subtypes", "supertype"};
        for (auto code : known_relation_codes()) {
            v.push_back(utf8::ascii_lower(code));
        }
        return v;
    }();
    return names;
}

std::string percent_encode(std::string_view text) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : text) {
        if (std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~') {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 15];
        }
    }
    return out;
}

std::string percent_decode(std::string_view text) {
    auto hexval = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    std::string out;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '%' && i + 2 < text.size()) {
            int hi = hexval(text[i + 1]), lo = hexval(text[i + 2]);
            if (hi >= 0 && lo >= 0) {
                out += static_cast<char>(hi * 16 + lo);
                i += 2;
                continue;
            }
        }
        out += text[i];
    }
    return out;
}

Route resolve_route(std::string_view path) {
    std::string_view query;
    if (auto q = path.find('?'); q != std::string_view::npos) {
        query = path.substr(q);
        path = path.substr(0, q);
    }
    if (path.substr(0, kPrefix.size()) != kPrefix) throw NotFoundError("not a concept route: " + std::string(path));
    const auto segs = split(path.substr(kPrefix.size()), '/');
    const bool forced = query_has_term_flag(query);
    Route r;
    r.query = std::string(query);

    if (segs.size() == 1) {
        const auto seg = segs[0];
        if (seg.empty()) throw NotFoundError("empty concept route");
        if (all_digits(seg) && !forced) {
            auto id = canonical_id(seg);
            if (!id) throw NotFoundError("non-canonical concept id: " + std::string(seg));
            r.kind = Route::Kind::concept_by_id;
            r.id = *id;
            return r;
        }
        r.kind = Route::Kind::term_lookup;
        r.segment = std::string(seg);
        r.term = percent_decode(seg);
        return r;
    }
    if (segs.size() == 2) {
        if (segs[1] == "profile") {
            if (auto id = canonical_id(segs[0])) {
                r.kind = Route::Kind::profile;
                r.id = *id;
                return r;
            }
        } else if (auto id = canonical_id(segs[1])) {
            const auto& names = relation_route_names();
            if (std::find(names.begin(), names.end(), segs[0]) != names.end()) {
                r.kind = Route::Kind::relation_query;
                r.relation = std::string(segs[0]);
                r.id = *id;
                return r;
            }
            throw NotFoundError("unknown relation: " + std::string(segs[0]));
        }
    }
    throw NotFoundError("no route for " + std::string(path));
}

std::string print_route(const Route& r) {
    std::string out(kPrefix);
    switch (r.kind) {
    case Route::Kind::concept_by_id: out += std::to_string(r.id); break;
    case Route::Kind::profile: out += std::to_string(r.id) + "/profile"; break;
    case Route::Kind::relation_query: out += r.relation + "/" + std::to_string(r.id); break;
    case Route::Kind::term_lookup: out += r.segment; break;
    }
    return out + r.query;
}

std::shared_ptr<const Snapshot> Snapshot::make(Store store, MappingStore mappings) {
    auto snap = std::make_shared<Snapshot>();
    snap->taxonomy = Taxonomy::from_store(store);
    snap->index = build_index(store);
    snap->store = std::move(store);
    snap->mappings = std::move(mappings);
    return snap;
}

std::string concept_iri(std::string_view domain, std::uint64_t id) {
    return "http://" + std::string(domain) + std::string(kPrefix) + std::to_string(id);
}

namespace {

using ojson = nlohmann::ordered_json;

ojson link(std::string_view domain, std::uint64_t id) {
    return ojson{{"id", id}, {"uri", concept_iri(domain, id)}};
}

std::string route_uri(std::string_view domain, const Route& r) {
    return "http://" + std::string(domain) + print_route(r);
}

bool entity_exists(const Snapshot& snap, std::uint64_t id) {
    return snap.store.find_concept(ConceptId{id}) || snap.store.find_individual(IndividualId{id});
}

ojson sense_json(const Sense& s) {
    ojson j{{"id", s.id.value}, {"term", s.term}, {"lang", lang_of(s.term)}, {"pos", s.pos}};
    if (!s.area.empty()) j["area"] = s.area;
    if (!s.era.empty()) j["era"] = s.era;
    if (!s.lexicalization_type.empty()) j["lexicalizationType"] = s.lexicalization_type;
    return j;
}

bool refers_to(const EntityRef& e, std::uint64_t id) {
    return e.resource == kOntologyResource && parse_id_text(e.entity_id) == id;
}

ojson profile_json(const OntologicalProfile& p) {
    return ojson{{"distinguishingCharacteristics", p.distinguishing_characteristics},
                 {"exampleInstances", p.example_instances},
                 {"identityCriteria", p.identity_criteria},
                 {"rigidity", to_string(p.rigidity)},
                 {"formalAxioms", p.formal_axioms},
                 {"benchmarkLevel", to_string(p.benchmark_level)},
                 {"rationale", p.rationale}};
}

}  // namespace

ojson render_concept(ConceptId id, const Snapshot& snap, std::string_view domain) {
    const auto* c = snap.store.find_concept(id);
    if (!c) throw NotFoundError("no concept " + id.str());

    ojson doc;
    doc["id"] = id.value;
    doc["uri"] = concept_iri(domain, id.value);
    ojson synset = ojson::array();
    for (const auto& s : c->synset) synset.push_back(sense_json(s));
    doc["synset"] = std::move(synset);
    doc["gloss"] = c->gloss;
    doc["example"] = c->example_sentence ? ojson(*c->example_sentence) : ojson(nullptr);
    doc["area"] = c->area;
    doc["era"] = c->era;
    doc["status"] = to_string(c->status);
    doc["gapFiller"] = c->gap_filler;
    doc["parent"] = c->parent ? link(domain, c->parent->value) : ojson(nullptr);

    // Grouped by relation type; targets missing from the snapshot are listed
    // without a uri so that every emitted uri resolves.
    std::map<std::string, ojson> grouped;
    for (const auto& r : c->relations) {
        auto& arr = grouped[r.type];
        if (arr.is_null()) arr = ojson::array();
        if (entity_exists(snap, r.target.value))
            arr.push_back(link(domain, r.target.value));
        else
            arr.push_back(ojson{{"id", r.target.value}, {"dangling", true}});
    }
    ojson relations = ojson::object();
    for (auto& [type, arr] : grouped) relations[type] = std::move(arr);
    doc["relations"] = std::move(relations);

    ojson links;
    links["subtypes"] = route_uri(domain, Route::relation_of("subtypes", id.value));
    links["instances"] = route_uri(domain, Route::relation_of("instances", id.value));
    links["parts"] = route_uri(domain, Route::relation_of("parts", id.value));
    if (c->parent) links["supertype"] = route_uri(domain, Route::relation_of("supertype", id.value));
    doc["links"] = std::move(links);
    doc["profile"] = ojson{{"uri", route_uri(domain, Route::profile_of(id.value))}};

    ojson mappings = ojson::array();
    for (const auto& m : snap.mappings.all()) {
        const EntityRef* other = nullptr;
        if (refers_to(m.e1, id.value))
            other = &m.e2;
        else if (refers_to(m.e2, id.value))
            other = &m.e1;
        if (!other) continue;
        mappings.push_back(ojson{{"resource", other->resource},
                                 {"entityId", other->entity_id},
                                 {"relation", m.relation},
                                 {"direction", other == &m.e2 ? "outgoing" : "incoming"},
                                 {"precision", m.precision},
                                 {"confidence", m.confidence},
                                 {"annotator", m.annotator}});
    }
    doc["mappings"] = std::move(mappings);
    return doc;
}

ojson render_individual(IndividualId id, const Snapshot& snap, std::string_view domain) {
    const auto* ind = snap.store.find_individual(id);
    if (!ind) throw NotFoundError("no individual " + id.str());
    ojson doc;
    doc["id"] = id.value;
    doc["uri"] = concept_iri(domain, id.value);
    ojson names = ojson::array();
    for (const auto& s : ind->names) names.push_back(sense_json(s));
    doc["names"] = std::move(names);
    doc["instanceOf"] = link(domain, ind->instance_of.value);
    return doc;
}

namespace {

// IRIREF forbids controls, space and <>"{}|^`\ ; escape them as %XX.
std::string iri_safe(std::string_view iri) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : iri) {
        if (c <= 0x20 || std::string_view("<>\"{}|^`\\").find(static_cast<char>(c)) != std::string_view::npos) {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 15];
        } else {
            out += static_cast<char>(c);
        }
    }
    return out;
}

std::string nt_literal(std::string_view text, std::string_view lang) {
    std::string out = "\"";
    for (char c : text) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        default: out += c;
        }
    }
    out += "\"@";
    out += lang;
    return out;
}

std::string external_iri(std::string_view domain, const EntityRef& e) {
    if (e.resource == kOntologyResource) {
        if (auto id = parse_id_text(e.entity_id)) return concept_iri(domain, id);
    }
    if (e.entity_id.rfind("http://", 0) == 0 || e.entity_id.rfind("https://", 0) == 0) return iri_safe(e.entity_id);
    return "http://" + std::string(domain) + "/resource/" + percent_encode(e.resource) + "/" +
           percent_encode(e.entity_id);
}

}  // namespace

std::string export_triples(ConceptId id, const Snapshot& snap, std::string_view domain) {
    const auto* c = snap.store.find_concept(id);
    if (!c) throw NotFoundError("no concept " + id.str());

    const std::string ns = "http://" + std::string(domain) + "/ns#";
    const std::string subject = "<" + concept_iri(domain, id.value) + ">";
    auto iri = [](const std::string& s) { return "<" + s + ">"; };
    std::vector<std::string> lines;
    auto emit = [&](const std::string& s, const std::string& p, const std::string& o) {
        lines.push_back(s + " " + p + " " + o + " .");
    };

    for (const auto& s : c->synset) emit(subject, iri(ns + "lexicalization"), nt_literal(s.term, lang_of(s.term)));
    if (!c->gloss.empty())
        emit(subject, iri("http://www.w3.org/2004/02/skos/core#definition"), nt_literal(c->gloss, lang_of(c->gloss)));
    if (c->parent) emit(subject, iri(ns + lower_camel(rel::SubTypeOf)), iri(concept_iri(domain, c->parent->value)));
    for (const auto& r : c->relations)
        emit(subject, iri(ns + lower_camel(r.type)), iri(concept_iri(domain, r.target.value)));
    for (const auto& m : snap.mappings.all()) {
        const bool out = refers_to(m.e1, id.value);
        if (!out && !refers_to(m.e2, id.value)) continue;
        const auto pred = m.relation == rel::SameAs ? iri("http://www.w3.org/2002/07/owl#sameAs")
                                                    : iri(ns + lower_camel(m.relation));
        const auto other = iri(external_iri(domain, out ? m.e2 : m.e1));
        if (out)
            emit(subject, pred, other);
        else
            emit(other, pred, subject);
    }
    std::sort(lines.begin(), lines.end());
    std::string text;
    for (const auto& l : lines) text += l + "\n";
    return text;
}

Service::Service(std::shared_ptr<const Snapshot> snap, std::string domain)
    : snap_(std::move(snap)), domain_(std::move(domain)) {
    if (!snap_) throw Error("service needs a snapshot");
}

void Service::replace(std::shared_ptr<const Snapshot> snap) {
    if (!snap) throw Error("service needs a snapshot");
    std::lock_guard lock(mu_);
    snap_ = std::move(snap);
}

std::shared_ptr<const Snapshot> Service::snapshot() const {
    std::lock_guard lock(mu_);
    return snap_;
}

namespace {

Response json_response(int status, const ojson& body) {
    return Response{status, std::string(kJson), body.dump(2) + "\n"};
}

Response error_response(int status, const std::string& message) {
    return json_response(status, ojson{{"error", message}});
}

bool wants_triples(std::string_view accept) { return accept.find(kNTriples) != std::string_view::npos; }

}  // namespace

Response Service::handle(std::string_view target, std::string_view accept) const {
    const auto snap = snapshot();
    try {
        return dispatch(resolve_route(target), *snap, accept);
    } catch (const NotFoundError& e) {
        return error_response(404, e.what());
    } catch (const std::exception& e) {
        return error_response(500, e.what());
    }
}

Response Service::dispatch(const Route& r, const Snapshot& snap, std::string_view accept) const {
    const auto& store = snap.store;
    switch (r.kind) {
    case Route::Kind::concept_by_id: {
        if (store.find_concept(ConceptId{r.id})) {
            if (wants_triples(accept))
                return Response{200, std::string(kNTriples), export_triples(ConceptId{r.id}, snap, domain_)};
            return json_response(200, render_concept(ConceptId{r.id}, snap, domain_));
        }
        if (store.find_individual(IndividualId{r.id})) {
            if (wants_triples(accept)) return error_response(406, "triples are served for concepts only");
            return json_response(200, render_individual(IndividualId{r.id}, snap, domain_));
        }
        throw NotFoundError("no concept or individual " + std::to_string(r.id));
    }
    case Route::Kind::profile: {
        const auto* c = store.find_concept(ConceptId{r.id});
        if (!c) throw NotFoundError("no concept " + std::to_string(r.id));
        ojson doc{{"id", r.id}, {"uri", concept_iri(domain_, r.id)}, {"profile", profile_json(c->profile)}};
        return json_response(200, doc);
    }
    case Route::Kind::relation_query: {
        const ConceptId id{r.id};
        const auto* c = store.find_concept(id);
        if (!c) throw NotFoundError("no concept " + std::to_string(r.id));
        std::set<std::uint64_t> targets;
        if (r.relation == "instances") {
            for (const auto& [iid, ind] : store.individuals())
                if (ind.instance_of == id) targets.insert(iid.value);
        } else if (r.relation == "parts") {
            for (const auto& rel : c->relations)
                if (rel.type == rel::HasPart) targets.insert(rel.target.value);
            for (const auto& [cid, other] : store.concepts())
                for (const auto& rel : other.relations)
                    if (rel.type == rel::PartOf && rel.target == id) targets.insert(cid.value);
        } else if (r.relation == "subtypes") {
            for (auto child : snap.taxonomy.children(id)) targets.insert(child.value);
        } else {
            if ((r.relation == "supertype" || r.relation == "subtypeof") && c->parent) targets.insert(c->parent->value);
            for (const auto& rel : c->relations) {
                if (utf8::ascii_lower(rel.type) == r.relation) targets.insert(rel.target.value);
            }
        }
        ojson results = ojson::array();
        for (auto t : targets)
            if (entity_exists(snap, t)) results.push_back(link(domain_, t));
        ojson doc{{"id", r.id}, {"uri", concept_iri(domain_, r.id)}, {"relation", r.relation},
                  {"results", std::move(results)}};
        return json_response(200, doc);
    }
    case Route::Kind::term_lookup: {
        ojson concepts = ojson::array(), individuals = ojson::array();
        std::set<std::uint64_t> seen;
        for (const auto& hit : query(r.term, snap.index)) {
            const auto& e = hit.entry;
            if (e.concept_id && seen.insert(e.concept_id->value).second) {
                auto l = link(domain_, e.concept_id->value);
                l["term"] = e.term;
                concepts.push_back(std::move(l));
            } else if (e.individual && seen.insert(e.individual->value).second) {
                auto l = link(domain_, e.individual->value);
                l["term"] = e.term;
                individuals.push_back(std::move(l));
            }
        }
        if (concepts.empty() && individuals.empty()) throw NotFoundError("no concept lexicalized as " + r.term);
        ojson doc{{"term", r.term}, {"concepts", std::move(concepts)}, {"individuals", std::move(individuals)}};
        return json_response(200, doc);
    }
    }
    throw NotFoundError("unroutable");
}

struct HttpServer::Impl {
    const Service& service;
    httplib::Server server;

    explicit Impl(const Service& s) : service(s) {
        server.Get(".*", [this](const httplib::Request& req, httplib::Response& res) {
            const auto target = req.target.empty() ? req.path : req.target;
            const auto out = service.handle(target, req.get_header_value("Accept"));
            res.status = out.status;
            res.set_content(out.body, out.content_type);
        });
    }
};

HttpServer::HttpServer(const Service& service) : impl_(std::make_unique<Impl>(service)) {}
HttpServer::~HttpServer() = default;

bool HttpServer::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }
int HttpServer::bind_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }
bool HttpServer::serve_bound() { return impl_->server.listen_after_bind(); }
void HttpServer::stop() { impl_->server.stop(); }
void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

std::pair<std::string, int> parse_listen_address(std::string_view addr) {
    const auto colon = addr.rfind(':');
    if (colon == std::string_view::npos) throw Error("listen address needs host:port: " + std::string(addr));
    std::string host(addr.substr(0, colon));
    if (host.empty()) host = "0.0.0.0";
    const auto port_text = addr.substr(colon + 1);
    int port = 0;
    auto [p, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
    if (ec != std::errc{} || p != port_text.data() + port_text.size() || port < 0 || port > 65535)
        throw Error("bad port in listen address: " + std::string(addr));
    return {host, port};
}

}  // namespace ontolex
