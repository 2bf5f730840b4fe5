#pragma once
// Read-only HTTP face of a store snapshot: /concept/... routes, JSON concept
// documents and N-Triples export.

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ontolex/ids.hpp"
#include "ontolex/mapping.hpp"
#include "ontolex/search.hpp"
#include "ontolex/store.hpp"
#include "ontolex/taxonomy.hpp"

namespace ontolex {

struct Route {
    enum class Kind { concept_by_id, relation_query, term_lookup, profile };

    Kind kind = Kind::concept_by_id;
    std::uint64_t id = 0;
    std::string relation;  // route name, lowercase
    std::string term;      // decoded term
    std::string segment;   // term segment exactly as it appeared in the path
    std::string query;     // "?..." or empty, kept verbatim

    bool forced_term() const;  // query carries term=1

    static Route concept_at(std::uint64_t id);
    static Route profile_of(std::uint64_t id);
    static Route relation_of(std::string relation, std::uint64_t id);
    // Percent-encodes the term; all-digit terms get the ?term=1 escape.
    static Route term_lookup(std::string term);

    friend bool operator==(const Route&, const Route&) = default;
};

const char* to_string(Route::Kind k);

// Relation names accepted in /concept/{relation}/{id}: the portal names
// (instances, parts, subtypes, supertype) plus every relation code in
// lowercase.
const std::vector<std::string>& relation_route_names();

// Parses a path (optionally with a query string) starting with /concept/.
// All-digit segments are ids unless ?term=1 is given. Throws NotFoundError
// for anything that is not a route, including unknown relation names and
// non-canonical ids such as "007".
Route resolve_route(std::string_view path);

// Inverse of resolve_route.
std::string print_route(const Route& r);

std::string percent_encode(std::string_view text);
std::string percent_decode(std::string_view text);  // malformed escapes stay literal

// Everything one request needs, built once and shared read-only.
struct Snapshot {
    Store store;
    Taxonomy taxonomy;
    SearchIndex index;
    MappingStore mappings;

    static std::shared_ptr<const Snapshot> make(Store store, MappingStore mappings = {});
};

// http://{domain}/concept/{id}
std::string concept_iri(std::string_view domain, std::uint64_t id);

// JSON concept document. Throws NotFoundError for unknown ids.
nlohmann::ordered_json render_concept(ConceptId id, const Snapshot& snap, std::string_view domain);
nlohmann::ordered_json render_individual(IndividualId id, const Snapshot& snap, std::string_view domain);

// Sorted N-Triples for one concept: a triple per sense, gloss, parent link,
// relation and mapping correspondence touching it. Throws NotFoundError.
std::string export_triples(ConceptId id, const Snapshot& snap, std::string_view domain);

struct Response {
    int status = 200;
    std::string content_type;
    std::string body;
};

// Thread-safe: handle() reads whichever snapshot was current when it
// started; replace() swaps atomically.
class Service {
public:
    Service(std::shared_ptr<const Snapshot> snap, std::string domain);

    Response handle(std::string_view target, std::string_view accept = {}) const;

    void replace(std::shared_ptr<const Snapshot> snap);
    std::shared_ptr<const Snapshot> snapshot() const;
    const std::string& domain() const { return domain_; }

private:
    Response dispatch(const Route& r, const Snapshot& snap, std::string_view accept) const;

    mutable std::mutex mu_;
    std::shared_ptr<const Snapshot> snap_;
    std::string domain_;
};

// Minimal GET-only HTTP server around a Service.
class HttpServer {
public:
    explicit HttpServer(const Service& service);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    // Binds and blocks until stop(). Returns false if binding fails.
    bool listen(const std::string& host, int port);
    // Binds to a free port and returns it, without serving yet.
    int bind_any_port(const std::string& host);
    // Serves on a socket bound by bind_any_port; blocks until stop().
    bool serve_bound();
    void stop();
    void wait_until_ready() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// "host:port" or ":port"; throws Error when malformed.
std::pair<std::string, int> parse_listen_address(std::string_view addr);

}  // namespace ontolex
