#include <map>
#include <random>
#include <set>
#include <tuple>

#include "doctest.h"
#include "fixtures.hpp"
#include "ontolex/errors.hpp"
#include "ontolex/interchange.hpp"
#include "ontolex/semantics.hpp"
#include "ontolex/taxonomy.hpp"

using namespace ontolex;

namespace {

ConceptId C(std::uint64_t v) { return ConceptId{v}; }

using Labels = std::set<std::string>;

// Reference model: plain label sets, compared with std algorithms.
struct Plain {
    std::vector<std::string> domain, worlds;
    std::map<std::uint64_t, std::vector<Labels>> ext;
};

Plain random_plain(std::mt19937_64& rng, std::size_t concepts) {
    Plain p;
    const auto nd = 1 + rng() % 6, nw = 1 + rng() % 3;
    for (std::size_t i = 0; i < nd; ++i) p.domain.push_back("d" + std::to_string(i));
    for (std::size_t i = 0; i < nw; ++i) p.worlds.push_back("w" + std::to_string(i));
    for (std::uint64_t c = 1; c <= concepts; ++c) {
        auto& per_world = p.ext[c];
        for (std::size_t w = 0; w < nw; ++w) {
            Labels l;
            for (const auto& d : p.domain)
                if (rng() % 2) l.insert(d);
            per_world.push_back(l);
        }
    }
    return p;
}

WorldModel to_model(const Plain& p) {
    WorldModel m(p.domain, p.worlds);
    for (const auto& [c, per_world] : p.ext) {
        m.cover(C(c));
        for (std::size_t w = 0; w < per_world.size(); ++w)
            m.set_extension(C(c), p.worlds[w], std::vector<std::string>(per_world[w].begin(), per_world[w].end()));
    }
    return m;
}

bool plain_subset(const Labels& a, const Labels& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool plain_overlap(const Labels& a, const Labels& b) {
    for (const auto& x : a)
        if (b.count(x)) return true;
    return false;
}

}  // namespace

TEST_CASE("the sample model has overlapping sibling extensions in w1 only") {
    const auto m = WorldModel::load_json_file(fixtures::data_path("worlds.json"));
    Taxonomy t;
    using namespace fixtures::ids;
    t = t.add_node(C(organism)).add_node(C(animal)).add_node(C(plant));
    t = t.set_parent(C(animal), C(organism)).set_parent(C(plant), C(organism));
    const auto fs = check_taxonomy(m, t);
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].rule_id == "DisjointnessViolation");
    CHECK(fs[0].concept_id == C(animal));
    CHECK(fs[0].related == C(plant));
    CHECK(fs[0].world == "w1");
    CHECK(subsumes(C(organism), C(animal), m));
    CHECK_FALSE(subsumes(C(animal), C(organism), m));
    CHECK(admissible_extensions(C(animal), m) == AdmissibleExtensions{{"dog", "euglena"}, {"dog"}});
}

TEST_CASE("uncovered concepts throw on queries and warn in checks") {
    WorldModel m({"a"}, {"w"});
    m.cover(C(1));
    CHECK_THROWS_AS(m.extension(C(2), 0), UncoveredConceptError);
    CHECK_THROWS_AS(subsumes(C(1), C(2), m), UncoveredConceptError);
    CHECK_THROWS_AS(concepts_identical(C(2), C(1), m), UncoveredConceptError);
    CHECK_THROWS_AS(admissible_extensions(C(2), m), UncoveredConceptError);

    Taxonomy t;
    t = t.add_node(C(1)).add_node(C(2)).add_node(C(3)).set_parent(C(2), C(1)).set_parent(C(3), C(1));
    const auto fs = check_taxonomy(m, t);
    REQUIRE(fs.size() == 2);
    for (const auto& f : fs) {
        CHECK(f.rule_id == "UncoveredConcept");
        CHECK(f.severity == Severity::warning);
    }
    CHECK_FALSE(has_errors(fs));
}

TEST_CASE("model construction rejects bad labels") {
    CHECK_THROWS_AS(WorldModel({"a", "a"}, {"w"}), Error);
    CHECK_THROWS_AS(WorldModel({"a"}, {"w", "w"}), Error);
    WorldModel m({"a"}, {"w"});
    m.cover(C(1));
    CHECK_THROWS_AS(m.set_extension(C(1), "v", {"a"}), Error);
    CHECK_THROWS_AS(m.set_extension(C(1), "w", {"b"}), Error);
    CHECK_THROWS_AS(WorldModel::from_json("{\"domain\": [\"a\"], \"worlds\": [\"w\"], \"ext\": {\":1\": {\"w\": [\"zz\"]}}}"),
                    Error);
}

TEST_CASE("missing worlds default to the empty extension") {
    const auto m = WorldModel::from_json(
        R"({"domain": ["a", "b"], "worlds": ["w1", "w2"], "ext": {":7": {"w2": ["a"]}}})");
    CHECK(m.covers(C(7)));
    CHECK(m.extension(C(7), 0).none());
    CHECK(m.labels(m.extension(C(7), 1)) == Labels{"a"});
}

TEST_CASE("subsumption and identity agree with set comparisons") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 500; ++trial) {
        const auto p = random_plain(rng, 4);
        const auto m = to_model(p);
        for (std::uint64_t a = 1; a <= 4; ++a)
            for (std::uint64_t b = 1; b <= 4; ++b) {
                bool sub = true, same = true;
                for (std::size_t w = 0; w < p.worlds.size(); ++w) {
                    sub = sub && plain_subset(p.ext.at(b)[w], p.ext.at(a)[w]);
                    same = same && p.ext.at(a)[w] == p.ext.at(b)[w];
                }
                CHECK(subsumes(C(a), C(b), m) == sub);
                CHECK(concepts_identical(C(a), C(b), m) == same);
                const std::set<Labels> ea(p.ext.at(a).begin(), p.ext.at(a).end());
                const std::set<Labels> eb(p.ext.at(b).begin(), p.ext.at(b).end());
                CHECK(admissible_extensions(C(a), m) == ea);
                CHECK(concepts_identical(C(a), C(b), m, Identity::admissible_sets) == (ea == eb));
                // Pointwise identity implies identity of admissible sets.
                if (same) CHECK(ea == eb);
            }
    }
}

TEST_CASE("taxonomy check matches a brute-force scan") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 300; ++trial) {
        const std::uint64_t n = 2 + rng() % 8;
        const auto p = random_plain(rng, n);
        auto m = to_model(p);
        Taxonomy t;
        std::vector<std::uint64_t> parent(n + 1, 0);
        for (std::uint64_t i = 1; i <= n; ++i) t = t.add_node(C(i));
        for (std::uint64_t i = 2; i <= n; ++i)
            if (rng() % 4) {
                parent[i] = 1 + rng() % (i - 1);
                t = t.set_parent(C(i), C(parent[i]));
            }
        // A few nodes the model does not know about.
        const auto extra = rng() % 3;
        for (std::uint64_t i = 0; i < extra; ++i) {
            t = t.add_node(C(100 + i));
            t = t.set_parent(C(100 + i), C(1 + rng() % n));
        }

        using Key = std::tuple<std::string, std::uint64_t, std::uint64_t, std::string>;
        std::multiset<Key> want;
        for (std::uint64_t i = 0; i < extra; ++i) want.insert({"UncoveredConcept", 100 + i, 0, ""});
        for (std::uint64_t c = 2; c <= n; ++c)
            if (parent[c])
                for (std::size_t w = 0; w < p.worlds.size(); ++w)
                    if (!plain_subset(p.ext.at(c)[w], p.ext.at(parent[c])[w]))
                        want.insert({"SubsumptionViolation", c, parent[c], p.worlds[w]});
        for (std::uint64_t a = 2; a <= n; ++a)
            for (std::uint64_t b = a + 1; b <= n; ++b)
                if (parent[a] && parent[a] == parent[b])
                    for (std::size_t w = 0; w < p.worlds.size(); ++w)
                        if (plain_overlap(p.ext.at(a)[w], p.ext.at(b)[w]))
                            want.insert({"DisjointnessViolation", a, b, p.worlds[w]});

        const auto serial = check_taxonomy(m, t, Execution::serial);
        CHECK(serial == check_taxonomy(m, t, Execution::parallel));
        std::multiset<Key> got;
        for (const auto& f : serial)
            got.insert({f.rule_id, f.concept_id.value, f.related ? f.related->value : 0, f.world.value_or("")});
        CHECK(got == want);
    }
}

TEST_CASE("model JSON round trip") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = to_model(random_plain(rng, 5));
        const auto back = WorldModel::from_json(m.to_json());
        CHECK(back.to_json() == m.to_json());
        CHECK(back.covered() == m.covered());
        for (auto c : m.covered())
            for (std::size_t w = 0; w < m.world_count(); ++w) CHECK(back.extension(c, w) == m.extension(c, w));
    }
}

TEST_CASE("synonym classes follow synsets") {
    const auto store = import_interchange_file(fixtures::data_path("ontology.canonical.xml"));
    const auto classes = synonym_classes(store);
    CHECK(classes.size() == store.concepts().size());
    const auto& heartburn = classes.at(C(fixtures::ids::heartburn));
    CHECK(heartburn.size() == store.get_concept(C(fixtures::ids::heartburn)).synset.size());
    CHECK(std::find(heartburn.begin(), heartburn.end(), "حُمُوضَة") != heartburn.end());
}
