// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit on any
// failure. Expected values are fixed reference numbers or come from brute
// force computed here, never from the library under test.

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "ontolex/errors.hpp"
#include "ontolex/gloss_lint.hpp"
#include "ontolex/interchange.hpp"
#include "ontolex/mapping.hpp"
#include "ontolex/search.hpp"
#include "ontolex/semantics.hpp"
#include "ontolex/service.hpp"
#include "ontolex/taxonomy.hpp"

using namespace ontolex;
using Clock = std::chrono::steady_clock;

namespace {

struct Failure {
    std::string why;
};

void expect(bool ok, const std::string& why) {
    if (!ok) throw Failure{why};
}

template <class T>
std::string show(const T& v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

// ---- Table 1 and combined agreement -------------------------------------

struct AgreementCase {
    const char* label;
    std::size_t exact, partial, different, couldnt;
    int pct[4];
    int combined;
};

const AgreementCase kAgreementCases[] = {
    {"A1 vs. A2", 784, 291, 481, 540, {50, 19, 31, 35}, 69},
    {"A1 vs. Reference", 1175, 215, 390, 316, {66, 12, 22, 18}, 78},
    {"A2 vs. Reference", 1218, 187, 305, 386, {71, 11, 18, 23}, 82},
};

AgreementRow run_row(const AgreementCase& r) {
    auto f = fixtures::agreement_fixture(r.exact, r.partial, r.different, r.couldnt);
    return agreement_stats(f.a, f.b, f.rules, f.universe, r.label);
}

void agreement_percentages() {
    for (const auto& r : kAgreementCases) {
        const auto row = run_row(r);
        expect(row.exact == r.exact && row.partial == r.partial && row.different == r.different &&
                   row.couldnt_map == r.couldnt,
               std::string(r.label) + ": counts " + show(row.exact) + "/" + show(row.partial) + "/" +
                   show(row.different) + "; " + show(row.couldnt_map));
        const int got[4] = {row.exact_pct(), row.partial_pct(), row.different_pct(), row.couldnt_map_pct()};
        for (int i = 0; i < 4; ++i)
            expect(got[i] == r.pct[i], std::string(r.label) + ": column " + show(i) + " is " + show(got[i]) +
                                           ", expected " + show(r.pct[i]));
    }
}

void combined() {
    for (const auto& r : kAgreementCases) {
        const int got = combined_agreement(run_row(r));
        expect(got == r.combined, std::string(r.label) + ": " + show(got) + "%, expected " + show(r.combined) + "%");
    }
}

// ---- Table 2 ------------------------------------------------------------

void relation_histogram_rows() {
    const auto h = relation_histogram(fixtures::histogram_fixture());
    const std::vector<std::pair<std::string, std::size_t>> expected = {{"SameAs", 11400},
                                                                       {"SubClassOf/SuperClassOf", 1050},
                                                                       {"PartOf/HasPart", 100},
                                                                       {"InstanceOf/Type", 770},
                                                                       {"Similar", 125}};
    expect(h.grouped() == expected, "grouped rows differ");
    expect(h.total == 13445, "total " + show(h.total));
}

// ---- Coverage -----------------------------------------------------------

void coverage() {
    const auto store = import_interchange_file(fixtures::data_path("ontology.canonical.xml"));
    const auto t = Taxonomy::from_store(store);
    std::map<ConceptId, std::string> labels;
    for (const auto& [id, c] : store.concepts())
        for (const auto& s : c.synset)
            if (s.lexicalization_type == ":English") labels[id] = s.term;
    const auto r = coverage_report(fixtures::coverage_fixture(), t, 2100, 270, labels);
    expect(r.mapped == 1830, "mapped " + show(r.mapped));
    expect(r.count(Placement::EquivalentToNode) == 40, "equivalents " + show(r.count(Placement::EquivalentToNode)));
    expect(r.count(Placement::UnderLeaf) == 1615, "under leaf " + show(r.count(Placement::UnderLeaf)));
    expect(r.count(Placement::UnderNonLeaf) == 175, "under non-leaf " + show(r.count(Placement::UnderNonLeaf)));
    expect(r.correctly_placed() == 1655, "correctly placed " + show(r.correctly_placed()));
    expect(std::abs(r.comprehensiveness() - 90.4) < 1e-9, "comprehensiveness " + show(r.comprehensiveness()));
    expect(r.comprehensiveness_display() == "90%", "display " + r.comprehensiveness_display());

    const std::map<std::string, std::size_t> named = {{"physical object", 30},
                                                      {"event", 4},
                                                      {"dependent entity", 15},
                                                      {"abstract", 9},
                                                      {"information entity", 107}};
    std::map<std::string, std::size_t> got;
    std::size_t total = 0;
    for (const auto& m : r.missing_categories) {
        got[m.label] = m.count;
        total += m.count;
    }
    for (const auto& [label, n] : named)
        expect(got.count(label) && got[label] == n,
               "missing category " + label + " = " + (got.count(label) ? show(got[label]) : "absent"));
    expect(total == 175, "missing-category total " + show(total));
}

// ---- Formal semantics ---------------------------------------------------

// Extensions as bit masks, one per world; the oracle works on these.
using Masks = std::vector<unsigned>;

bool oracle_subsumes(const Masks& broader, const Masks& narrower) {
    for (std::size_t w = 0; w < broader.size(); ++w)
        if ((narrower[w] & ~broader[w]) != 0) return false;
    return true;
}

WorldModel make_model(std::size_t d, std::size_t w, const std::vector<Masks>& ext) {
    std::vector<std::string> dom, worlds;
    for (std::size_t i = 0; i < d; ++i) dom.push_back("d" + show(i));
    for (std::size_t i = 0; i < w; ++i) worlds.push_back("w" + show(i));
    WorldModel m(dom, worlds);
    for (std::size_t c = 0; c < ext.size(); ++c) {
        const ConceptId id{c + 1};
        m.cover(id);
        for (std::size_t k = 0; k < w; ++k) m.set_extension(id, k, IndividualSet(d, ext[c][k]));
    }
    return m;
}

void semantics() {
    // Exhaustive: two concepts, |D| = 3, |W| = 2, i.e. 8^4 = 4096 models.
    std::size_t models = 0;
    for (unsigned code = 0; code < 4096; ++code, ++models) {
        const Masks a = {code & 7, (code >> 3) & 7}, b = {(code >> 6) & 7, (code >> 9) & 7};
        const auto m = make_model(3, 2, {a, b});
        const ConceptId ca{1}, cb{2};
        expect(subsumes(ca, cb, m) == oracle_subsumes(a, b), "subsumes(a,b) at model " + show(code));
        expect(subsumes(cb, ca, m) == oracle_subsumes(b, a), "subsumes(b,a) at model " + show(code));
        expect(concepts_identical(ca, cb, m) == (a == b), "pointwise identity at model " + show(code));
        const bool same_sets = std::set<unsigned>(a.begin(), a.end()) == std::set<unsigned>(b.begin(), b.end());
        expect(concepts_identical(ca, cb, m, Identity::admissible_sets) == same_sets,
               "admissible-set identity at model " + show(code));
    }
    expect(models == 4096, "enumerated " + show(models));

    // Properties over random models, |D| <= 4, |W| <= 3, four concepts.
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t d = 1 + rng() % 4, w = 1 + rng() % 3;
        std::vector<Masks> ext(4, Masks(w));
        for (auto& e : ext)
            for (auto& x : e) x = static_cast<unsigned>(rng() % (1u << d));
        // Force some equal and nested pairs so the implications are exercised.
        if (trial % 3 == 0) ext[1] = ext[0];
        if (trial % 5 == 0)
            for (std::size_t k = 0; k < w; ++k) ext[2][k] = ext[1][k] & ext[3][k];
        const auto m = make_model(d, w, ext);
        for (std::uint64_t x = 1; x <= 4; ++x) {
            const ConceptId a{x};
            expect(subsumes(a, a, m), "reflexivity of subsumption, trial " + show(trial));
            expect(concepts_identical(a, a, m), "reflexivity of identity, trial " + show(trial));
            for (std::uint64_t y = 1; y <= 4; ++y) {
                const ConceptId b{y};
                expect(concepts_identical(a, b, m) == concepts_identical(b, a, m),
                       "symmetry of identity, trial " + show(trial));
                expect(concepts_identical(a, b, m) == (subsumes(a, b, m) && subsumes(b, a, m)),
                       "identity is mutual subsumption, trial " + show(trial));
                for (std::uint64_t z = 1; z <= 4; ++z) {
                    const ConceptId c{z};
                    if (subsumes(a, b, m) && subsumes(b, c, m))
                        expect(subsumes(a, c, m), "transitivity of subsumption, trial " + show(trial));
                    if (concepts_identical(a, b, m) && concepts_identical(b, c, m))
                        expect(concepts_identical(a, c, m), "transitivity of identity, trial " + show(trial));
                }
            }
        }
    }
}

// ---- Taxonomy audits ----------------------------------------------------

bool reachable_without(const std::set<ForeignHierarchy::Edge>& edges, const std::string& from, const std::string& to,
                       const ForeignHierarchy::Edge& skip) {
    std::vector<std::string> stack = {from};
    std::set<std::string> seen = {from};
    while (!stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (const auto& e : edges) {
            if (e == skip || e.first != u) continue;
            if (e.second == to) return true;
            if (seen.insert(e.second).second) stack.push_back(e.second);
        }
    }
    return false;
}

void taxonomy_audits() {
    ForeignHierarchy h;
    h.add_edge("Reflate", "Inflate");
    h.add_edge("Inflate", "Change");
    h.add_edge("Reflate", "Change");
    const std::set<ForeignHierarchy::Edge> want = {{"Reflate", "Change"}};
    expect(audit_redundant_edges(h) == want, "Reflate fixture");

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        // Random DAG: edges only from higher to lower index.
        const int n = 1 + static_cast<int>(rng() % 12);
        ForeignHierarchy g;
        for (int i = 0; i < n; ++i) g.nodes.insert("n" + show(i));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j)
                if (rng() % 3 == 0) g.add_edge("n" + show(i), "n" + show(j));
        std::set<ForeignHierarchy::Edge> brute;
        for (const auto& e : g.edges)
            if (reachable_without(g.edges, e.first, e.second, e)) brute.insert(e);
        expect(audit_redundant_edges(g, Execution::serial) == brute, "serial audit, DAG trial " + show(trial));
        expect(audit_redundant_edges(g, Execution::parallel) == brute, "parallel audit, DAG trial " + show(trial));
    }

    for (int trial = 0; trial < 40; ++trial) {
        const std::uint64_t n = 2 + rng() % 49;
        Taxonomy t;
        std::vector<std::uint64_t> parent(n + 1, 0);
        for (std::uint64_t i = 1; i <= n; ++i) t = t.add_node(ConceptId{i});
        for (std::uint64_t i = 2; i <= n; ++i) {
            parent[i] = 1 + rng() % (i - 1);
            t = t.set_parent(ConceptId{i}, ConceptId{parent[i]});
        }
        auto is_desc_or_self = [&](std::uint64_t v, std::uint64_t u) {
            for (auto x = v; x != 0; x = parent[x])
                if (x == u) return true;
            return false;
        };
        for (std::uint64_t u = 1; u <= n; ++u)
            for (std::uint64_t v = 1; v <= n; ++v) {
                if (is_desc_or_self(v, u)) {
                    bool threw = false;
                    try {
                        (void)t.set_parent(ConceptId{u}, ConceptId{v}, true);
                    } catch (const CycleError&) {
                        threw = true;
                    }
                    expect(threw, "cycle " + show(u) + " under " + show(v) + " accepted");
                } else if (parent[u] != 0 && parent[u] != v) {
                    bool threw = false;
                    try {
                        (void)t.set_parent(ConceptId{u}, ConceptId{v});
                    } catch (const MultipleParentError&) {
                        threw = true;
                    }
                    expect(threw, "second parent " + show(v) + " for " + show(u) + " accepted");
                }
            }
    }
}

// ---- Gloss lint ---------------------------------------------------------

void gloss_lint() {
    const auto store = import_interchange_file(fixtures::data_path("ontology.canonical.xml"));
    const auto t = Taxonomy::from_store(store);
    auto social = store.get_concept(ConceptId{fixtures::ids::social_object});

    social.gloss =
        "An object is social if it can be understood and recognized by people in a social system that exists; "
        "social objects are also those can be represented by physical objects";
    const auto narrative = lint_gloss(social, t, store);
    bool has_g3 = false;
    for (const auto& f : narrative) has_g3 = has_g3 || f.rule_id == "G3";
    expect(has_g3, "narrative gloss has no G3");

    social.gloss = "An object that is recognized for its social existence, and can be represented by physical objects";
    const auto propositional = lint_gloss(social, t, store);
    expect(propositional.empty(), "propositional gloss has " + show(propositional.size()) + " findings, first " +
                                      (propositional.empty() ? "" : propositional.front().rule_id));

    const auto& physical = store.get_concept(ConceptId{fixtures::ids::physical_object});
    expect(physical.gloss.rfind("Physical object: An object that", 0) == 0, "fixture gloss changed");
    for (const auto& f : lint_gloss(physical, t, store)) expect(f.rule_id != "G1", "physical object fails G1");
}

// ---- Search -------------------------------------------------------------

std::vector<std::u32string> letters_with_marks(const std::string& term) {
    // Split into letter clusters: a letter followed by its marks.
    std::vector<std::u32string> out;
    for (char32_t cp : utf8::decode(term)) {
        if (cp >= 0x64B && cp <= 0x652 && !out.empty())
            out.back().push_back(cp);
        else
            out.push_back(std::u32string(1, cp));
    }
    return out;
}

std::string join(const std::vector<std::u32string>& clusters) {
    std::u32string s;
    for (const auto& c : clusters) s += c;
    return utf8::encode(s);
}

std::set<std::uint64_t> hit_ids(const SearchIndex& idx, const std::string& q) {
    std::set<std::uint64_t> ids;
    for (const auto& h : query(q, idx)) ids.insert(h.entry.id);
    return ids;
}

void search() {
    std::mt19937_64 rng(99);
    StoreBuilder b;
    std::set<std::string> skeletons;
    std::vector<std::string> terms;
    std::uint64_t sense = 1;
    while (terms.size() < 1000) {
        auto word = fixtures::random_arabic_word(rng, 3, 7);
        // Unique skeletons, so a conflicting query has nowhere else to land.
        auto clusters = letters_with_marks(word);
        std::string skeleton;
        for (const auto& c : clusters) utf8::append(skeleton, c[0]);
        if (!skeletons.insert(skeleton).second) continue;
        Concept c;
        c.synset.push_back(Sense{SenseId{sense++}, word});
        b.add_concept(std::move(c));
        terms.push_back(word);
    }
    const auto store = b.build();
    const auto idx = build_index(store);

    std::size_t self = 0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto hits = query(terms[i], idx);
        if (!hits.empty() && hits.front().entry.id == i + 1 && hits.front().exact) ++self;
    }
    expect(self == terms.size(), "self-match " + show(self) + "/" + show(terms.size()));

    // Removing a mark from a query never loses results.
    for (int trial = 0; trial < 10000; ++trial) {
        auto clusters = letters_with_marks(terms[rng() % terms.size()]);
        for (auto& c : clusters)
            for (std::size_t k = c.size(); k-- > 1;)
                if (rng() % 3 == 0) c.erase(k, 1);
        // Occasionally substitute a different vowel to test monotonicity off the stored path too.
        if (trial % 4 == 0) {
            auto& c = clusters[rng() % clusters.size()];
            c += static_cast<char32_t>(0x64E + rng() % 3);
        }
        const auto before = hit_ids(idx, join(clusters));
        std::vector<std::pair<std::size_t, std::size_t>> marks;
        for (std::size_t i = 0; i < clusters.size(); ++i)
            for (std::size_t k = 1; k < clusters[i].size(); ++k) marks.push_back({i, k});
        if (marks.empty()) continue;
        const auto [ci, ki] = marks[rng() % marks.size()];
        clusters[ci].erase(ki, 1);
        const auto after = hit_ids(idx, join(clusters));
        expect(std::includes(after.begin(), after.end(), before.begin(), before.end()),
               "monotonicity broken at trial " + show(trial));
    }

    // A vowel different from the stored one on a vowelled letter.
    std::size_t conflicts = 0;
    for (const auto& term : terms) {
        auto clusters = letters_with_marks(term);
        for (auto& c : clusters) {
            auto pos = c.find_first_of(U"َُِ");
            if (pos == std::u32string::npos) continue;
            c[pos] = c[pos] == 0x64E ? 0x64F : 0x64E;
            ++conflicts;
            const auto hits = query(join(clusters), idx);
            expect(hits.empty(), "conflicting query matched " + show(hits.size()) + " entries");
            break;
        }
    }
    expect(conflicts > 100, "too few conflicting queries generated: " + show(conflicts));
}

// ---- Round trip ---------------------------------------------------------

void round_trip() {
    std::ifstream in(fixtures::data_path("ontology.canonical.xml"), std::ios::binary);
    expect(bool(in), "cannot open canonical fixture");
    std::stringstream ss;
    ss << in.rdbuf();
    const auto golden = ss.str();
    expect(export_interchange(import_interchange(golden)) == golden, "canonical fixture is not a fixed point");

    const auto store = fixtures::random_store(5000, 42);
    expect(store.concepts().size() == 5000, "generator made " + show(store.concepts().size()) + " concepts");
    expect(import_interchange(export_interchange(store)) == store, "random snapshot changed in round trip");
}

// ---- Routes -------------------------------------------------------------

void routes() {
    struct Case {
        const char* path;
        Route::Kind kind;
        std::uint64_t id;
        const char* relation;
        const char* term;
    };
    const Case cases[] = {
        {"/concept/293254", Route::Kind::concept_by_id, 293254, "", ""},
        {"/concept/instances/293121", Route::Kind::relation_query, 293121, "instances", ""},
        {"/concept/parts/293121", Route::Kind::relation_query, 293121, "parts", ""},
        {"/concept/virus", Route::Kind::term_lookup, 0, "", "virus"},
        {"/concept/293254/profile", Route::Kind::profile, 293254, "", ""},
    };
    for (const auto& c : cases) {
        const auto r = resolve_route(c.path);
        expect(r.kind == c.kind, std::string(c.path) + " resolved to " + to_string(r.kind));
        expect(r.id == c.id && r.relation == c.relation && r.term == c.term, std::string(c.path) + " payload");
        expect(print_route(r) == c.path, std::string(c.path) + " printed as " + print_route(r));
    }
}

struct Criterion {
    const char* name;
    double limit_s;  // 0 = no runtime limit
    std::function<void()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"agreement-percentages", 1.0, agreement_percentages},
        {"combined-agreement", 0, combined},
        {"relation-histogram", 0, relation_histogram_rows},
        {"coverage-report", 0, coverage},
        {"semantics-oracle-equivalence", 30.0, semantics},
        {"taxonomy-audits", 10.0, taxonomy_audits},
        {"gloss-lint", 0, gloss_lint},
        {"search-properties", 0, search},
        {"round-trip", 5.0, round_trip},
        {"route-scheme", 0, routes},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = Clock::now();
        std::string why;
        try {
            c.run();
        } catch (const Failure& f) {
            why = f.why;
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        if (why.empty() && c.limit_s > 0 && secs >= c.limit_s)
            why = "took " + show(secs) + " s, limit " + show(c.limit_s) + " s";
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(3);
        line << (why.empty() ? "PASS " : "FAIL ") << c.name << " (" << secs << " s)";
        if (!why.empty()) line << ": " << why;
        std::cout << line.str() << std::endl;
        if (!why.empty()) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
