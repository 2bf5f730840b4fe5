#pragma once
// Fixture builders shared by the unit tests and the acceptance runner.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ontolex/mapping.hpp"
#include "ontolex/model.hpp"
#include "ontolex/store.hpp"
#include "ontolex/utf8.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) { return std::string(ONTOLEX_DATA) + "/" + name; }

// Well-known ids in data/ontology.xml.
namespace ids {
inline constexpr std::uint64_t entity = 290001, object = 290002, physical_object = 290003, social_object = 290004,
                               organism = 290005, animal = 290006, plant = 290007, virus = 290008,
                               governorate = 290009, occurrent = 290010, event = 290011, time = 290012,
                               interval = 290013, process = 290014, dependent_entity = 290020, quality = 290021,
                               state = 290022, abstract = 290030, number = 290031, information_entity = 290040,
                               text = 290041, country = 293121, anatomical_structure = 293254, pain = 293198,
                               heartburn = 291234, estate = 50856;
}

inline ontolex::MappingCorrespondence corr(std::string src, std::string target, std::string relation,
                                    std::string annotator) {
    ontolex::MappingCorrespondence m;
    m.e1 = {"jurjani", std::move(src)};
    m.e2 = {"ontology", std::move(target)};
    m.relation = std::move(relation);
    m.annotator = std::move(annotator);
    return m;
}

struct AgreementFixture {
    ontolex::MappingStore a, b;
    ontolex::PartialRuleSet rules;
    std::vector<std::string> universe;
};

// Sources are split into four blocks: both sides agree; one side picks a
// general node and the other a subtype; the two pick unrelated nodes; and
// sources left unmapped, alternately by one side or by both.
inline AgreementFixture agreement_fixture(std::size_t exact, std::size_t partial, std::size_t different,
                                          std::size_t couldnt_map) {
    AgreementFixture f;
    std::size_t next = 0;
    auto source = [&] {
        auto s = "d" + std::to_string(next++);
        f.universe.push_back("jurjani:" + s);
        return s;
    };
    for (std::size_t i = 0; i < exact; ++i) {
        auto s = source();
        f.a.add(corr(s, "1" + std::to_string(i), "SubClassOf", "A"));
        f.b.add(corr(s, "1" + std::to_string(i), "SubClassOf", "B"));
    }
    for (std::size_t i = 0; i < partial; ++i) {
        auto s = source();
        auto general = "2" + std::to_string(i), sub = "3" + std::to_string(i);
        f.rules.parent_subtype_pairs.push_back({general, {sub}});
        f.a.add(corr(s, general, "SubClassOf", "A"));
        f.b.add(corr(s, sub, "SubClassOf", "B"));
    }
    for (std::size_t i = 0; i < different; ++i) {
        auto s = source();
        f.a.add(corr(s, "4" + std::to_string(i), "SubClassOf", "A"));
        f.b.add(corr(s, "5" + std::to_string(i), "SameAs", "B"));
    }
    for (std::size_t i = 0; i < couldnt_map; ++i) {
        auto s = source();
        if (i % 3 == 1) f.a.add(corr(s, "6" + std::to_string(i), "SubClassOf", "A"));
        if (i % 3 == 2) f.b.add(corr(s, "6" + std::to_string(i), "SubClassOf", "B"));
    }
    return f;
}

// Relation counts per code; grouped rows are SameAs 11400, Sub/Super 1050,
// Part/HasPart 100, InstanceOf/Type 770, Similar 125.
inline ontolex::MappingStore histogram_fixture() {
    const std::vector<std::pair<std::string, std::size_t>> counts = {
        {"SameAs", 11400}, {"SubClassOf", 1000}, {"SuperClassOf", 50}, {"PartOf", 60},
        {"HasPart", 40},   {"InstanceOf", 700},  {"Type", 70},         {"Similar", 125}};
    ontolex::MappingStore s;
    std::size_t n = 0;
    for (const auto& [code, count] : counts)
        for (std::size_t i = 0; i < count; ++i, ++n) {
            ontolex::MappingCorrespondence m;
            m.e1 = {"wordnet", std::to_string(n)};
            m.e2 = {"ontology", std::to_string(290001 + n % 40)};
            m.relation = code;
            m.annotator = "A1";
            s.add(m);
        }
    return s;
}

// 40 equivalents, 1615 under leaves and 175 under non-leaf nodes of the
// fixture taxonomy. 165 of the non-leaf placements go to the five named
// top categories; the remaining 10 go to social object.
inline ontolex::MappingStore coverage_fixture() {
    using namespace ids;
    const std::vector<std::uint64_t> leaves = {animal, plant, virus, anatomical_structure, country, governorate,
                                               estate, interval, process, quality, heartburn, number, text};
    const std::vector<std::uint64_t> all_nodes = {entity, object, physical_object, social_object, occurrent,
                                                  event, time, dependent_entity, state, abstract,
                                                  information_entity, pain, organism};
    const std::vector<std::pair<std::uint64_t, std::size_t>> non_leaf = {
        {physical_object, 30}, {event, 4}, {dependent_entity, 15}, {abstract, 9}, {information_entity, 107},
        {social_object, 10}};
    ontolex::MappingStore s;
    std::size_t n = 0;
    auto add = [&](std::uint64_t target, const char* relation) {
        s.add(corr("c" + std::to_string(n++), std::to_string(target), relation, "A1"));
    };
    for (std::size_t i = 0; i < 40; ++i) add(all_nodes[i % all_nodes.size()], "SameAs");
    for (std::size_t i = 0; i < 1615; ++i) add(leaves[i % leaves.size()], "SubClassOf");
    for (const auto& [node, count] : non_leaf)
        for (std::size_t i = 0; i < count; ++i) add(node, "SubClassOf");
    return s;
}

// Random Arabic word: letters from the basic block, each with an optional
// shadda and an optional short vowel or sukun.
inline std::string random_arabic_word(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len,
                                      bool marks = true) {
    static const std::vector<char32_t> letters = {0x628, 0x62A, 0x62B, 0x62C, 0x62D, 0x62E, 0x62F, 0x630,
                                                  0x631, 0x632, 0x633, 0x634, 0x635, 0x636, 0x637, 0x638,
                                                  0x639, 0x63A, 0x641, 0x642, 0x643, 0x644, 0x645, 0x646,
                                                  0x647, 0x648};
    static const std::vector<char32_t> vowels = {0x64E, 0x64F, 0x650, 0x652, 0x64B, 0x64C, 0x64D};
    std::uniform_int_distribution<std::size_t> len(min_len, max_len);
    std::uniform_int_distribution<std::size_t> pick_letter(0, letters.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_vowel(0, vowels.size() - 1);
    std::bernoulli_distribution coin(0.5), rare(0.15);
    std::string out;
    const auto n = len(rng);
    for (std::size_t i = 0; i < n; ++i) {
        ontolex::utf8::append(out, letters[pick_letter(rng)]);
        if (!marks) continue;
        if (rare(rng)) ontolex::utf8::append(out, 0x651);
        if (coin(rng)) ontolex::utf8::append(out, vowels[pick_vowel(rng)]);
    }
    return out;
}

// A random forest of `n` concepts with senses, relations, profiles,
// examples and individuals, including text that needs XML escaping.
inline ontolex::Store random_store(std::size_t n, std::uint64_t seed) {
    using namespace ontolex;
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5), rare(0.1);
    std::uniform_int_distribution<int> small(0, 3);
    const std::vector<std::string> tricky = {"a & b", "<tag>", "\"quoted\"", "it's", "tab\there", "line\nbreak",
                                             " padded ", "&amp;", "]]>", "x > y"};
    auto text = [&](std::size_t words) {
        std::string s;
        for (std::size_t i = 0; i < words; ++i) {
            if (i) s += ' ';
            s += rare(rng) ? tricky[rng() % tricky.size()] : random_arabic_word(rng, 2, 6);
        }
        return s;
    };
    StoreBuilder b;
    std::uint64_t next_sense = 1;
    std::vector<ConceptId> made;
    for (std::size_t i = 0; i < n; ++i) {
        Concept c;
        c.id = ConceptId{100000 + i};
        c.gloss = text(1 + rng() % 8);
        if (coin(rng)) c.example_sentence = text(1 + rng() % 5);
        c.area = coin(rng) ? ":MostArabCountries" : ":Palestine&Jordan";
        c.era = rare(rng) ? ":mid-ages" : ":Modern";
        c.status = coin(rng) ? ConceptStatus::partial : ConceptStatus::well_investigated;
        c.gap_filler = rare(rng);
        if (!made.empty() && rng() % 10 != 0) c.parent = made[rng() % made.size()];
        for (int k = 0, m = 1 + small(rng); k < m; ++k) {
            Sense s;
            s.id = SenseId{next_sense++};
            s.term = random_arabic_word(rng, 2, 7);
            s.area = coin(rng) ? ":MostArabCountries" : "";
            s.era = coin(rng) ? ":Modern" : "";
            s.lexicalization_type = rare(rng) ? ":DA" : ":MSA";
            if (rare(rng)) s.pos = "verb";
            c.synset.push_back(std::move(s));
        }
        if (!made.empty())
            for (int k = 0, m = small(rng) / 2; k < m; ++k)
                c.relations.push_back({rare(rng) ? "HasPart" : "PartOf", made[rng() % made.size()]});
        if (coin(rng)) {
            c.profile.distinguishing_characteristics = text(3);
            if (coin(rng)) c.profile.example_instances = {text(1), text(1)};
            c.profile.identity_criteria = rare(rng) ? text(2) : "";
            c.profile.rigidity = static_cast<Rigidity>(rng() % 3);
            c.profile.benchmark_level = static_cast<BenchmarkLevel>(rng() % 4);
            if (rare(rng)) c.profile.formal_axioms = {"forall x (P(x) -> Q(x))"};
            if (c.gap_filler) c.profile.rationale = text(4);
        }
        made.push_back(b.add_concept(std::move(c)));
    }
    for (std::size_t i = 0; i < n / 20; ++i) {
        Individual ind;
        ind.id = IndividualId{900000 + i};
        ind.instance_of = made[rng() % made.size()];
        Sense s;
        s.id = SenseId{next_sense++};
        s.term = random_arabic_word(rng, 3, 8);
        ind.names.push_back(std::move(s));
        b.add_individual(std::move(ind));
    }
    return b.build();
}

}  // namespace fixtures
