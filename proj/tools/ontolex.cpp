// Command-line front end. Exit codes: 0 clean, 1 findings, 2 hard error.

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ontolex/errors.hpp"
#include "ontolex/gloss_lint.hpp"
#include "ontolex/interchange.hpp"
#include "ontolex/lexicon.hpp"
#include "ontolex/mapping.hpp"
#include "ontolex/search.hpp"
#include "ontolex/semantics.hpp"
#include "ontolex/service.hpp"
#include "ontolex/store.hpp"
#include "ontolex/taxonomy.hpp"

using namespace ontolex;

namespace {

constexpr int kClean = 0;
constexpr int kFindings = 1;
constexpr int kHardError = 2;

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

int report(Findings findings, bool as_json) {
    sort_findings(findings);
    if (as_json) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& f : findings) {
            nlohmann::ordered_json j{{"rule", f.rule_id},
                                     {"severity", to_string(f.severity)},
                                     {"concept", f.concept_id.value},
                                     {"message", f.message}};
            if (f.related) j["related"] = f.related->value;
            if (f.world) j["world"] = *f.world;
            if (f.span) j["span"] = {f.span->begin, f.span->end};
            arr.push_back(std::move(j));
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const auto& f : findings) std::cout << format_finding(f) << "\n";
    }
    return findings.empty() ? kClean : kFindings;
}

EntityRef parse_entity(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == text.size())
        throw Error("entity must be resource:id, got '" + text + "'");
    return EntityRef{text.substr(0, colon), text.substr(colon + 1)};
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line.front() != '#') out.push_back(line);
    }
    return out;
}

std::shared_ptr<HttpServer> g_server;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lexical ontology toolkit: import, validate, map, search and serve."};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "Machine-readable output where supported");

    // import / export
    std::string in_path, out_path, format = "xml";
    auto* import_cmd = app.add_subcommand("import", "Read an interchange file and write its canonical form");
    import_cmd->add_option("input", in_path, "Interchange XML")->required()->check(CLI::ExistingFile);
    import_cmd->add_option("-o,--output", out_path, "Canonical store file (default stdout)");

    std::uint64_t export_id = 0;
    std::string mappings_path;
    std::string domain = "ontology.example.org";
    auto* export_cmd = app.add_subcommand("export", "Write a store as interchange XML or N-Triples");
    export_cmd->add_option("store", in_path, "Store file")->required()->check(CLI::ExistingFile);
    export_cmd->add_option("-o,--output", out_path, "Output file (default stdout)");
    export_cmd->add_option("--format", format, "xml or ntriples")->check(CLI::IsMember({"xml", "ntriples"}));
    export_cmd->add_option("--id", export_id, "Concept to export (ntriples only; default all)");
    export_cmd->add_option("--mappings", mappings_path, "Mapping TSV to include in triples");
    export_cmd->add_option("--domain", domain, "Domain for IRIs")->envname("ONTOLEX_DOMAIN");

    // validate
    std::string lint_config_path, lemmas_path;
    bool serial = false;
    auto* validate_cmd = app.add_subcommand("validate", "Structural checks, rigidity and gloss/synset lints");
    validate_cmd->add_option("store", in_path, "Store file")->required()->check(CLI::ExistingFile);
    validate_cmd->add_option("--lint-config", lint_config_path, "Lint configuration JSON")->check(CLI::ExistingFile);
    validate_cmd->add_option("--lemmas", lemmas_path, "Lemma registry TSV (enables L1)")->check(CLI::ExistingFile);
    validate_cmd->add_flag("--serial", serial, "Use the serial reference path");

    // check-model
    std::string model_path;
    auto* model_cmd = app.add_subcommand("check-model", "Check the taxonomy against a finite world model");
    model_cmd->add_option("store", in_path, "Store file")->required()->check(CLI::ExistingFile);
    model_cmd->add_option("model", model_path, "World model JSON")->required()->check(CLI::ExistingFile);
    model_cmd->add_flag("--serial", serial, "Use the serial reference path");

    // audit
    auto* audit_cmd = app.add_subcommand("audit", "Cycles and redundant edges in a foreign hierarchy TSV");
    audit_cmd->add_option("hierarchy", in_path, "child<TAB>parent TSV")->required()->check(CLI::ExistingFile);

    // map
    auto* map_cmd = app.add_subcommand("map", "Mapping correspondences");
    map_cmd->require_subcommand(1);

    std::string e1_text, e2_text, relation, annotator, note;
    double precision = 100, confidence = 100;
    auto* map_add = map_cmd->add_subcommand("add", "Append a validated correspondence to a mapping TSV");
    map_add->add_option("mappings", mappings_path, "Mapping TSV (created if missing)")->required();
    map_add->add_option("--e1", e1_text, "resource:id")->required();
    map_add->add_option("--e2", e2_text, "resource:id")->required();
    map_add->add_option("-r,--relation", relation, "Relation code")->required();
    map_add->add_option("-p,--precision", precision, "Precision percent");
    map_add->add_option("-c,--confidence", confidence, "Confidence percent");
    map_add->add_option("-a,--annotator", annotator, "Annotator id");
    map_add->add_option("--note", note, "Free text note");

    std::string a_path, b_path, rules_path, universe_path, label;
    auto* map_stats = map_cmd->add_subcommand("stats", "Agreement between two annotators' mapping files");
    map_stats->add_option("a", a_path, "First mapping TSV")->required()->check(CLI::ExistingFile);
    map_stats->add_option("b", b_path, "Second mapping TSV")->required()->check(CLI::ExistingFile);
    map_stats->add_option("--rules", rules_path, "Partial-agreement rules JSON")->check(CLI::ExistingFile);
    map_stats->add_option("--universe", universe_path, "Source ids (resource:id), one per line")
        ->check(CLI::ExistingFile);
    map_stats->add_option("--label", label, "Row label");

    auto* map_hist = map_cmd->add_subcommand("histogram", "Correspondence counts per relation");
    map_hist->add_option("mappings", mappings_path, "Mapping TSV")->required()->check(CLI::ExistingFile);

    std::size_t total = 0, excluded = 0;
    auto* map_cov = map_cmd->add_subcommand("coverage", "Placement of mapped concepts in the taxonomy");
    map_cov->add_option("mappings", mappings_path, "Mapping TSV")->required()->check(CLI::ExistingFile);
    map_cov->add_option("store", in_path, "Store file")->required()->check(CLI::ExistingFile);
    map_cov->add_option("--total", total, "Concepts considered");
    map_cov->add_option("--excluded", excluded, "Concepts excluded before mapping");

    double p_min = 0, c_min = 0;
    auto* map_weak = map_cmd->add_subcommand("weak", "Correspondences below precision/confidence thresholds");
    map_weak->add_option("mappings", mappings_path, "Mapping TSV")->required()->check(CLI::ExistingFile);
    map_weak->add_option("--p-min", p_min, "Minimum precision");
    map_weak->add_option("--c-min", c_min, "Minimum confidence");

    // search
    std::string term, mode = "strict", lexicon_path;
    bool prefix = false;
    auto* search_cmd = app.add_subcommand("search", "Diacritic-consistent term lookup");
    search_cmd->add_option("store", in_path, "Store file")->required()->check(CLI::ExistingFile);
    search_cmd->add_option("term", term, "Query term")->required();
    search_cmd->add_option("--mode", mode, "strict or loose")->check(CLI::IsMember({"strict", "loose"}));
    search_cmd->add_option("--lexicon", lexicon_path, "Lexicon TSV to index as well")->check(CLI::ExistingFile);
    search_cmd->add_flag("--prefix", prefix, "Match terms starting with the query");

    // serve
    std::string addr = "127.0.0.1:8080";
    auto* serve_cmd = app.add_subcommand("serve", "Serve /concept/... routes over HTTP (GET only)");
    serve_cmd->add_option("store", in_path, "Store file")->required()->check(CLI::ExistingFile);
    serve_cmd->add_option("--mappings", mappings_path, "Mapping TSV")->check(CLI::ExistingFile);
    serve_cmd->add_option("--addr", addr, "host:port to listen on")->envname("ONTOLEX_ADDR");
    serve_cmd->add_option("--domain", domain, "Domain for IRIs")->envname("ONTOLEX_DOMAIN");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kClean : kHardError;
    }

    const auto exec = serial ? Execution::serial : Execution::parallel;
    try {
        if (*import_cmd) {
            const auto store = import_interchange_file(in_path);
            write_output(out_path, export_interchange(store));
            std::cerr << "imported " << store.concepts().size() << " concepts, " << store.individuals().size()
                      << " individuals, " << store.sense_count() << " senses\n";
            return kClean;
        }
        if (*export_cmd) {
            const auto store = import_interchange_file(in_path);
            if (format == "xml") {
                write_output(out_path, export_interchange(store));
                return kClean;
            }
            MappingStore mappings;
            if (!mappings_path.empty()) mappings = MappingStore::load_tsv_file(mappings_path);
            const auto snap = Snapshot::make(store, std::move(mappings));
            std::string text;
            if (export_id != 0) {
                text = export_triples(ConceptId{export_id}, *snap, domain);
            } else {
                for (const auto& [id, c] : snap->store.concepts()) text += export_triples(id, *snap, domain);
            }
            write_output(out_path, text);
            return kClean;
        }
        if (*validate_cmd) {
            const auto store = import_interchange_file(in_path);
            const auto taxonomy = Taxonomy::from_store(store);
            LintConfig cfg;
            if (!lint_config_path.empty()) cfg = LintConfig::load_json_file(lint_config_path);
            std::optional<LemmaRegistry> lemmas;
            if (!lemmas_path.empty()) lemmas = LemmaRegistry::load_tsv_file(lemmas_path);
            auto findings = validate_store(store);
            auto rigidity = check_rigidity(taxonomy, store);
            auto lints = lint_store(store, taxonomy, lemmas ? &*lemmas : nullptr, cfg, exec);
            findings.insert(findings.end(), rigidity.begin(), rigidity.end());
            findings.insert(findings.end(), lints.begin(), lints.end());
            return report(std::move(findings), as_json);
        }
        if (*model_cmd) {
            const auto store = import_interchange_file(in_path);
            const auto model = WorldModel::load_json_file(model_path);
            return report(check_taxonomy(model, Taxonomy::from_store(store), exec), as_json);
        }
        if (*audit_cmd) {
            const auto h = ForeignHierarchy::load_tsv_file(in_path);
            const auto cycles = audit_cycles(h);
            int rc = kClean;
            for (const auto& cyc : cycles) {
                std::cout << "cycle:";
                for (const auto& n : cyc) std::cout << ' ' << n;
                std::cout << "\n";
                rc = kFindings;
            }
            if (cycles.empty()) {
                for (const auto& [child, parent] : audit_redundant_edges(h)) {
                    std::cout << "redundant: " << child << " -> " << parent << "\n";
                    rc = kFindings;
                }
            } else {
                std::cerr << "redundant-edge audit skipped: hierarchy is cyclic\n";
            }
            return rc;
        }
        if (*map_add) {
            MappingStore store;
            {
                std::ifstream probe(mappings_path);
                if (probe) store = MappingStore::load_tsv(probe);
            }
            MappingCorrespondence m{parse_entity(e1_text), parse_entity(e2_text), relation, precision,
                                    confidence, annotator, note};
            store.add(m);
            std::ofstream out(mappings_path, std::ios::binary | std::ios::trunc);
            if (!out) throw Error("cannot write " + mappings_path);
            store.save_tsv(out);
            std::cerr << "stored " << store.size() << " correspondences\n";
            return kClean;
        }
        if (*map_stats) {
            const auto a = MappingStore::load_tsv_file(a_path);
            const auto b = MappingStore::load_tsv_file(b_path);
            PartialRuleSet rules;
            if (!rules_path.empty()) rules = PartialRuleSet::load_json_file(rules_path);
            std::vector<std::string> universe;
            if (!universe_path.empty()) universe = read_lines(universe_path);
            AgreementTable table;
            table.rows.push_back(agreement_stats(a, b, rules, universe, label.empty() ? "A vs. B" : label, exec));
            std::cout << (as_json ? table.to_json() : table.to_text());
            std::cout << "combined agreement: " << combined_agreement(table.rows.front()) << "%\n";
            return kClean;
        }
        if (*map_hist) {
            const auto h = relation_histogram(MappingStore::load_tsv_file(mappings_path));
            std::cout << (as_json ? h.to_json() : h.to_text());
            return kClean;
        }
        if (*map_cov) {
            const auto mappings = MappingStore::load_tsv_file(mappings_path);
            const auto store = import_interchange_file(in_path);
            std::map<ConceptId, std::string> labels;
            for (const auto& [id, c] : store.concepts()) {
                // Prefer an English term for the report, else the first sense.
                for (const auto& s : c.synset)
                    if (labels[id].empty() || s.lexicalization_type == ":English") labels[id] = s.term;
            }
            const auto report_ = coverage_report(mappings, Taxonomy::from_store(store),
                                                 total ? total : mappings.size() + excluded, excluded, labels);
            std::cout << (as_json ? report_.to_json() : report_.to_text());
            return kClean;
        }
        if (*map_weak) {
            const auto weak = weak_mappings(MappingStore::load_tsv_file(mappings_path), p_min, c_min);
            for (const auto& m : weak) MappingStore::write_tsv_row(std::cout, m);
            return weak.empty() ? kClean : kFindings;
        }
        if (*search_cmd) {
            const auto store = import_interchange_file(in_path);
            std::optional<LexiconRegistry> lexicons;
            if (!lexicon_path.empty()) {
                lexicons.emplace();
                lexicons->load_tsv_file(lexicon_path);
            }
            const auto index = build_index(store, parse_normalization_mode(mode), lexicons ? &*lexicons : nullptr);
            const auto hits = query(term, index, QueryOptions{prefix});
            for (const auto& h : hits) {
                const auto& e = h.entry;
                if (e.concept_id)
                    std::cout << "concept\t" << format_id_text(e.concept_id->value);
                else if (e.individual)
                    std::cout << "individual\t" << format_id_text(e.individual->value);
                else
                    std::cout << "lexicon\t" << e.lexicon_id << ":" << e.id;
                std::cout << '\t' << e.term << '\t' << (h.exact ? "exact" : "partial") << '\n';
            }
            return hits.empty() ? kFindings : kClean;
        }
        if (*serve_cmd) {
            MappingStore mappings;
            if (!mappings_path.empty()) mappings = MappingStore::load_tsv_file(mappings_path);
            auto store = import_interchange_file(in_path);
            Service service(Snapshot::make(std::move(store), std::move(mappings)), domain);
            const auto [host, port] = parse_listen_address(addr);
            g_server = std::make_shared<HttpServer>(service);
            std::signal(SIGINT, [](int) { if (g_server) g_server->stop(); });
            std::signal(SIGTERM, [](int) { if (g_server) g_server->stop(); });
            std::cerr << "serving http://" << host << ":" << port << "/concept/ as " << domain << "\n";
            if (!g_server->listen(host, port)) throw Error("cannot listen on " + addr);
            return kClean;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kHardError;
    }
    return kHardError;
}
