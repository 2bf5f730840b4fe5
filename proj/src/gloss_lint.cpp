#include "ontolex/gloss_lint.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

#include "ontolex/errors.hpp"
#include "ontolex/normalize.hpp"
#include "ontolex/store.hpp"
#include "ontolex/taxonomy.hpp"
#include "ontolex/utf8.hpp"

namespace ontolex {

using nlohmann::json;

bool LintConfig::rule_enabled(const std::string& rule_id) const {
    auto it = enabled.find(rule_id);
    return it == enabled.end() || it->second;
}

std::vector<std::string> LintConfig::default_g3_patterns() {
    return {
        R"(\bis\b[^.;:]*\bif\b)",  // "X is social if ..."
        R"(\balso those\b)",       // "... are also those ..."
        R"((^|\s)إذا(\s|$))",      // Arabic "if"
    };
}

LintConfig LintConfig::from_json(const std::string& text) {
    LintConfig cfg;
    try {
        const auto doc = json::parse(text);
        if (doc.contains("rules"))
            for (const auto& [rule, on] : doc.at("rules").items()) cfg.enabled[rule] = on.get<bool>();
        if (doc.contains("g2_threshold")) cfg.g2_threshold = doc.at("g2_threshold").get<double>();
        if (doc.contains("g3_patterns")) cfg.g3_patterns = doc.at("g3_patterns").get<std::vector<std::string>>();
        if (doc.contains("gap_budget")) {
            const auto& gb = doc.at("gap_budget");
            if (gb.contains("count")) cfg.gap_budget = gb.at("count").get<double>();
            if (gb.contains("per")) cfg.gap_budget_per = gb.at("per").get<double>();
        }
    } catch (const json::exception& e) {
        throw Error(std::string("malformed lint config: ") + e.what());
    }
    if (cfg.gap_budget_per <= 0) throw Error("gap_budget.per must be positive");
    for (const auto& p : cfg.g3_patterns) {
        try {
            std::regex check(p, std::regex::ECMAScript | std::regex::icase);
        } catch (const std::regex_error& e) {
            throw Error("invalid G3 pattern '" + p + "': " + e.what());
        }
    }
    return cfg;
}

LintConfig LintConfig::load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

void LemmaRegistry::add(std::string term, std::string pos) { entries_.emplace(std::move(term), std::move(pos)); }

bool LemmaRegistry::contains(const std::string& term, const std::string& pos) const {
    return entries_.count({term, pos}) != 0;
}

LemmaRegistry LemmaRegistry::load_tsv(std::istream& in) {
    LemmaRegistry reg;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            reg.add(line);
        else
            reg.add(line.substr(0, tab), line.substr(tab + 1));
    }
    return reg;
}

LemmaRegistry LemmaRegistry::load_tsv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return load_tsv(in);
}

namespace {

struct Token {
    std::string norm;
    std::size_t begin = 0;  // byte offsets into the analysed text
    std::size_t end = 0;
};

bool is_separator(char32_t cp) {
    if (cp < 0x80) {
        const auto ch = static_cast<unsigned char>(cp);
        return !(std::isalnum(ch) || ch == '_');
    }
    switch (cp) {
        case 0x00A0: case 0x00AB: case 0x00BB: case 0x060C: case 0x061B: case 0x061F: case 0x06D4:
        case 0x2013: case 0x2014: case 0x2018: case 0x2019: case 0x201C: case 0x201D:
            return true;
        default:
            return false;
    }
}

std::size_t cp_length(unsigned char b) {
    if (b < 0x80) return 1;
    if ((b & 0xE0) == 0xC0) return 2;
    if ((b & 0xF0) == 0xE0) return 3;
    if ((b & 0xF8) == 0xF0) return 4;
    return 1;
}

char32_t cp_at(std::string_view text, std::size_t i, std::size_t len) {
    const auto decoded = utf8::decode(text.substr(i, len));
    return decoded.empty() ? U'�' : decoded.front();
}

// Lowercase, diacritics removed.
std::string fold(std::string_view text) {
    return utf8::ascii_lower(normalize_term(text, NormalizationMode::strict).skeleton);
}

// Drops a leading Arabic definite article when enough of the word remains.
std::string strip_al(const std::string& folded) {
    static const std::string al = "\xD8\xA7\xD9\x84";  // U+0627 U+0644
    if (folded.rfind(al, 0) == 0 && utf8::decode(folded).size() >= 4) return folded.substr(al.size());
    return folded;
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const auto len = cp_length(static_cast<unsigned char>(text[i]));
        const auto cp = cp_at(text, i, len);
        if (is_separator(cp)) {
            i += len;
            continue;
        }
        const auto start = i;
        while (i < text.size()) {
            const auto l = cp_length(static_cast<unsigned char>(text[i]));
            if (is_separator(cp_at(text, i, l))) break;
            i += l;
        }
        out.push_back({strip_al(fold(text.substr(start, i - start))), start, i});
    }
    return out;
}

const std::unordered_set<std::string>& stopwords() {
    static const std::unordered_set<std::string> words = [] {
        std::unordered_set<std::string> w = {
            "a", "an", "the", "that", "this", "these", "those", "is", "are", "was", "were", "be", "been",
            "being", "and", "or", "of", "in", "on", "at", "to", "for", "by", "with", "its", "it", "as",
            "from", "which", "who", "whom", "either", "neither", "nor", "not", "can", "could", "may",
            "might", "will", "would", "has", "have", "had", "also", "if", "than", "then", "such", "into",
            "within", "their", "his", "her", "some", "any", "all"};
        for (const char* ar : {"في", "من", "على", "إلى", "الى", "عن", "أو", "او", "و", "ثم", "التي", "الذي",
                               "الذين", "هو", "هي", "أن", "ان", "إن", "ما", "لا", "قد", "كان", "يكون", "به",
                               "بها", "له", "لها", "مع", "أي", "كل"})
            w.insert(strip_al(fold(ar)));
        return w;
    }();
    return words;
}

// Byte offset where the definition proper starts, skipping a short
// "Headword:" label such as "Physical object: An object that ...".
std::size_t label_end(std::string_view gloss) {
    const auto colon = gloss.find(':');
    if (colon == std::string_view::npos) return 0;
    const auto head = tokenize(gloss.substr(0, colon));
    if (head.empty() || head.size() > 4) return 0;
    auto pos = colon + 1;
    while (pos < gloss.size() && gloss[pos] == ' ') ++pos;
    return pos;
}

// Skips whitespace and one leading English article.
std::size_t article_end(std::string_view gloss, std::size_t from) {
    while (from < gloss.size() && std::isspace(static_cast<unsigned char>(gloss[from]))) ++from;
    for (std::string_view art : {"a ", "an ", "the "}) {
        if (gloss.size() - from >= art.size() && utf8::ascii_lower(gloss.substr(from, art.size())) == art) {
            from += art.size();
            while (from < gloss.size() && std::isspace(static_cast<unsigned char>(gloss[from]))) ++from;
            break;
        }
    }
    return from;
}

bool starts_with_lemma(std::string_view body, const std::string& lemma) {
    if (lemma.empty()) return false;
    const auto b = fold(body);
    const auto l = fold(lemma);
    if (b.rfind(l, 0) == 0) return true;
    const auto l_bare = fold(lemma.substr(article_end(lemma, 0)));
    if (!l_bare.empty() && b.rfind(l_bare, 0) == 0) return true;
    return strip_al(b).rfind(strip_al(l), 0) == 0;
}

struct GenusMatch {
    bool matched = false;
    std::size_t body_begin = 0;     // byte offset of the body in the gloss
    std::size_t genus_tokens = 1;   // tokens covered by the genus
};

// Finds whether the gloss (optionally after its label) begins with one of
// the lemmas, after article stripping.
GenusMatch match_genus(std::string_view gloss, const std::vector<Sense>& lemmas) {
    GenusMatch best;
    const auto label = label_end(gloss);
    best.body_begin = article_end(gloss, label);
    for (std::size_t start : {label, std::size_t{0}}) {
        const auto body = article_end(gloss, start);
        for (const auto& s : lemmas) {
            if (starts_with_lemma(gloss.substr(body), s.term) ||
                starts_with_lemma(gloss.substr(start), s.term)) {
                best.matched = true;
                best.body_begin = body;
                best.genus_tokens = std::max<std::size_t>(1, tokenize(s.term).size());
                return best;
            }
        }
        if (start == 0) break;
    }
    return best;
}

std::set<std::string> characteristic_tokens(std::string_view gloss, const GenusMatch& genus) {
    const auto tokens = tokenize(gloss.substr(genus.body_begin));
    std::set<std::string> out;
    for (std::size_t i = genus.genus_tokens; i < tokens.size(); ++i)
        if (!stopwords().count(tokens[i].norm)) out.insert(tokens[i].norm);
    return out;
}

// std::regex is costly to build; keep one per pattern and thread.
const std::regex& compiled(const std::string& pattern) {
    thread_local std::map<std::string, std::regex> cache;
    auto it = cache.find(pattern);
    if (it == cache.end())
        it = cache.emplace(pattern, std::regex(pattern, std::regex::ECMAScript | std::regex::icase)).first;
    return it->second;
}

Finding finding(const char* rule, Severity sev, ConceptId id, std::string message) {
    Finding f;
    f.rule_id = rule;
    f.severity = sev;
    f.concept_id = id;
    f.message = std::move(message);
    return f;
}

}  // namespace

Findings lint_gloss(const Concept& c, const Taxonomy& t, const Store& store, const LintConfig& cfg) {
    Findings out;
    const std::string_view gloss = c.gloss;
    const auto parent_id = t.contains(c.id) ? t.parent(c.id) : c.parent;

    if (parent_id) {
        const auto* parent = store.find_concept(*parent_id);
        if (!parent) throw UnknownParentError("parent " + parent_id->str() + " of concept " + c.id.str() + " is not in the store");

        const auto genus = match_genus(gloss, parent->synset);
        if (cfg.rule_enabled("G1") && !genus.matched) {
            auto f = finding("G1", Severity::error, c.id, "gloss should start with the supertype (a lemma of concept " +
                                                             parent_id->str() + ")");
            const auto tokens = tokenize(gloss.substr(genus.body_begin));
            if (!tokens.empty())
                f.span = Span{genus.body_begin + tokens.front().begin, genus.body_begin + tokens.front().end};
            out.push_back(std::move(f));
        }

        if (cfg.rule_enabled("G2") && !parent->gloss.empty()) {
            const auto own = characteristic_tokens(gloss, genus);
            GenusMatch parent_genus;
            if (const auto grand = t.contains(parent->id) ? t.parent(parent->id) : parent->parent) {
                if (const auto* g = store.find_concept(*grand)) parent_genus = match_genus(parent->gloss, g->synset);
                else parent_genus = match_genus(parent->gloss, {});
            } else {
                parent_genus = match_genus(parent->gloss, {});
            }
            const auto inherited = characteristic_tokens(parent->gloss, parent_genus);
            std::vector<std::string> shared;
            std::set_intersection(own.begin(), own.end(), inherited.begin(), inherited.end(),
                                  std::back_inserter(shared));
            const double ratio = own.empty() ? 0.0 : static_cast<double>(shared.size()) / static_cast<double>(own.size());
            if (ratio > cfg.g2_threshold) {
                std::string list;
                for (const auto& s : shared) list += (list.empty() ? "" : ", ") + s;
                out.push_back(finding("G2", Severity::warning, c.id,
                                      "gloss repeats characteristics of its supertype (" + list + "; overlap " +
                                          std::to_string(static_cast<int>(std::lround(ratio * 100))) + "%)"));
            }
        }
    }

    if (cfg.rule_enabled("G3")) {
        const std::string text(gloss);
        for (const auto& pattern : cfg.g3_patterns) {
            std::smatch m;
            if (!std::regex_search(text, m, compiled(pattern))) continue;
            auto f = finding("G3", Severity::warning, c.id, "narrative phrasing ('" + m.str() + "'); state the characteristics as propositions");
            f.span = Span{static_cast<std::size_t>(m.position()), static_cast<std::size_t>(m.position() + m.length())};
            out.push_back(std::move(f));
        }
    }
    return out;
}

Findings lint_synset_policy(const Concept& c, const LemmaRegistry* registry, const LintConfig& cfg) {
    Findings out;
    for (const auto& s : c.synset) {
        if (registry && cfg.rule_enabled("L1") && !registry->contains(s.term, s.pos))
            out.push_back(finding("L1", Severity::error, c.id, "term '" + s.term + "' (" + s.pos + ") is not a registered lemma"));
        if (cfg.rule_enabled("L2") && !s.is_noun())
            out.push_back(finding("L2", Severity::error, c.id,
                                  "sense '" + s.term + "' has part of speech '" + s.pos + "'; ontology synsets hold nouns only"));
    }
    if (cfg.rule_enabled("L3") && c.gap_filler && c.profile.rationale.empty())
        out.push_back(finding("L3", Severity::warning, c.id, "gap-filler concept has no rationale"));
    return out;
}

std::optional<Finding> lint_gap_budget(const Store& store, const LintConfig& cfg) {
    if (!cfg.rule_enabled("GapBudgetExceeded")) return std::nullopt;
    std::size_t fillers = 0;
    for (const auto& [id, c] : store.concepts())
        if (c.gap_filler) ++fillers;
    const auto n = static_cast<double>(store.concepts().size());
    const auto allowed = static_cast<std::size_t>(std::ceil(cfg.gap_budget * n / cfg.gap_budget_per - 1e-9));
    if (fillers <= allowed) return std::nullopt;
    return finding("GapBudgetExceeded", Severity::warning, ConceptId{},
                   std::to_string(fillers) + " gap-filler concepts exceed the budget of " + std::to_string(allowed) +
                       " for " + std::to_string(store.concepts().size()) + " concepts");
}

Findings lint_store(const Store& store, const Taxonomy& t, const LemmaRegistry* registry, const LintConfig& cfg,
                    Execution exec) {
    std::vector<const Concept*> concepts;
    concepts.reserve(store.concepts().size());
    for (const auto& [id, c] : store.concepts()) concepts.push_back(&c);

    std::vector<Findings> per_concept(concepts.size());
    auto lint_one = [&](std::size_t i) {
        auto f = lint_gloss(*concepts[i], t, store, cfg);
        auto g = lint_synset_policy(*concepts[i], registry, cfg);
        f.insert(f.end(), g.begin(), g.end());
        per_concept[i] = std::move(f);
    };

    const auto count = static_cast<long>(concepts.size());
    if (exec == Execution::parallel) {
        // Exceptions may not cross the parallel region boundary.
        std::vector<std::exception_ptr> errors(concepts.size());
#pragma omp parallel for schedule(dynamic, 16)
        for (long i = 0; i < count; ++i) {
            try {
                lint_one(static_cast<std::size_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    } else {
        for (long i = 0; i < count; ++i) lint_one(static_cast<std::size_t>(i));
    }

    Findings out;
    for (auto& f : per_concept) out.insert(out.end(), f.begin(), f.end());
    if (auto gap = lint_gap_budget(store, cfg)) out.push_back(std::move(*gap));
    sort_findings(out);
    return out;
}

}  // namespace ontolex
