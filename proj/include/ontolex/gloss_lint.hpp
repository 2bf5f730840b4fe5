#pragma once
// Gloss and synset lints.
//
//   G1 error    gloss does not start with a lemma of the parent's synset
//   G2 warning  gloss repeats the parent's characteristics (token overlap)
//   G3 warning  gloss reads as narrative rather than a list of propositions
//   L1 error    sense term missing from the lemma registry
//   L2 error    non-noun sense in an ontology synset (verbs enter as masdars)
//   L3 warning  gap-filler concept without a rationale
//   GapBudgetExceeded warning  too many gap-filler concepts for the store size

#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ontolex/execution.hpp"
#include "ontolex/finding.hpp"
#include "ontolex/model.hpp"

namespace ontolex {

class Store;
class Taxonomy;

struct LintConfig {
    std::map<std::string, bool> enabled;  // absent rule ids are enabled
    double g2_threshold = 0.6;
    std::vector<std::string> g3_patterns = default_g3_patterns();
    double gap_budget = 4;
    double gap_budget_per = 1300;

    bool rule_enabled(const std::string& rule_id) const;

    // Heuristic narrative markers (ECMAScript regex, case-insensitive).
    static std::vector<std::string> default_g3_patterns();

    // {"rules": {"G2": false}, "g2_threshold": 0.6, "g3_patterns": [...],
    //  "gap_budget": {"count": 4, "per": 1300}}. Omitted keys keep defaults.
    static LintConfig from_json(const std::string& text);
    static LintConfig load_json_file(const std::string& path);
};

// Known lemmas keyed by (term, pos).
class LemmaRegistry {
public:
    void add(std::string term, std::string pos = std::string(kDefaultPos));
    bool contains(const std::string& term, const std::string& pos) const;
    std::size_t size() const { return entries_.size(); }

    // term<TAB>pos per line (pos optional, defaults to noun); '#' comments.
    static LemmaRegistry load_tsv(std::istream& in);
    static LemmaRegistry load_tsv_file(const std::string& path);

private:
    std::set<std::pair<std::string, std::string>> entries_;
};

// G1-G3 for one concept. Roots (no parent in t) are only checked for G3.
// Throws UnknownParentError when the parent is in t but not in the store.
Findings lint_gloss(const Concept& c, const Taxonomy& t, const Store& store, const LintConfig& cfg = {});

// L1-L3. L1 is skipped when `registry` is null.
Findings lint_synset_policy(const Concept& c, const LemmaRegistry* registry, const LintConfig& cfg = {});

// Allowed gap fillers: ceil(gap_budget * concepts / gap_budget_per).
std::optional<Finding> lint_gap_budget(const Store& store, const LintConfig& cfg = {});

// Every lint over every concept, sorted. Concepts are independent, so the
// parallel path splits them across threads.
Findings lint_store(const Store& store, const Taxonomy& t, const LemmaRegistry* registry,
                    const LintConfig& cfg = {}, Execution exec = Execution::parallel);

}  // namespace ontolex
