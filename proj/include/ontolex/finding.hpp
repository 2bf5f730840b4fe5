#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ontolex/ids.hpp"

namespace ontolex {

enum class Severity { warning, error };

const char* to_string(Severity s);

// Half-open byte range into a gloss.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;
    friend bool operator==(const Span&, const Span&) = default;
};

// One validation or lint result. `related` names the second concept of a
// pairwise rule (rigidity, disjointness); `world` is set by model checks.
struct Finding {
    std::string rule_id;
    Severity severity = Severity::error;
    ConceptId concept_id;
    std::string message;
    std::optional<Span> span;
    std::optional<ConceptId> related;
    std::optional<std::string> world;

    friend bool operator==(const Finding&, const Finding&) = default;
};

using Findings = std::vector<Finding>;

// Deterministic order: concept, rule, related, world, message.
void sort_findings(Findings& findings);

bool has_errors(const Findings& findings);

std::string format_finding(const Finding& f);

}  // namespace ontolex
