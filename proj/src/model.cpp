#include "ontolex/model.hpp"

#include <algorithm>

#include "ontolex/errors.hpp"

namespace ontolex {

const char* to_string(Rigidity r) {
    switch (r) {
        case Rigidity::rigid: return "rigid";
        case Rigidity::anti_rigid: return "anti-rigid";
        case Rigidity::unspecified: break;
    }
    return "unspecified";
}

const char* to_string(BenchmarkLevel b) {
    switch (b) {
        case BenchmarkLevel::scientific: return "scientific";
        case BenchmarkLevel::expert: return "expert";
        case BenchmarkLevel::commonsense: return "commonsense";
        case BenchmarkLevel::unspecified: break;
    }
    return "unspecified";
}

const char* to_string(ConceptStatus s) {
    return s == ConceptStatus::well_investigated ? "well-investigated" : "partial";
}

Rigidity parse_rigidity(std::string_view text) {
    if (text == "rigid") return Rigidity::rigid;
    if (text == "anti-rigid") return Rigidity::anti_rigid;
    if (text.empty() || text == "unspecified") return Rigidity::unspecified;
    throw Error("unknown rigidity value '" + std::string(text) + "'");
}

BenchmarkLevel parse_benchmark_level(std::string_view text) {
    if (text == "scientific") return BenchmarkLevel::scientific;
    if (text == "expert") return BenchmarkLevel::expert;
    if (text == "commonsense") return BenchmarkLevel::commonsense;
    if (text.empty() || text == "unspecified") return BenchmarkLevel::unspecified;
    throw Error("unknown benchmark level '" + std::string(text) + "'");
}

ConceptStatus parse_status(std::string_view text) {
    if (text == "well-investigated") return ConceptStatus::well_investigated;
    if (text.empty() || text == "partial") return ConceptStatus::partial;
    throw Error("unknown concept status '" + std::string(text) + "'");
}

const std::vector<std::string_view>& known_relation_codes() {
    static const std::vector<std::string_view> codes = {
        rel::SubTypeOf, rel::PartOf,   rel::HasPart,      rel::InstanceOf, rel::Type,
        rel::SameAs,    rel::SuperClassOf, rel::SubClassOf, rel::Similar};
    return codes;
}

bool is_known_relation(std::string_view code) {
    const auto& codes = known_relation_codes();
    return std::find(codes.begin(), codes.end(), code) != codes.end();
}

}  // namespace ontolex
