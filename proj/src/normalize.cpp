#include "ontolex/normalize.hpp"

#include "ontolex/errors.hpp"
#include "ontolex/utf8.hpp"

namespace ontolex {

namespace {

constexpr char32_t kFirstMark = 0x064B;
constexpr char32_t kLastMark = 0x0652;
constexpr char32_t kSuperscriptAlef = 0x0670;

char32_t fold_loose(char32_t cp, bool word_final) {
    switch (cp) {
        case 0x0622:
        case 0x0623:
        case 0x0625: return 0x0627;
        case 0x0629: return 0x0647;
        case 0x0649: return word_final ? 0x064A : cp;
        default: return cp;
    }
}

}  // namespace

const char* to_string(NormalizationMode m) { return m == NormalizationMode::loose ? "loose" : "strict"; }

NormalizationMode parse_normalization_mode(std::string_view text) {
    if (text == "strict") return NormalizationMode::strict;
    if (text == "loose") return NormalizationMode::loose;
    throw Error("unknown normalization mode '" + std::string(text) + "'");
}

bool is_diacritic(char32_t cp) { return cp >= kFirstMark && cp <= kLastMark; }

const char* mark_name(Mark m) {
    static const char* names[] = {"fathatan", "dammatan", "kasratan", "fatha",
                                  "damma",    "kasra",    "shadda",   "sukun"};
    return names[static_cast<unsigned>(m)];
}

std::string describe_marks(MarkSet marks) {
    std::string out;
    for (unsigned i = 0; i < 8; ++i) {
        if (!(marks & (1u << i))) continue;
        if (!out.empty()) out += '+';
        out += mark_name(static_cast<Mark>(i));
    }
    return out;
}

NormalizedKey normalize_term(std::string_view term, NormalizationMode mode) {
    const auto cps = utf8::decode(term);
    NormalizedKey key;
    key.skeleton.reserve(term.size());
    key.marks.reserve(cps.size());

    for (std::size_t i = 0; i < cps.size(); ++i) {
        char32_t cp = cps[i];
        if (is_diacritic(cp)) {
            if (!key.marks.empty()) key.marks.back() |= static_cast<MarkSet>(1u << (cp - kFirstMark));
            continue;
        }
        if (mode == NormalizationMode::loose) {
            if (cp == kSuperscriptAlef) continue;
            // Word-final: no further Arabic letter before the next non-mark.
            std::size_t j = i + 1;
            while (j < cps.size() && (is_diacritic(cps[j]) || cps[j] == kSuperscriptAlef)) ++j;
            const bool word_final = j == cps.size() || !utf8::is_arabic_letter(cps[j]);
            cp = fold_loose(cp, word_final);
        }
        utf8::append(key.skeleton, cp);
        key.marks.push_back(0);
    }
    return key;
}

bool marks_consistent(MarkSet query, MarkSet stored) {
    auto slot_ok = [](MarkSet q, MarkSet s) { return s == 0 || (q & ~s) == 0; };
    return slot_ok(query & kShaddaBit, stored & kShaddaBit) && slot_ok(query & kVowelBits, stored & kVowelBits);
}

unsigned absent_mark_slots(MarkSet query, MarkSet stored) {
    unsigned n = 0;
    if (((query & kShaddaBit) == 0) != ((stored & kShaddaBit) == 0)) ++n;
    if (((query & kVowelBits) == 0) != ((stored & kVowelBits) == 0)) ++n;
    return n;
}

}  // namespace ontolex
