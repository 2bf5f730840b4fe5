#pragma once
// Diacritic-aware normalization of Arabic terms.
//
// A term is split into a skeleton (its base letters) and, per base letter,
// the set of diacritic marks (U+064B..U+0652) written on it. Matching works
// on the skeleton; the marks decide whether two spellings are consistent.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ontolex {

enum class NormalizationMode { strict, loose };

const char* to_string(NormalizationMode m);
NormalizationMode parse_normalization_mode(std::string_view text);

// Bit i set <=> mark U+064B+i present.
using MarkSet = std::uint8_t;

enum class Mark : std::uint8_t {
    fathatan = 0,
    dammatan,
    kasratan,
    fatha,
    damma,
    kasra,
    shadda,
    sukun,
};

inline constexpr MarkSet mark_bit(Mark m) { return static_cast<MarkSet>(1u << static_cast<unsigned>(m)); }
inline constexpr MarkSet kShaddaBit = mark_bit(Mark::shadda);
inline constexpr MarkSet kVowelBits = static_cast<MarkSet>(0xFF & ~kShaddaBit);

bool is_diacritic(char32_t cp);
const char* mark_name(Mark m);
// Mark names in code point order, e.g. {"shadda", "fatha"} -> "fatha+shadda".
std::string describe_marks(MarkSet marks);

struct NormalizedKey {
    std::string skeleton;          // UTF-8
    std::vector<MarkSet> marks;    // one entry per skeleton code point

    friend bool operator==(const NormalizedKey&, const NormalizedKey&) = default;
};

// strict: drop U+064B..U+0652 into the per-letter mark lists.
// loose: additionally fold alef variants (U+0622, U+0623, U+0625 -> U+0627),
// word-final alef maqsura (U+0649 -> U+064A) and teh marbuta (U+0629 -> U+0647),
// and drop superscript alef (U+0670). Marks written before any base letter
// have nothing to attach to and are dropped.
NormalizedKey normalize_term(std::string_view term, NormalizationMode mode = NormalizationMode::strict);

// Per-letter consistency used by search. The shadda slot and the vowel slot
// are compared separately; a slot is consistent when the query's marks are
// contained in the stored marks or the stored slot is empty. For the usual
// one-mark-per-slot spelling this is "equal, or one side unmarked".
bool marks_consistent(MarkSet query, MarkSet stored);
// Slots where exactly one side carries marks.
unsigned absent_mark_slots(MarkSet query, MarkSet stored);

}  // namespace ontolex
