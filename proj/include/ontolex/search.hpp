#pragma once
// Diacritic-consistent term search over a store snapshot.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ontolex/execution.hpp"
#include "ontolex/ids.hpp"
#include "ontolex/normalize.hpp"

namespace ontolex {

class Store;
class LexiconRegistry;

struct IndexEntry {
    enum class Kind : std::uint8_t { concept_sense, individual_name, lexicon_entry };

    Kind kind = Kind::concept_sense;
    std::uint64_t id = 0;                   // sense id, or entry id for lexicon entries
    std::optional<ConceptId> concept_id;     // owning concept of a concept sense
    std::optional<IndividualId> individual;
    std::string lexicon_id;
    std::string term;
    std::vector<MarkSet> marks;

    friend bool operator==(const IndexEntry&, const IndexEntry&) = default;
};

// Immutable once built. Rebuild and swap to pick up a new snapshot.
class SearchIndex {
public:
    NormalizationMode mode() const { return mode_; }
    const std::vector<IndexEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    std::optional<ConceptId> concept_of_sense(SenseId id) const;

    friend bool operator==(const SearchIndex& a, const SearchIndex& b) {
        return a.mode_ == b.mode_ && a.entries_ == b.entries_ && a.buckets_ == b.buckets_;
    }

private:
    friend SearchIndex build_index(const Store&, NormalizationMode, const LexiconRegistry*, Execution);
    friend struct SearchAccess;

    NormalizationMode mode_ = NormalizationMode::strict;
    std::vector<IndexEntry> entries_;
    std::map<std::string, std::vector<std::size_t>> buckets_;  // skeleton -> entry positions
    std::unordered_map<SenseId, ConceptId> concept_by_sense_;
};

// Covers concept senses, individual names and, when given, lexicon
// headwords. Normalization runs in parallel; insertion order is fixed.
SearchIndex build_index(const Store& store, NormalizationMode mode = NormalizationMode::strict,
                        const LexiconRegistry* lexicons = nullptr, Execution exec = Execution::parallel);

struct SearchHit {
    IndexEntry entry;
    bool exact = false;          // same marks on every letter
    unsigned absent_slots = 0;   // mark slots present on one side only
};

struct QueryOptions {
    bool prefix = false;  // match stored skeletons that start with the query skeleton
};

// Every entry whose skeleton equals the query skeleton (or starts with it,
// in prefix mode) and whose marks are consistent letter by letter. Order:
// exact matches first, then fewer absent mark slots, then concept id
// (entries without a concept last), then kind and id.
std::vector<SearchHit> query(std::string_view term, const SearchIndex& index, QueryOptions options = {});

}  // namespace ontolex
