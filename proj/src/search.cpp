#include "ontolex/search.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

#include "ontolex/lexicon.hpp"
#include "ontolex/store.hpp"

namespace ontolex {

std::optional<ConceptId> SearchIndex::concept_of_sense(SenseId id) const {
    auto it = concept_by_sense_.find(id);
    if (it == concept_by_sense_.end()) return std::nullopt;
    return it->second;
}

struct SearchAccess {
    static const std::map<std::string, std::vector<std::size_t>>& buckets(const SearchIndex& idx) {
        return idx.buckets_;
    }
};

SearchIndex build_index(const Store& store, NormalizationMode mode, const LexiconRegistry* lexicons, Execution exec) {
    SearchIndex idx;
    idx.mode_ = mode;

    for (const auto& [cid, c] : store.concepts()) {
        for (const auto& s : c.synset) {
            IndexEntry e;
            e.kind = IndexEntry::Kind::concept_sense;
            e.id = s.id.value;
            e.concept_id = cid;
            e.term = s.term;
            idx.entries_.push_back(std::move(e));
            idx.concept_by_sense_.emplace(s.id, cid);
        }
    }
    for (const auto& [iid, ind] : store.individuals()) {
        for (const auto& s : ind.names) {
            IndexEntry e;
            e.kind = IndexEntry::Kind::individual_name;
            e.id = s.id.value;
            e.individual = iid;
            e.term = s.term;
            idx.entries_.push_back(std::move(e));
        }
    }
    if (lexicons) {
        for (const auto& [key, sense] : lexicons->senses()) {
            IndexEntry e;
            e.kind = IndexEntry::Kind::lexicon_entry;
            e.id = sense.entry_id;
            e.lexicon_id = sense.lexicon_id;
            e.term = sense.headword;
            idx.entries_.push_back(std::move(e));
        }
    }

    std::vector<std::string> skeletons(idx.entries_.size());
    auto normalize_one = [&](std::size_t i) {
        auto key = normalize_term(idx.entries_[i].term, mode);
        skeletons[i] = std::move(key.skeleton);
        idx.entries_[i].marks = std::move(key.marks);
    };
    const auto count = static_cast<long>(idx.entries_.size());
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < count; ++i) normalize_one(static_cast<std::size_t>(i));
    } else {
        for (long i = 0; i < count; ++i) normalize_one(static_cast<std::size_t>(i));
    }
    for (std::size_t i = 0; i < skeletons.size(); ++i) idx.buckets_[skeletons[i]].push_back(i);
    return idx;
}

namespace {

std::optional<SearchHit> match(const NormalizedKey& q, const IndexEntry& e) {
    // In prefix mode the stored entry may be longer; only the query's letters are compared.
    if (e.marks.size() < q.marks.size()) return std::nullopt;
    SearchHit hit;
    hit.exact = e.marks.size() == q.marks.size();
    for (std::size_t i = 0; i < q.marks.size(); ++i) {
        if (!marks_consistent(q.marks[i], e.marks[i])) return std::nullopt;
        hit.absent_slots += absent_mark_slots(q.marks[i], e.marks[i]);
        if (q.marks[i] != e.marks[i]) hit.exact = false;
    }
    hit.entry = e;
    return hit;
}

}  // namespace

std::vector<SearchHit> query(std::string_view term, const SearchIndex& index, QueryOptions options) {
    const auto q = normalize_term(term, index.mode());
    const auto& buckets = SearchAccess::buckets(index);
    std::vector<SearchHit> hits;

    auto scan_bucket = [&](const std::vector<std::size_t>& positions) {
        for (auto pos : positions)
            if (auto hit = match(q, index.entries()[pos])) hits.push_back(std::move(*hit));
    };
    if (options.prefix) {
        for (auto it = buckets.lower_bound(q.skeleton);
             it != buckets.end() && it->first.compare(0, q.skeleton.size(), q.skeleton) == 0; ++it)
            scan_bucket(it->second);
    } else if (auto it = buckets.find(q.skeleton); it != buckets.end()) {
        scan_bucket(it->second);
    }

    auto rank = [](const SearchHit& h) {
        const auto owner = h.entry.concept_id ? h.entry.concept_id->value : std::numeric_limits<std::uint64_t>::max();
        return std::make_tuple(!h.exact, h.absent_slots, owner, h.entry.kind, h.entry.lexicon_id, h.entry.id);
    };
    std::sort(hits.begin(), hits.end(), [&](const SearchHit& a, const SearchHit& b) { return rank(a) < rank(b); });
    return hits;
}

}  // namespace ontolex
