#pragma once
// Registry of digitized lexicons and their entries.

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ontolex {

struct Lexicon {
    std::string lexicon_id;
    std::string title;
    std::vector<std::string> languages;
    std::optional<std::string> domain;

    friend bool operator==(const Lexicon&, const Lexicon&) = default;
};

struct Translation {
    std::string language;
    std::string term;
    friend bool operator==(const Translation&, const Translation&) = default;
};

struct LexicalSense {
    std::string lexicon_id;
    std::uint64_t entry_id = 0;
    std::string headword;
    std::string gloss;
    std::vector<Translation> translations;

    friend bool operator==(const LexicalSense&, const LexicalSense&) = default;
};

class LexiconRegistry {
public:
    using Key = std::pair<std::string, std::uint64_t>;

    // Throws DuplicateLexiconError.
    void register_lexicon(Lexicon lex);
    // Throws NotFoundError (lexicon not registered), DuplicateIdError or
    // Error (empty headword, zero entry id).
    void add_sense(LexicalSense sense);
    // Throws NotFoundError.
    const LexicalSense& lookup_sense(const std::string& lexicon_id, std::uint64_t entry_id) const;
    const Lexicon& lexicon(const std::string& lexicon_id) const;

    bool has_lexicon(const std::string& lexicon_id) const { return lexicons_.count(lexicon_id) != 0; }
    const std::map<std::string, Lexicon>& lexicons() const { return lexicons_; }
    const std::map<Key, LexicalSense>& senses() const { return senses_; }
    std::size_t size() const { return senses_.size(); }

    // TSV rows: lexicon_id, entry_id, headword, gloss, translations where
    // translations is "lang:term|lang:term". Lexicons not yet registered are
    // registered with their id as title. '#' lines are comments.
    void load_tsv(std::istream& in);
    void load_tsv_file(const std::string& path);
    void save_tsv(std::ostream& out) const;

private:
    std::map<std::string, Lexicon> lexicons_;
    std::map<Key, LexicalSense> senses_;
};

}  // namespace ontolex
