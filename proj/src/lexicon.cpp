#include "ontolex/lexicon.hpp"

#include <fstream>
#include <sstream>

#include "ontolex/errors.hpp"
#include "ontolex/ids.hpp"

namespace ontolex {

void LexiconRegistry::register_lexicon(Lexicon lex) {
    if (lex.lexicon_id.empty()) throw Error("lexicon id must not be empty");
    if (lexicons_.count(lex.lexicon_id)) throw DuplicateLexiconError("lexicon '" + lex.lexicon_id + "' is already registered");
    auto id = lex.lexicon_id;
    lexicons_.emplace(std::move(id), std::move(lex));
}

void LexiconRegistry::add_sense(LexicalSense sense) {
    if (!lexicons_.count(sense.lexicon_id)) throw NotFoundError("lexicon '" + sense.lexicon_id + "' is not registered");
    if (sense.entry_id == 0) throw Error("entry ids are positive");
    if (sense.headword.empty()) throw Error("entry " + std::to_string(sense.entry_id) + " has an empty headword");
    Key key{sense.lexicon_id, sense.entry_id};
    if (senses_.count(key))
        throw DuplicateIdError("entry " + std::to_string(sense.entry_id) + " already exists in lexicon '" +
                               sense.lexicon_id + "'");
    senses_.emplace(std::move(key), std::move(sense));
}

const LexicalSense& LexiconRegistry::lookup_sense(const std::string& lexicon_id, std::uint64_t entry_id) const {
    if (!lexicons_.count(lexicon_id)) throw NotFoundError("lexicon '" + lexicon_id + "' is not registered");
    auto it = senses_.find(Key{lexicon_id, entry_id});
    if (it == senses_.end())
        throw NotFoundError("no entry " + std::to_string(entry_id) + " in lexicon '" + lexicon_id + "'");
    return it->second;
}

const Lexicon& LexiconRegistry::lexicon(const std::string& lexicon_id) const {
    auto it = lexicons_.find(lexicon_id);
    if (it == lexicons_.end()) throw NotFoundError("lexicon '" + lexicon_id + "' is not registered");
    return it->second;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

}  // namespace

void LexiconRegistry::load_tsv(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        auto cols = split(line, '\t');
        if (cols.size() < 4 || cols.size() > 5) throw ParseError("expected 4 or 5 tab-separated columns", lineno, 1);
        LexicalSense s;
        s.lexicon_id = cols[0];
        s.entry_id = parse_id_text(cols[1]);
        if (s.entry_id == 0) throw ParseError("malformed entry id '" + cols[1] + "'", lineno, 1);
        s.headword = cols[2];
        s.gloss = cols[3];
        if (cols.size() == 5 && !cols[4].empty()) {
            for (const auto& item : split(cols[4], '|')) {
                const auto colon = item.find(':');
                if (colon == std::string::npos || colon == 0)
                    throw ParseError("translation '" + item + "' is not lang:term", lineno, 1);
                s.translations.push_back({item.substr(0, colon), item.substr(colon + 1)});
            }
        }
        if (!has_lexicon(s.lexicon_id)) register_lexicon(Lexicon{s.lexicon_id, s.lexicon_id, {}, std::nullopt});
        try {
            add_sense(std::move(s));
        } catch (const Error& e) {
            throw ParseError(e.what(), lineno, 1);
        }
    }
}

void LexiconRegistry::load_tsv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    load_tsv(in);
}

void LexiconRegistry::save_tsv(std::ostream& out) const {
    out << "# lexicon_id\tentry_id\theadword\tgloss\ttranslations\n";
    for (const auto& [key, s] : senses_) {
        out << s.lexicon_id << '\t' << s.entry_id << '\t' << s.headword << '\t' << s.gloss << '\t';
        for (std::size_t i = 0; i < s.translations.size(); ++i) {
            if (i) out << '|';
            out << s.translations[i].language << ':' << s.translations[i].term;
        }
        out << '\n';
    }
}

}  // namespace ontolex
