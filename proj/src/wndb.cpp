#include <algorithm>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "animacy/error.hpp"
#include "animacy/taxonomy.hpp"
#include "animacy/text.hpp"

namespace animacy {
namespace {

using IndexPairs = std::set<std::pair<std::string, std::string>>;  // (lemma, offset)

std::string make_id(char pos, const std::string& offset) { return std::string(1, pos) + "-" + offset; }

// Lemmas in data files keep WordNet's underscores; adjective position
// markers such as "(p)" only occur on adjectives but are stripped anyway.
std::string clean_lemma(std::string w) {
  if (auto p = w.find('('); p != std::string::npos && !w.empty() && w.back() == ')') w.erase(p);
  return text::lower(w);
}

IndexPairs read_index(std::istream& in, const std::string& source) {
  IndexPairs pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == ' ') continue;  // license header
    std::istringstream ss(line);
    std::string lemma, pos;
    std::size_t synset_cnt = 0, p_cnt = 0;
    if (!(ss >> lemma >> pos >> synset_cnt >> p_cnt))
      throw ParseError(source, lineno, "malformed index line");
    std::string skip;
    for (std::size_t i = 0; i < p_cnt; ++i) ss >> skip;
    std::size_t sense_cnt = 0, tagsense_cnt = 0;
    if (!(ss >> sense_cnt >> tagsense_cnt)) throw ParseError(source, lineno, "malformed index line");
    for (std::size_t i = 0; i < synset_cnt; ++i) {
      std::string off;
      if (!(ss >> off)) throw ParseError(source, lineno, "missing synset offset");
      pairs.emplace(clean_lemma(lemma), off);
    }
  }
  return pairs;
}

void read_data(std::istream& in, char pos, const std::string& source, const IndexPairs* index,
               std::vector<Synset>& out) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == ' ') continue;
    if (auto bar = line.find(" | "); bar != std::string::npos) line.erase(bar);
    std::istringstream ss(line);
    std::string offset, ss_type, wcnt_hex;
    int lexfile = -1;
    if (!(ss >> offset >> lexfile >> ss_type >> wcnt_hex))
      throw ParseError(source, lineno, "malformed data line");
    std::size_t wcnt = std::stoul(wcnt_hex, nullptr, 16);
    Synset s;
    s.id = make_id(pos, offset);
    s.pos = pos == 'n' ? Pos::Noun : Pos::Verb;
    s.lexfile = lexfile;
    std::vector<std::string> all_lemmas;
    for (std::size_t i = 0; i < wcnt; ++i) {
      std::string word, lex_id;
      if (!(ss >> word >> lex_id)) throw ParseError(source, lineno, "truncated word list");
      auto l = clean_lemma(word);
      if (std::find(all_lemmas.begin(), all_lemmas.end(), l) == all_lemmas.end())
        all_lemmas.push_back(l);
    }
    for (const auto& l : all_lemmas)
      if (!index || index->contains({l, offset})) s.lemmas.push_back(l);
    if (s.lemmas.empty()) s.lemmas = all_lemmas;
    std::size_t pcnt = 0;
    if (!(ss >> pcnt)) throw ParseError(source, lineno, "missing pointer count");
    for (std::size_t i = 0; i < pcnt; ++i) {
      std::string sym, target, tpos, srctgt;
      if (!(ss >> sym >> target >> tpos >> srctgt)) throw ParseError(source, lineno, "truncated pointer list");
      if ((sym == "@" || sym == "@i") && !tpos.empty() && tpos[0] == pos) {
        auto h = make_id(pos, target);
        if (std::find(s.hypernyms.begin(), s.hypernyms.end(), h) == s.hypernyms.end())
          s.hypernyms.push_back(h);
      }
    }
    out.push_back(std::move(s));
  }
}

}  // namespace

Taxonomy import_wndb(std::istream* data_noun, std::istream* data_verb, std::istream* index_noun,
                     std::istream* index_verb) {
  std::vector<Synset> synsets;
  IndexPairs in_noun, in_verb;
  if (index_noun) in_noun = read_index(*index_noun, "index.noun");
  if (index_verb) in_verb = read_index(*index_verb, "index.verb");
  if (data_noun) read_data(*data_noun, 'n', "data.noun", index_noun ? &in_noun : nullptr, synsets);
  if (data_verb) read_data(*data_verb, 'v', "data.verb", index_verb ? &in_verb : nullptr, synsets);
  return Taxonomy(std::move(synsets));
}

}  // namespace animacy
