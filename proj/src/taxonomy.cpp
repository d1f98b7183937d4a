#include "animacy/taxonomy.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "animacy/error.hpp"
#include "animacy/text.hpp"

namespace animacy {

Label beginner_animacy(int lexfile, Pos pos, const BeginnerClass& c) {
  return c.is_animate(lexfile, pos) ? Label::Animate : Label::Inanimate;
}

Taxonomy::Taxonomy(std::vector<Synset> synsets) : synsets_(std::move(synsets)) {
  const std::size_t n = synsets_.size();
  by_id_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& s = synsets_[i];
    if (s.id.empty()) throw Error("synset #" + std::to_string(i) + " has an empty id");
    if (s.lemmas.empty()) throw Error("synset " + s.id + " has no lemmas");
    for (auto& l : s.lemmas) l = text::lower(l);
    if (!by_id_.emplace(s.id, i).second) throw Error("duplicate synset id " + s.id);
  }

  parents_.assign(n, {});
  children_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = synsets_[i];
    for (const auto& h : s.hypernyms) {
      auto it = by_id_.find(h);
      if (it == by_id_.end()) throw Error("synset " + s.id + " has dangling hypernym " + h);
      if (synsets_[it->second].pos != s.pos)
        throw Error("synset " + s.id + " and its hypernym " + h + " differ in part of speech");
      if (std::find(parents_[i].begin(), parents_[i].end(), it->second) != parents_[i].end())
        throw Error("synset " + s.id + " lists hypernym " + h + " twice");
      parents_[i].push_back(it->second);
      children_[it->second].push_back(i);
    }
    if (s.hypernyms.empty() && !s.lexfile)
      throw Error("root synset " + s.id + " has no lexfile");
  }

  // Depth-first cycle check that also yields a parents-first order.
  enum class Mark : unsigned char { White, Grey, Black };
  std::vector<Mark> mark(n, Mark::White);
  std::vector<std::size_t> path;
  topo_.reserve(n);
  for (std::size_t start = 0; start < n; ++start) {
    if (mark[start] != Mark::White) continue;
    // Iterative DFS over hypernym edges: (node, next parent slot).
    std::vector<std::pair<std::size_t, std::size_t>> stack{{start, 0}};
    mark[start] = Mark::Grey;
    path.assign(1, start);
    while (!stack.empty()) {
      auto& [node, slot] = stack.back();
      if (slot < parents_[node].size()) {
        std::size_t p = parents_[node][slot++];
        if (mark[p] == Mark::Grey) {
          auto from = std::find(path.begin(), path.end(), p);
          std::string ids;
          for (auto it = from; it != path.end(); ++it) ids += synsets_[*it].id + " -> ";
          ids += synsets_[p].id;
          throw Error("hypernym cycle detected: " + ids);
        }
        if (mark[p] == Mark::White) {
          mark[p] = Mark::Grey;
          path.push_back(p);
          stack.emplace_back(p, 0);
        }
      } else {
        mark[node] = Mark::Black;
        topo_.push_back(node);
        path.pop_back();
        stack.pop_back();
      }
    }
  }

  beginner_.assign(n, 0);
  for (std::size_t i : topo_) {
    const auto& s = synsets_[i];
    beginner_[i] = s.lexfile ? *s.lexfile : beginner_[parents_[i].front()];
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& l : synsets_[i].lemmas) {
      auto& v = lemma_index_[LemmaKey{l, synsets_[i].pos}];
      if (v.empty() || v.back() != i) v.push_back(i);
    }
  }
}

std::optional<std::size_t> Taxonomy::index_of(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::size_t Taxonomy::require(std::string_view id) const {
  auto i = index_of(id);
  if (!i) throw Error("unknown synset id " + std::string(id));
  return *i;
}

std::span<const std::size_t> Taxonomy::sense_indices(std::string_view lemma, Pos pos) const {
  auto it = lemma_index_.find(LemmaKey{std::string(lemma), pos});
  if (it == lemma_index_.end()) return {};
  return it->second;
}

std::vector<SynsetId> Taxonomy::senses(std::string_view lemma, Pos pos) const {
  std::vector<SynsetId> out;
  for (auto i : sense_indices(lemma, pos)) out.push_back(synsets_[i].id);
  return out;
}

namespace {

std::vector<std::size_t> closure(std::size_t start,
                                 const std::vector<std::vector<std::size_t>>& edges) {
  std::vector<bool> seen(edges.size(), false);
  std::vector<std::size_t> stack(edges[start].begin(), edges[start].end());
  std::vector<std::size_t> out;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    if (seen[v]) continue;
    seen[v] = true;
    out.push_back(v);
    stack.insert(stack.end(), edges[v].begin(), edges[v].end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::size_t> Taxonomy::ancestors(std::size_t i) const { return closure(i, parents_); }

std::vector<std::size_t> Taxonomy::descendants(std::size_t i) const {
  return closure(i, children_);
}

std::vector<std::size_t> Taxonomy::roots() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < synsets_.size(); ++i)
    if (parents_[i].empty()) out.push_back(i);
  return out;
}

Taxonomy Taxonomy::load(std::istream& in, const std::string& source) {
  std::vector<Synset> synsets;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = text::strip_cr(raw);
    if (text::is_blank_or_comment(line)) continue;
    auto f = text::split(line, '\t');
    if (f[0] != "SYNSET") throw ParseError(source, lineno, "expected a SYNSET record");
    if (f.size() != 5 && f.size() != 6)
      throw ParseError(source, lineno, "SYNSET record needs 5 or 6 tab-separated fields");
    Synset s;
    s.id = std::string(f[1]);
    if (s.id.empty()) throw ParseError(source, lineno, "empty synset id");
    if (f[2] == "n")
      s.pos = Pos::Noun;
    else if (f[2] == "v")
      s.pos = Pos::Verb;
    else
      throw ParseError(source, lineno, "part of speech must be n or v");
    if (f[3] != "-") {
      auto lf = text::parse_int<int>(f[3]);
      if (!lf || *lf < 0) throw ParseError(source, lineno, "bad lexfile '" + std::string(f[3]) + "'");
      s.lexfile = *lf;
    }
    for (auto l : text::split(f[4], ',')) {
      if (l.empty()) throw ParseError(source, lineno, "empty lemma");
      s.lemmas.push_back(text::lower(l));
    }
    if (f.size() == 6 && !f[5].empty()) {
      for (auto h : text::split(f[5], ',')) {
        if (h.empty()) throw ParseError(source, lineno, "empty hypernym id");
        s.hypernyms.emplace_back(h);
      }
    }
    synsets.push_back(std::move(s));
  }
  try {
    return Taxonomy(std::move(synsets));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw Error(source + ": " + e.what());
  }
}

Taxonomy Taxonomy::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open taxonomy file " + path.string());
  return load(in, path.string());
}

void Taxonomy::save(std::ostream& out) const {
  for (const auto& s : synsets_) {
    out << "SYNSET\t" << s.id << '\t' << pos_code(s.pos) << '\t';
    if (s.lexfile)
      out << *s.lexfile;
    else
      out << '-';
    out << '\t';
    for (std::size_t i = 0; i < s.lemmas.size(); ++i) out << (i ? "," : "") << s.lemmas[i];
    out << '\t';
    for (std::size_t i = 0; i < s.hypernyms.size(); ++i)
      out << (i ? "," : "") << s.hypernyms[i];
    out << '\n';
  }
}

}  // namespace animacy
