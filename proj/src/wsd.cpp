#include "animacy/wsd.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <unordered_map>

#include "animacy/error.hpp"
#include "animacy/text.hpp"

namespace animacy {

IcTable IcTable::from_direct_counts(const Taxonomy& taxonomy, std::vector<double> direct) {
  if (taxonomy.empty()) throw Error("information content needs a non-empty taxonomy");
  if (direct.size() != taxonomy.size()) throw Error("count vector does not match taxonomy size");
  IcTable t;
  t.freq_.assign(taxonomy.size(), 0.0);
  for (std::size_t d = 0; d < taxonomy.size(); ++d) {
    if (direct[d] < 0) throw Error("negative count for " + taxonomy[d].id);
    const double mass = direct[d] + 1.0;
    t.freq_[d] += mass;
    for (auto a : taxonomy.ancestors(d)) t.freq_[a] += mass;
  }
  t.ic_.assign(taxonomy.size(), 0.0);
  for (std::size_t s = 0; s < taxonomy.size(); ++s) {
    double root_freq = taxonomy.parents(s).empty() ? t.freq_[s] : 0.0;
    for (auto a : taxonomy.ancestors(s))
      if (taxonomy.parents(a).empty()) root_freq = std::max(root_freq, t.freq_[a]);
    t.ic_[s] = std::max(0.0, -std::log(t.freq_[s] / root_freq));
  }
  return t;
}

IcTable IcTable::from_corpus(const Taxonomy& taxonomy, const Corpus& corpus) {
  std::vector<double> direct(taxonomy.size(), 0.0);
  for (const auto& doc : corpus)
    for (const auto& np : doc.nps)
      if (np.sense_key)
        if (auto i = taxonomy.index_of(*np.sense_key); i && taxonomy[*i].pos == Pos::Noun)
          direct[*i] += 1.0;
  return from_direct_counts(taxonomy, std::move(direct));
}

IcTable IcTable::from_count_file(const Taxonomy& taxonomy, std::istream& in,
                                 const std::string& source) {
  std::vector<double> direct(taxonomy.size(), 0.0);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = text::strip_cr(raw);
    if (text::is_blank_or_comment(line)) continue;
    auto f = text::split(line, '\t');
    if (f.size() != 3 || f[0] != "COUNT")
      throw ParseError(source, lineno, "expected COUNT<TAB>synset_id<TAB>real");
    auto idx = taxonomy.index_of(f[1]);
    if (!idx) throw ParseError(source, lineno, "unknown synset id " + std::string(f[1]));
    auto v = text::parse_double(f[2]);
    if (!v || *v < 0 || !std::isfinite(*v)) throw ParseError(source, lineno, "bad count");
    direct[*idx] += *v;
  }
  return from_direct_counts(taxonomy, std::move(direct));
}

void SenseWeighting::set(std::string lemma, std::vector<Entry> entries) {
  entries_[std::move(lemma)] = std::move(entries);
}

const std::vector<SenseWeighting::Entry>* SenseWeighting::find(std::string_view lemma) const {
  auto it = entries_.find(lemma);
  return it == entries_.end() ? nullptr : &it->second;
}

double SenseWeighting::weight(std::string_view lemma, std::size_t synset) const {
  const auto* e = find(lemma);
  if (!e) return 0.0;
  double total = 0.0, mine = 0.0;
  for (const auto& x : *e) {
    total += x.score;
    if (x.synset == synset) mine += x.score;
  }
  return total > 0 ? mine / total : 0.0;
}

std::vector<std::string> SenseWeighting::lemmas() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) out.push_back(k);
  return out;
}

SenseWeighting SenseWeighting::uniform(const std::set<std::string>& lemmas, const Taxonomy& taxonomy) {
  SenseWeighting w;
  for (const auto& l : lemmas) {
    auto senses = taxonomy.sense_indices(l, Pos::Noun);
    if (senses.empty()) continue;
    std::vector<Entry> e;
    for (auto s : senses) e.push_back({s, 1.0});
    w.set(l, std::move(e));
  }
  return w;
}

std::vector<SenseWeighting::Entry> sense_scores(std::string_view lemma, Pos pos,
                                                const Taxonomy& taxonomy,
                                                const SenseWeighting* weights) {
  if (weights && pos == Pos::Noun)
    if (const auto* e = weights->find(lemma)) return *e;
  std::vector<SenseWeighting::Entry> out;
  for (auto s : taxonomy.sense_indices(lemma, pos)) out.push_back({s, 1.0});
  return out;
}

SenseWeighting disambiguation_weights(const std::set<std::string>& nouns, const Taxonomy& taxonomy,
                                      const IcTable& ic) {
  struct Word {
    std::string lemma;
    std::vector<std::size_t> senses;
    // subsumer -> bitmask of the senses (by position) it subsumes
    std::unordered_map<std::size_t, std::vector<bool>> subsumes;
    std::vector<double> support;
  };
  std::vector<Word> words;
  for (const auto& l : nouns) {
    auto senses = taxonomy.sense_indices(l, Pos::Noun);
    if (senses.empty()) continue;
    Word w{l, {senses.begin(), senses.end()}, {}, std::vector<double>(senses.size(), 0.0)};
    for (std::size_t k = 0; k < w.senses.size(); ++k) {
      auto up = taxonomy.ancestors(w.senses[k]);
      up.push_back(w.senses[k]);
      for (auto a : up) {
        auto& mask = w.subsumes[a];
        mask.resize(w.senses.size(), false);
        mask[k] = true;
      }
    }
    words.push_back(std::move(w));
  }

  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      auto& a = words[i];
      auto& b = words[j];
      double best = -1.0;
      std::vector<std::size_t> argmax;
      for (const auto& [c, mask] : a.subsumes) {
        if (!b.subsumes.contains(c)) continue;
        const double v = ic.ic(c);
        if (v > best) {
          best = v;
          argmax.assign(1, c);
        } else if (v == best) {
          argmax.push_back(c);
        }
      }
      if (best <= 0.0) continue;
      for (auto* w : {&a, &b}) {
        std::vector<bool> hit(w->senses.size(), false);
        for (auto c : argmax) {
          const auto& mask = w->subsumes.at(c);
          for (std::size_t k = 0; k < mask.size(); ++k) hit[k] = hit[k] || mask[k];
        }
        for (std::size_t k = 0; k < hit.size(); ++k)
          if (hit[k]) w->support[k] += best;
      }
    }
  }

  SenseWeighting out;
  for (auto& w : words) {
    double total = 0.0;
    for (auto s : w.support) total += s;
    std::vector<SenseWeighting::Entry> e;
    for (std::size_t k = 0; k < w.senses.size(); ++k)
      e.push_back({w.senses[k], total > 0 ? w.support[k] : 1.0});
    out.set(w.lemma, std::move(e));
  }
  return out;
}

std::map<std::string, SenseWeighting> document_weights(const Corpus& corpus,
                                                       const Taxonomy& taxonomy, const IcTable& ic) {
  std::map<std::string, SenseWeighting> out;
  for (const auto& doc : corpus) {
    std::set<std::string> nouns;
    for (const auto& np : doc.nps) nouns.insert(np.head_lemma);
    out.emplace(doc.doc_id, disambiguation_weights(nouns, taxonomy, ic));
  }
  return out;
}

WeightedCounts weighted_counts(std::string_view lemma, const SenseWeighting& weights,
                               const EnrichedTaxonomy& enriched, const BeginnerClass& beginners,
                               Pos pos) {
  WeightedCounts wc;
  double total = 0.0;
  for (const auto& [s, score] : sense_scores(lemma, pos, enriched.base(), &weights)) {
    total += score;
    (resolve_animacy(enriched, s, beginners) == Label::Animate ? wc.animate : wc.inanimate) += score;
  }
  if (total > 0) {
    wc.animate /= total;
    wc.inanimate /= total;
  }
  return wc;
}

}  // namespace animacy
