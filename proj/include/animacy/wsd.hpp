#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "animacy/corpus.hpp"
#include "animacy/enrichment.hpp"
#include "animacy/taxonomy.hpp"

namespace animacy {

/// Information content per synset, -log(freq(s) / freq(root)), where
/// freq(s) sums add-one smoothed direct counts over s and its hyponyms.
class IcTable {
 public:
  /// `direct` holds one raw count per synset (taxonomy order).
  static IcTable from_direct_counts(const Taxonomy& taxonomy, std::vector<double> direct);
  /// Counts every resolvable noun sense key in the corpus.
  static IcTable from_corpus(const Taxonomy& taxonomy, const Corpus& corpus);
  /// `COUNT<TAB>synset_id<TAB>real` lines; unlisted synsets count 0.
  static IcTable from_count_file(const Taxonomy& taxonomy, std::istream& in,
                                 const std::string& source = "<stream>");

  double ic(std::size_t synset) const { return ic_[synset]; }
  double frequency(std::size_t synset) const { return freq_[synset]; }
  std::span<const double> values() const noexcept { return ic_; }

 private:
  std::vector<double> freq_;
  std::vector<double> ic_;
};

/// Per-lemma sense scores. The weight of a sense is its score divided by
/// the lemma's score total, so weights always sum to one.
class SenseWeighting {
 public:
  struct Entry {
    std::size_t synset;
    double score;
    bool operator==(const Entry&) const = default;
  };

  void set(std::string lemma, std::vector<Entry> entries);
  const std::vector<Entry>* find(std::string_view lemma) const;
  /// 0 for unknown lemmas or senses.
  double weight(std::string_view lemma, std::size_t synset) const;
  std::vector<std::string> lemmas() const;

  static SenseWeighting uniform(const std::set<std::string>& lemmas, const Taxonomy& taxonomy);

  bool operator==(const SenseWeighting&) const = default;

 private:
  std::map<std::string, std::vector<Entry>, std::less<>> entries_;
};

/// Senses of a noun or verb lemma with their scores: taken from `weights`
/// when it covers the lemma, otherwise one per sense.
std::vector<SenseWeighting::Entry> sense_scores(std::string_view lemma, Pos pos,
                                                const Taxonomy& taxonomy,
                                                const SenseWeighting* weights);

/// Group disambiguation over the nouns of one text. Each lemma pair
/// contributes the information content of its most informative common
/// subsumer to every sense of both lemmas lying under that subsumer.
/// Lemmas without support keep uniform scores.
SenseWeighting disambiguation_weights(const std::set<std::string>& nouns, const Taxonomy& taxonomy,
                                      const IcTable& ic);

/// One weighting per document (keyed by doc_id) over its NP head lemmas.
std::map<std::string, SenseWeighting> document_weights(const Corpus& corpus,
                                                       const Taxonomy& taxonomy, const IcTable& ic);

struct WeightedCounts {
  double animate = 0.0;
  double inanimate = 0.0;
};

/// Weighted share of a noun's senses resolving Animate / Inanimate under
/// the enriched fallback chain. Both are 0 for out-of-vocabulary lemmas.
WeightedCounts weighted_counts(std::string_view lemma, const SenseWeighting& weights,
                               const EnrichedTaxonomy& enriched, const BeginnerClass& beginners,
                               Pos pos = Pos::Noun);

}  // namespace animacy
