#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "animacy/corpus.hpp"
#include "animacy/enrichment.hpp"
#include "animacy/evaluation.hpp"
#include "animacy/wsd.hpp"

namespace animacy {

/// Instance describing one NP for the memory-based learner.
struct FeatureVector {
  std::string lemma;
  bool out_of_vocabulary = false;
  double animate_senses = 0.0;
  double inanimate_senses = 0.0;
  double verb_animate = 0.0;    // 0 for non-subjects
  double verb_inanimate = 0.0;  // 0 for non-subjects
  double pronoun_ratio = 0.0;
  std::optional<Label> label;
};

struct FeatureOptions {
  PronounCounting pronoun_counting = PronounCounting::Tokens;
};

/// Sense counts use the enriched status of each sense, falling back to the
/// nearest decided hypernym and then the unique beginner. With `weights`
/// each sense contributes its weight scaled by the sense count, so uniform
/// weights give the plain counts.
FeatureVector extract_features(const NpRecord& np, const Document& doc,
                               const EnrichedTaxonomy& enriched, const BeginnerClass& beginners,
                               const SenseWeighting* weights = nullptr,
                               const FeatureOptions& options = {});

/// How a numeric feature is turned into symbols for gain-ratio weighting.
enum class Discretization { Exact, Decile };

struct FeatureSchema {
  std::size_t symbolic = 0;
  std::vector<Discretization> numeric;
  std::size_t size() const { return symbolic + numeric.size(); }
};

/// Generic instance: symbolic values first, then numeric values.
struct Instance {
  std::vector<std::string> symbols;
  std::vector<double> numbers;
  Label label = Label::Unknown;
};

/// Lemma as the one symbolic feature; sense and verb counts exact, the
/// pronoun ratio bucketed into deciles.
FeatureSchema animacy_schema();
Instance to_instance(const FeatureVector& f);

/// Gain ratio per feature (schema order). Constant features weigh 0.
std::vector<double> gain_ratio_weights(const FeatureSchema& schema, std::span<const Instance> instances);

/// Training instances with their gain-ratio weights and numeric ranges.
class InstanceStore {
 public:
  InstanceStore(FeatureSchema schema, std::vector<Instance> instances);
  /// Uses the given weights instead of computing gain ratios.
  InstanceStore(FeatureSchema schema, std::vector<Instance> instances, std::vector<double> weights);

  const FeatureSchema& schema() const noexcept { return schema_; }
  std::span<const Instance> instances() const noexcept { return instances_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return instances_.size(); }

  /// Weighted overlap distance. Numeric differences are scaled by the
  /// stored value range and capped at 1; a zero range contributes 0.
  double distance(const Instance& query, const Instance& stored) const;

 private:
  void check();

  FeatureSchema schema_;
  std::vector<Instance> instances_;
  std::vector<double> weights_;
  std::vector<double> min_, max_;
};

enum class TieBreak {
  SummedDistanceThenInanimate,
  Inanimate,
};

struct MblConfig {
  int k = 3;
  TieBreak tie_break = TieBreak::SummedDistanceThenInanimate;
};

/// Majority class among all stored instances whose distance is one of the
/// k smallest distinct distances. Throws animacy::Error on an empty store
/// or k outside [1, store size].
Label knn_classify(const Instance& query, const InstanceStore& store, const MblConfig& config = {});

/// Features for every NP of a corpus (corpus order). `doc_weights` is
/// keyed by doc_id.
std::vector<FeatureVector> corpus_features(const Corpus& corpus, const EnrichedTaxonomy& enriched,
                                           const BeginnerClass& beginners,
                                           const std::map<std::string, SenseWeighting>* doc_weights = nullptr,
                                           const FeatureOptions& options = {});

/// Trains on the gold-labelled NPs of `train` and labels every NP of `test`.
LabelStream classify_corpus_mbl(const Corpus& train, const Corpus& test,
                                const EnrichedTaxonomy& enriched, const BeginnerClass& beginners,
                                const MblConfig& config = {},
                                const std::map<std::string, SenseWeighting>* train_weights = nullptr,
                                const std::map<std::string, SenseWeighting>* test_weights = nullptr,
                                const FeatureOptions& options = {});

struct CrossValidation {
  EvalReport report;
  LabelStream gold;
  LabelStream predicted;
  std::vector<int> fold;  // fold of each gold instance
};

/// Seeded k-fold cross-validation over the gold-labelled NPs. Weights are
/// recomputed from each training part.
CrossValidation cross_validate(const Corpus& corpus, const EnrichedTaxonomy& enriched,
                               const BeginnerClass& beginners, int folds, const MblConfig& config,
                               std::uint64_t seed,
                               const std::map<std::string, SenseWeighting>* doc_weights = nullptr,
                               const FeatureOptions& options = {});

}  // namespace animacy
