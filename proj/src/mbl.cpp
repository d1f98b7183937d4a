#include "animacy/mbl.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include "animacy/error.hpp"
#include "animacy/random.hpp"

namespace animacy {

FeatureVector extract_features(const NpRecord& np, const Document& doc,
                               const EnrichedTaxonomy& enriched, const BeginnerClass& beginners,
                               const SenseWeighting* weights, const FeatureOptions& options) {
  const auto& tax = enriched.base();
  FeatureVector f;
  f.lemma = np.head_lemma;
  f.label = np.gold;
  f.pronoun_ratio = pronoun_ratio(doc, options.pronoun_counting);

  auto noun_scores = sense_scores(np.head_lemma, Pos::Noun, tax, weights);
  if (noun_scores.empty()) {
    f.out_of_vocabulary = true;
  } else {
    double animate = 0.0, total = 0.0;
    for (const auto& [s, score] : noun_scores) {
      total += score;
      if (resolve_animacy(enriched, s, beginners) == Label::Animate) animate += score;
    }
    // Scaled back to sense counts; exact for uniform scores.
    const double n = static_cast<double>(noun_scores.size());
    if (total > 0) {
      f.animate_senses = animate * n / total;
      f.inanimate_senses = (total - animate) * n / total;
    }
  }

  if (np.is_subject && np.verb_lemma) {
    for (auto s : tax.sense_indices(*np.verb_lemma, Pos::Verb))
      (resolve_animacy(enriched, s, beginners) == Label::Animate ? f.verb_animate
                                                                 : f.verb_inanimate) += 1.0;
  }
  return f;
}

FeatureSchema animacy_schema() {
  return FeatureSchema{1,
                       {Discretization::Exact, Discretization::Exact, Discretization::Exact,
                        Discretization::Exact, Discretization::Decile}};
}

Instance to_instance(const FeatureVector& f) {
  Instance i;
  i.symbols = {f.out_of_vocabulary ? "?" + f.lemma : f.lemma};
  i.numbers = {f.animate_senses, f.inanimate_senses, f.verb_animate, f.verb_inanimate,
               f.pronoun_ratio};
  i.label = f.label.value_or(Label::Unknown);
  return i;
}

namespace {

double entropy(const std::map<Label, double>& counts, double n) {
  double h = 0.0;
  for (const auto& [l, c] : counts)
    if (c > 0) h -= (c / n) * std::log2(c / n);
  return h;
}

template <typename Key, typename KeyFn>
double gain_ratio(std::span<const Instance> instances, KeyFn key) {
  const double n = static_cast<double>(instances.size());
  std::map<Label, double> classes;
  std::map<Key, std::map<Label, double>> by_value;
  for (const auto& inst : instances) {
    classes[inst.label] += 1;
    by_value[key(inst)][inst.label] += 1;
  }
  double conditional = 0.0, split = 0.0;
  for (const auto& [v, dist] : by_value) {
    double nv = 0;
    for (const auto& [l, c] : dist) nv += c;
    conditional += (nv / n) * entropy(dist, nv);
    split -= (nv / n) * std::log2(nv / n);
  }
  if (split <= 0.0) return 0.0;
  const double gain = std::max(0.0, entropy(classes, n) - conditional);
  return gain / split;
}

int decile(double x) { return std::clamp(static_cast<int>(std::floor(x * 10.0)), 0, 9); }

}  // namespace

std::vector<double> gain_ratio_weights(const FeatureSchema& schema,
                                       std::span<const Instance> instances) {
  std::vector<double> w(schema.size(), 0.0);
  if (instances.empty()) return w;
  for (std::size_t f = 0; f < schema.symbolic; ++f)
    w[f] = gain_ratio<std::string>(instances, [f](const Instance& i) { return i.symbols[f]; });
  for (std::size_t f = 0; f < schema.numeric.size(); ++f) {
    if (schema.numeric[f] == Discretization::Decile)
      w[schema.symbolic + f] =
          gain_ratio<int>(instances, [f](const Instance& i) { return decile(i.numbers[f]); });
    else
      w[schema.symbolic + f] =
          gain_ratio<double>(instances, [f](const Instance& i) { return i.numbers[f]; });
  }
  return w;
}

InstanceStore::InstanceStore(FeatureSchema schema, std::vector<Instance> instances)
    : schema_(std::move(schema)), instances_(std::move(instances)) {
  check();
  weights_ = gain_ratio_weights(schema_, instances_);
}

InstanceStore::InstanceStore(FeatureSchema schema, std::vector<Instance> instances,
                             std::vector<double> weights)
    : schema_(std::move(schema)), instances_(std::move(instances)), weights_(std::move(weights)) {
  check();
  if (weights_.size() != schema_.size()) throw Error("one weight per feature required");
  for (double w : weights_)
    if (!(w >= 0.0)) throw Error("feature weights must be non-negative");
}

void InstanceStore::check() {
  for (const auto& i : instances_)
    if (i.symbols.size() != schema_.symbolic || i.numbers.size() != schema_.numeric.size())
      throw Error("instance does not match the feature schema");
  min_.assign(schema_.numeric.size(), 0.0);
  max_.assign(schema_.numeric.size(), 0.0);
  for (std::size_t f = 0; f < schema_.numeric.size(); ++f) {
    for (std::size_t i = 0; i < instances_.size(); ++i) {
      const double v = instances_[i].numbers[f];
      if (i == 0 || v < min_[f]) min_[f] = v;
      if (i == 0 || v > max_[f]) max_[f] = v;
    }
  }
}

double InstanceStore::distance(const Instance& q, const Instance& s) const {
  double d = 0.0;
  for (std::size_t f = 0; f < schema_.symbolic; ++f)
    if (q.symbols[f] != s.symbols[f]) d += weights_[f];
  for (std::size_t f = 0; f < schema_.numeric.size(); ++f) {
    const double range = max_[f] - min_[f];
    if (range <= 0.0) continue;
    d += weights_[schema_.symbolic + f] * std::min(1.0, std::fabs(q.numbers[f] - s.numbers[f]) / range);
  }
  return d;
}

Label knn_classify(const Instance& query, const InstanceStore& store, const MblConfig& config) {
  if (store.size() == 0) throw Error("cannot classify against an empty instance store");
  if (config.k < 1 || static_cast<std::size_t>(config.k) > store.size())
    throw Error("k = " + std::to_string(config.k) + " outside [1, " + std::to_string(store.size()) + "]");
  const auto instances = store.instances();
  std::vector<double> dist(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i) dist[i] = store.distance(query, instances[i]);

  std::vector<double> distinct = dist;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  const double radius = distinct[std::min<std::size_t>(config.k, distinct.size()) - 1];

  double votes_a = 0, votes_i = 0, sum_a = 0, sum_i = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (dist[i] > radius) continue;
    if (instances[i].label == Label::Animate) {
      votes_a += 1;
      sum_a += dist[i];
    } else if (instances[i].label == Label::Inanimate) {
      votes_i += 1;
      sum_i += dist[i];
    }
  }
  if (votes_a != votes_i) return votes_a > votes_i ? Label::Animate : Label::Inanimate;
  if (config.tie_break == TieBreak::SummedDistanceThenInanimate && sum_a < sum_i)
    return Label::Animate;
  return Label::Inanimate;
}

std::vector<FeatureVector> corpus_features(const Corpus& corpus, const EnrichedTaxonomy& enriched,
                                           const BeginnerClass& beginners,
                                           const std::map<std::string, SenseWeighting>* doc_weights,
                                           const FeatureOptions& options) {
  std::vector<FeatureVector> out;
  for (const auto& doc : corpus) {
    const SenseWeighting* w = nullptr;
    if (doc_weights)
      if (auto it = doc_weights->find(doc.doc_id); it != doc_weights->end()) w = &it->second;
    for (const auto& np : doc.nps)
      out.push_back(extract_features(np, doc, enriched, beginners, w, options));
  }
  return out;
}

LabelStream classify_corpus_mbl(const Corpus& train, const Corpus& test,
                                const EnrichedTaxonomy& enriched, const BeginnerClass& beginners,
                                const MblConfig& config,
                                const std::map<std::string, SenseWeighting>* train_weights,
                                const std::map<std::string, SenseWeighting>* test_weights,
                                const FeatureOptions& options) {
  std::vector<Instance> instances;
  for (const auto& f : corpus_features(train, enriched, beginners, train_weights, options))
    if (f.label) instances.push_back(to_instance(f));
  InstanceStore store(animacy_schema(), std::move(instances));

  LabelStream out;
  auto features = corpus_features(test, enriched, beginners, test_weights, options);
  std::size_t i = 0;
  for (const auto& doc : test)
    for (const auto& np : doc.nps)
      out.push_back({doc.doc_id, np.key(), knn_classify(to_instance(features[i++]), store, config)});
  return out;
}

CrossValidation cross_validate(const Corpus& corpus, const EnrichedTaxonomy& enriched,
                               const BeginnerClass& beginners, int folds, const MblConfig& config,
                               std::uint64_t seed,
                               const std::map<std::string, SenseWeighting>* doc_weights,
                               const FeatureOptions& options) {
  if (folds < 2) throw Error("cross-validation needs at least 2 folds");
  CrossValidation cv;
  std::vector<Instance> instances;
  {
    auto features = corpus_features(corpus, enriched, beginners, doc_weights, options);
    std::size_t i = 0;
    for (const auto& doc : corpus)
      for (const auto& np : doc.nps) {
        const auto& f = features[i++];
        if (!f.label) continue;
        instances.push_back(to_instance(f));
        cv.gold.push_back({doc.doc_id, np.key(), *f.label});
      }
  }
  const std::size_t n = instances.size();
  if (n < static_cast<std::size_t>(folds))
    throw Error("cross-validation needs at least as many labelled instances (" + std::to_string(n) +
                ") as folds (" + std::to_string(folds) + ")");

  const std::size_t smallest_train = n - (n + folds - 1) / folds;
  if (config.k < 1 || static_cast<std::size_t>(config.k) > smallest_train)
    throw Error("k = " + std::to_string(config.k) + " exceeds the smallest training part (" +
                std::to_string(smallest_train) + " instances)");

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));
  cv.fold.assign(n, 0);
  for (std::size_t pos = 0; pos < n; ++pos) cv.fold[order[pos]] = static_cast<int>(pos % folds);

  std::vector<Label> predicted(n, Label::Unknown);
  {
    std::vector<std::jthread> workers;
    for (int f = 0; f < folds; ++f) {
      workers.emplace_back([&, f] {
        std::vector<Instance> train;
        for (std::size_t i = 0; i < n; ++i)
          if (cv.fold[i] != f) train.push_back(instances[i]);
        InstanceStore store(animacy_schema(), std::move(train));
        for (std::size_t i = 0; i < n; ++i)
          if (cv.fold[i] == f) predicted[i] = knn_classify(instances[i], store, config);
      });
    }
  }
  for (std::size_t i = 0; i < n; ++i) cv.predicted.push_back({cv.gold[i].doc_id, cv.gold[i].key, predicted[i]});
  cv.report = score(cv.gold, cv.predicted);
  return cv;
}

}  // namespace animacy
