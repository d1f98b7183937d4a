#include "animacy/rule_classifier.hpp"

namespace animacy {
namespace {

std::optional<SenseRatio> ratios_for(std::string_view lemma, Pos pos, const Taxonomy& taxonomy,
                                     const BeginnerClass& beginners, const SenseWeighting* weights) {
  auto scores = sense_scores(lemma, pos, taxonomy, weights);
  if (scores.empty()) return std::nullopt;
  double animate = 0.0, inanimate = 0.0;
  for (const auto& [s, score] : scores)
    (beginners.is_animate(taxonomy.beginner_of(s), pos) ? animate : inanimate) += score;
  const double total = animate + inanimate;
  SenseRatio r;
  r.total = static_cast<int>(scores.size());
  if (total > 0) {
    r.animate = animate / total;
    r.inanimate = inanimate / total;
  }
  return r;
}

}  // namespace

std::optional<SenseRatio> noun_ratios(std::string_view lemma, const Taxonomy& taxonomy,
                                      const BeginnerClass& beginners, const SenseWeighting* weights) {
  return ratios_for(lemma, Pos::Noun, taxonomy, beginners, weights);
}

std::optional<SenseRatio> verb_ratios(std::string_view verb_lemma, const Taxonomy& taxonomy,
                                      const BeginnerClass& beginners, const SenseWeighting* weights) {
  return ratios_for(verb_lemma, Pos::Verb, taxonomy, beginners, weights);
}

AnimacyRatios compute_ratios(const NpRecord& np, const Taxonomy& taxonomy,
                             const BeginnerClass& beginners, const SenseWeighting* noun_weights) {
  AnimacyRatios r;
  if (auto n = noun_ratios(np.head_lemma, taxonomy, beginners, noun_weights)) {
    r.na = n->animate;
    r.ni = n->inanimate;
    r.noun_sense_total = n->total;
  }
  if (np.is_subject && np.verb_lemma) {
    if (auto v = verb_ratios(*np.verb_lemma, taxonomy, beginners)) {
      r.va = v->animate;
      r.vi = v->inanimate;
      r.verb_sense_total = v->total;
    }
  }
  return r;
}

Label classify_rule(const NpRecord& np, const AnimacyRatios& r, const RuleOptions& options) {
  const auto& t = options.thresholds;
  if (r.na > t.t1) return Label::Animate;
  if (r.ni > t.t2) return Label::Inanimate;
  if (r.na > r.ni && r.va > r.vi) return Label::Animate;
  const bool contextual =
      np.has_who_complementizer || (options.reflexive_rule && np.has_animate_reflexive);
  if (contextual || r.va > t.t3) return Label::Animate;
  return r.noun_sense_total == 0 ? Label::Unknown : Label::Inanimate;
}

LabelStream classify_corpus_rule(const Corpus& corpus, const Taxonomy& taxonomy,
                                 const BeginnerClass& beginners, const RuleOptions& options,
                                 const std::map<std::string, SenseWeighting>* doc_weights) {
  LabelStream out;
  for (const auto& doc : corpus) {
    const SenseWeighting* w = nullptr;
    if (doc_weights)
      if (auto it = doc_weights->find(doc.doc_id); it != doc_weights->end()) w = &it->second;
    for (const auto& np : doc.nps) {
      auto ratios = compute_ratios(np, taxonomy, beginners, w);
      out.push_back({doc.doc_id, np.key(), classify_rule(np, ratios, options)});
    }
  }
  return out;
}

}  // namespace animacy
