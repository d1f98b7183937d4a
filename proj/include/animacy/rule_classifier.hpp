#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "animacy/corpus.hpp"
#include "animacy/taxonomy.hpp"
#include "animacy/wsd.hpp"

namespace animacy {

/// Share of a lemma's senses under animate / inanimate unique beginners.
struct SenseRatio {
  double animate = 0.0;
  double inanimate = 0.0;
  int total = 0;  // number of senses
};

struct AnimacyRatios {
  double na = 0.0;
  double ni = 0.0;
  double va = 0.0;
  double vi = 0.0;
  int noun_sense_total = 0;
  int verb_sense_total = 0;
};

struct Thresholds {
  double t1 = 0.71;
  double t2 = 0.92;
  double t3 = 0.90;
};

struct RuleOptions {
  Thresholds thresholds;
  // Let an animate reflexive trigger the contextual rule alongside "who".
  bool reflexive_rule = true;
};

/// nullopt when the lemma has no noun senses. With `weights`, sense counts
/// are replaced by the lemma's sense weights.
std::optional<SenseRatio> noun_ratios(std::string_view lemma, const Taxonomy& taxonomy,
                                      const BeginnerClass& beginners,
                                      const SenseWeighting* weights = nullptr);

std::optional<SenseRatio> verb_ratios(std::string_view verb_lemma, const Taxonomy& taxonomy,
                                      const BeginnerClass& beginners,
                                      const SenseWeighting* weights = nullptr);

/// NA/NI for the head noun and, for subjects, VA/VI for the governing
/// verb. Missing senses leave the corresponding pair at zero.
AnimacyRatios compute_ratios(const NpRecord& np, const Taxonomy& taxonomy,
                             const BeginnerClass& beginners,
                             const SenseWeighting* noun_weights = nullptr);

/// The threshold cascade:
///   NA > t1                      -> Animate
///   NI > t2                      -> Inanimate
///   NA > NI and VA > VI          -> Animate
///   who (or reflexive) or VA > t3 -> Animate
///   otherwise                     -> Inanimate, or Unknown when the noun
///                                    had no senses.
Label classify_rule(const NpRecord& np, const AnimacyRatios& ratios, const RuleOptions& options = {});

/// Classifies every NP of the corpus. With `doc_weights` (keyed by
/// doc_id) the noun ratios use the document's sense weighting.
LabelStream classify_corpus_rule(const Corpus& corpus, const Taxonomy& taxonomy,
                                 const BeginnerClass& beginners, const RuleOptions& options = {},
                                 const std::map<std::string, SenseWeighting>* doc_weights = nullptr);

}  // namespace animacy
