#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "animacy/corpus.hpp"

namespace animacy {

/// Labels indexed [document][np] in corpus order.
using DocLabels = std::vector<std::vector<Label>>;

/// NPs from the pronoun's sentence and the `window` sentences before it,
/// in text order, stopping at the pronoun's own position.
std::vector<std::size_t> candidate_set(const PronounRecord& pronoun, const Document& doc,
                                       int window = 2);

/// Keeps candidates whose label agrees with the pronoun. Unknown always
/// survives.
std::vector<std::size_t> filter_candidates(bool pronoun_animate, std::span<const std::size_t> candidates,
                                           std::span<const Label> np_labels);

/// Picks an antecedent from a filtered candidate list.
class Resolver {
 public:
  virtual ~Resolver() = default;
  virtual std::optional<std::size_t> resolve(const PronounRecord& pronoun, const Document& doc,
                                             std::span<const std::size_t> candidates) const = 0;
};

/// Chooses the closest preceding candidate.
class RecencyResolver final : public Resolver {
 public:
  std::optional<std::size_t> resolve(const PronounRecord& pronoun, const Document& doc,
                                     std::span<const std::size_t> candidates) const override;
};

struct FilterOutcome {
  std::size_t candidates_before = 0;
  std::size_t candidates_after = 0;
  bool gold_antecedent_before = false;
  bool gold_antecedent_survived = false;
  bool resolved_correctly = false;
};

struct HarnessOptions {
  int window = 2;
  // Count pronouns whose unfiltered candidate set already lacked the gold
  // antecedent in the no-antecedent percentage.
  bool count_preexisting_missing = true;
};

struct HarnessMetrics {
  double success_rate = 0.0;
  double avg_candidates = 0.0;
  double avg_candidates_before = 0.0;
  double pct_no_antecedent = 0.0;  // fraction in [0, 1]
  std::size_t pronouns = 0;
  std::vector<FilterOutcome> outcomes;
};

/// Runs filter + resolver over every pronoun. `labels == nullptr` disables
/// filtering. Throws animacy::Error when the corpus has no pronouns.
HarnessMetrics harness_metrics(const Corpus& corpus, const DocLabels* labels,
                               const Resolver& resolver, const HarnessOptions& options = {});

/// Looks every NP up in `labels`; missing NPs are Unknown.
DocLabels assign_labels(const Corpus& corpus, const LabelStream& labels);
/// Gold labels, Unknown where absent.
DocLabels gold_doc_labels(const Corpus& corpus);

struct InjectionPlan {
  long animate = 0;
  long inanimate = 0;
  long animate_to_inanimate = 0;
  long inanimate_to_animate = 0;
};

/// Flip counts that turn gold labels into a labelling with the target
/// animate precision and recall (rounded to the nearest count). Throws
/// InfeasibleError when more false positives are needed than there are
/// inanimate labels, and Error for targets outside (0, 1] or no animate
/// labels.
InjectionPlan plan_injection(long animate, long inanimate, double precision, double recall);

/// Applies a random plan to a label stream; Unknown labels are left alone.
std::vector<Label> inject_errors(std::span<const Label> gold, double precision, double recall,
                                 std::uint64_t seed);

struct SweepSpec {
  int p_from = 10, p_to = 100;  // percent
  int r_from = 50, r_to = 100;  // percent
  int runs = 50;
  std::uint64_t seed = 0;
  HarnessOptions harness;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct SweepCell {
  int precision = 0;  // percent
  int recall = 0;     // percent
  double mean_success = 0.0;
  double std_success = 0.0;
  int runs = 0;
  bool feasible = false;
};

struct SweepGrid {
  std::vector<SweepCell> cells;  // precision-major order
};

/// For every (precision, recall) cell, `runs` independent error injections
/// into the gold labels, each scored with the harness. Run seeds derive
/// from (seed, precision, recall, run), so thread scheduling never changes
/// the result.
SweepGrid sweep(const Corpus& corpus, const SweepSpec& spec, const Resolver& resolver);

/// `precision,recall,mean_success,std_success,runs,feasible`
void write_sweep_csv(std::ostream& out, const SweepGrid& grid);
/// `axis,target,mean_success,cells`: success averaged over every feasible
/// cell with the given recall (axis=recall) or precision (axis=precision).
void write_marginals_csv(std::ostream& out, const SweepGrid& grid);

}  // namespace animacy
