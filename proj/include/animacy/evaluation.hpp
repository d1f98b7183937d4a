#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>

#include "animacy/corpus.hpp"
#include "animacy/label.hpp"

namespace animacy {

/// nullopt marks a ratio whose denominator is zero.
using Metric = std::optional<double>;

struct ClassCounts {
  long tp = 0;
  long fp = 0;
  long fn = 0;
};

struct ConfusionCounts {
  ClassCounts animate;
  ClassCounts inanimate;
  long total = 0;
  long correct = 0;
  long unknown_predictions = 0;
};

struct ClassScores {
  Metric precision;
  Metric recall;
  Metric f_measure;
};

struct EvalReport {
  ConfusionCounts counts;
  Metric accuracy;
  ClassScores animate;
  ClassScores inanimate;
};

struct ScoreOptions {
  // Drop Unknown predictions from the accuracy denominator.
  bool exclude_unknown = false;
};

/// Accuracy and per-class precision / recall / F. An Unknown prediction is
/// never a positive: it is an error for accuracy and a false negative for
/// its gold class. Throws animacy::Error on length mismatch or an Unknown
/// gold label.
EvalReport score(std::span<const Label> gold, std::span<const Label> predicted,
                 const ScoreOptions& options = {});

/// Aligns predictions to gold by (doc_id, sent_id, np_id). Gold NPs without
/// a prediction count as Unknown; predictions for NPs absent from gold are
/// ignored.
EvalReport score(const LabelStream& gold, const LabelStream& predicted,
                 const ScoreOptions& options = {});

/// Harmonic mean; nullopt when either input is undefined or both are 0.
Metric f_measure(Metric precision, Metric recall);

/// Table-style TSV: header plus one row.
void write_report(std::ostream& out, const EvalReport& report, std::string_view name = "system");

struct KappaResult {
  Metric kappa;
  double raw_agreement = 0.0;
};

/// Cohen's kappa over aligned label streams.
KappaResult kappa(std::span<const Label> a, std::span<const Label> b);

enum class BaselineMode { Random, Weighted, Dummy };

/// random: fair coin per NP; weighted: Animate with probability
/// pronoun_ratio(document); dummy: always Inanimate. One prediction per NP
/// in corpus order.
LabelStream baseline(BaselineMode mode, const Corpus& corpus, std::uint64_t seed,
                     PronounCounting counting = PronounCounting::Tokens);

}  // namespace animacy
