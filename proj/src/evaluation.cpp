#include "animacy/evaluation.hpp"

#include <cstdio>
#include <map>
#include <ostream>
#include <string>

#include "animacy/error.hpp"
#include "animacy/random.hpp"

namespace animacy {
namespace {

Metric ratio(long num, long den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

ClassScores class_scores(const ClassCounts& c) {
  ClassScores s;
  s.precision = ratio(c.tp, c.tp + c.fp);
  s.recall = ratio(c.tp, c.tp + c.fn);
  s.f_measure = f_measure(s.precision, s.recall);
  return s;
}

}  // namespace

Metric f_measure(Metric precision, Metric recall) {
  if (!precision || !recall) return std::nullopt;
  const double sum = *precision + *recall;
  if (sum == 0.0) return std::nullopt;
  return 2.0 * *precision * *recall / sum;
}

EvalReport score(std::span<const Label> gold, std::span<const Label> predicted,
                 const ScoreOptions& options) {
  if (gold.size() != predicted.size())
    throw Error("gold and predicted streams differ in length (" + std::to_string(gold.size()) +
                " vs " + std::to_string(predicted.size()) + ")");
  EvalReport r;
  auto& c = r.counts;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const Label g = gold[i], p = predicted[i];
    if (g == Label::Unknown) throw Error("gold label #" + std::to_string(i) + " is Unknown");
    ++c.total;
    auto& gc = g == Label::Animate ? c.animate : c.inanimate;
    if (p == Label::Unknown) {
      ++c.unknown_predictions;
      ++gc.fn;
    } else if (p == g) {
      ++c.correct;
      ++gc.tp;
    } else {
      ++gc.fn;
      ++(p == Label::Animate ? c.animate : c.inanimate).fp;
    }
  }
  const long denom = options.exclude_unknown ? c.total - c.unknown_predictions : c.total;
  r.accuracy = ratio(c.correct, denom);
  r.animate = class_scores(c.animate);
  r.inanimate = class_scores(c.inanimate);
  return r;
}

EvalReport score(const LabelStream& gold, const LabelStream& predicted, const ScoreOptions& options) {
  std::map<std::pair<std::string, NpKey>, Label> by_key;
  for (const auto& p : predicted) by_key[{p.doc_id, p.key}] = p.label;
  std::vector<Label> g, p;
  g.reserve(gold.size());
  p.reserve(gold.size());
  for (const auto& x : gold) {
    g.push_back(x.label);
    auto it = by_key.find({x.doc_id, x.key});
    p.push_back(it == by_key.end() ? Label::Unknown : it->second);
  }
  return score(g, p, options);
}

void write_report(std::ostream& out, const EvalReport& r, std::string_view name) {
  auto pct = [](const Metric& m) {
    if (!m) return std::string("-");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", *m * 100.0);
    return std::string(buf);
  };
  out << "system\taccuracy\tanimate_precision\tanimate_recall\tanimate_f\t"
         "inanimate_precision\tinanimate_recall\tinanimate_f\ttotal\tunknown\n";
  out << name << '\t' << pct(r.accuracy) << '\t' << pct(r.animate.precision) << '\t'
      << pct(r.animate.recall) << '\t' << pct(r.animate.f_measure) << '\t'
      << pct(r.inanimate.precision) << '\t' << pct(r.inanimate.recall) << '\t'
      << pct(r.inanimate.f_measure) << '\t' << r.counts.total << '\t'
      << r.counts.unknown_predictions << '\n';
}

KappaResult kappa(std::span<const Label> a, std::span<const Label> b) {
  if (a.size() != b.size()) throw Error("kappa needs streams of equal length");
  if (a.empty()) throw Error("kappa needs at least one item");
  const double n = static_cast<double>(a.size());
  double ma[3] = {0, 0, 0}, mb[3] = {0, 0, 0}, agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma[static_cast<int>(a[i])] += 1;
    mb[static_cast<int>(b[i])] += 1;
    if (a[i] == b[i]) agree += 1;
  }
  KappaResult r;
  const double po = agree / n;
  double pe = 0;
  for (int k = 0; k < 3; ++k) pe += (ma[k] / n) * (mb[k] / n);
  r.raw_agreement = po;
  if (pe < 1.0) r.kappa = (po - pe) / (1.0 - pe);
  return r;
}

LabelStream baseline(BaselineMode mode, const Corpus& corpus, std::uint64_t seed,
                     PronounCounting counting) {
  Rng rng(seed);
  LabelStream out;
  for (const auto& doc : corpus) {
    const double ratio = pronoun_ratio(doc, counting);
    for (const auto& np : doc.nps) {
      Label l = Label::Inanimate;
      if (mode == BaselineMode::Random)
        l = rng.bernoulli(0.5) ? Label::Animate : Label::Inanimate;
      else if (mode == BaselineMode::Weighted)
        l = rng.bernoulli(ratio) ? Label::Animate : Label::Inanimate;
      out.push_back({doc.doc_id, np.key(), l});
    }
  }
  return out;
}

}  // namespace animacy
