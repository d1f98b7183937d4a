#include "animacy/resolution.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>
#include <thread>

#include "animacy/error.hpp"
#include "animacy/random.hpp"

namespace animacy {

std::vector<std::size_t> candidate_set(const PronounRecord& pronoun, const Document& doc,
                                       int window) {
  if (window < 0) throw Error("candidate window must be non-negative");
  std::vector<std::size_t> out;
  const long first = static_cast<long>(pronoun.sent_id) - window;
  const std::size_t end = std::min(pronoun.position, doc.nps.size());
  for (std::size_t i = 0; i < end; ++i) {
    const long s = doc.nps[i].sent_id;
    if (s >= first && s <= pronoun.sent_id) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> filter_candidates(bool pronoun_animate, std::span<const std::size_t> candidates,
                                           std::span<const Label> np_labels) {
  const Label reject = pronoun_animate ? Label::Inanimate : Label::Animate;
  std::vector<std::size_t> out;
  for (auto c : candidates) {
    const Label l = c < np_labels.size() ? np_labels[c] : Label::Unknown;
    if (l != reject) out.push_back(c);
  }
  return out;
}

std::optional<std::size_t> RecencyResolver::resolve(const PronounRecord&, const Document&,
                                                    std::span<const std::size_t> candidates) const {
  if (candidates.empty()) return std::nullopt;
  return *std::max_element(candidates.begin(), candidates.end());
}

HarnessMetrics harness_metrics(const Corpus& corpus, const DocLabels* labels,
                               const Resolver& resolver, const HarnessOptions& options) {
  if (labels && labels->size() != corpus.size())
    throw Error("label assignment does not cover the corpus");
  HarnessMetrics m;
  double before = 0, after = 0, correct = 0, missing = 0;
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    const auto& doc = corpus[d];
    for (const auto& pron : doc.pronouns) {
      FilterOutcome o;
      auto cands = candidate_set(pron, doc, options.window);
      std::optional<std::size_t> gold;
      if (pron.gold_antecedent) gold = doc.find_np(*pron.gold_antecedent);
      auto contains = [&](const std::vector<std::size_t>& v) {
        return gold && std::find(v.begin(), v.end(), *gold) != v.end();
      };
      o.candidates_before = cands.size();
      o.gold_antecedent_before = contains(cands);
      if (labels) cands = filter_candidates(pron.animate, cands, (*labels)[d]);
      o.candidates_after = cands.size();
      o.gold_antecedent_survived = contains(cands);
      auto chosen = resolver.resolve(pron, doc, cands);
      o.resolved_correctly = chosen && gold && *chosen == *gold;

      before += static_cast<double>(o.candidates_before);
      after += static_cast<double>(o.candidates_after);
      if (o.resolved_correctly) correct += 1;
      if (!o.gold_antecedent_survived && (options.count_preexisting_missing || o.gold_antecedent_before))
        missing += 1;
      m.outcomes.push_back(o);
    }
  }
  m.pronouns = m.outcomes.size();
  if (m.pronouns == 0) throw Error("corpus has no pronoun records");
  const double n = static_cast<double>(m.pronouns);
  m.success_rate = correct / n;
  m.avg_candidates = after / n;
  m.avg_candidates_before = before / n;
  m.pct_no_antecedent = missing / n;
  return m;
}

DocLabels assign_labels(const Corpus& corpus, const LabelStream& labels) {
  std::map<std::pair<std::string, NpKey>, Label> by_key;
  for (const auto& l : labels) by_key[{l.doc_id, l.key}] = l.label;
  DocLabels out;
  for (const auto& doc : corpus) {
    auto& v = out.emplace_back();
    for (const auto& np : doc.nps) {
      auto it = by_key.find({doc.doc_id, np.key()});
      v.push_back(it == by_key.end() ? Label::Unknown : it->second);
    }
  }
  return out;
}

DocLabels gold_doc_labels(const Corpus& corpus) {
  DocLabels out;
  for (const auto& doc : corpus) {
    auto& v = out.emplace_back();
    for (const auto& np : doc.nps) v.push_back(np.gold.value_or(Label::Unknown));
  }
  return out;
}

InjectionPlan plan_injection(long animate, long inanimate, double precision, double recall) {
  if (!(precision > 0.0 && precision <= 1.0)) throw Error("target precision must lie in (0, 1]");
  if (!(recall > 0.0 && recall <= 1.0)) throw Error("target recall must lie in (0, 1]");
  if (animate <= 0) throw Error("error injection needs at least one animate label");
  InjectionPlan plan{animate, inanimate, 0, 0};
  const double a = static_cast<double>(animate);
  plan.animate_to_inanimate = std::lround((1.0 - recall) * a);
  plan.inanimate_to_animate = std::lround(recall * a * (1.0 - precision) / precision);
  if (plan.inanimate_to_animate > inanimate) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "precision %.4g with recall %.4g needs %ld false positives but only %ld inanimate "
                  "labels exist (round(r*A*(1-p)/p) <= I)",
                  precision, recall, plan.inanimate_to_animate, inanimate);
    throw InfeasibleError(buf);
  }
  return plan;
}

std::vector<Label> inject_errors(std::span<const Label> gold, double precision, double recall,
                                 std::uint64_t seed) {
  std::vector<std::size_t> animate, inanimate;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i] == Label::Animate) animate.push_back(i);
    else if (gold[i] == Label::Inanimate) inanimate.push_back(i);
  }
  const auto plan = plan_injection(static_cast<long>(animate.size()),
                                   static_cast<long>(inanimate.size()), precision, recall);
  std::vector<Label> out(gold.begin(), gold.end());
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(animate));
  rng.shuffle(std::span<std::size_t>(inanimate));
  for (long i = 0; i < plan.animate_to_inanimate; ++i) out[animate[i]] = Label::Inanimate;
  for (long i = 0; i < plan.inanimate_to_animate; ++i) out[inanimate[i]] = Label::Animate;
  return out;
}

SweepGrid sweep(const Corpus& corpus, const SweepSpec& spec, const Resolver& resolver) {
  if (spec.p_from < 1 || spec.p_to > 100 || spec.p_from > spec.p_to)
    throw Error("precision range must satisfy 1 <= from <= to <= 100");
  if (spec.r_from < 1 || spec.r_to > 100 || spec.r_from > spec.r_to)
    throw Error("recall range must satisfy 1 <= from <= to <= 100");
  if (spec.runs < 1) throw Error("runs must be at least 1");

  const DocLabels gold = gold_doc_labels(corpus);
  std::vector<Label> flat;
  for (const auto& v : gold) flat.insert(flat.end(), v.begin(), v.end());

  SweepGrid grid;
  for (int p = spec.p_from; p <= spec.p_to; ++p)
    for (int r = spec.r_from; r <= spec.r_to; ++r) grid.cells.push_back({p, r, 0.0, 0.0, 0, false});

  auto run_cell = [&](SweepCell& cell) {
    const double p = cell.precision / 100.0, r = cell.recall / 100.0;
    std::vector<double> rates;
    for (int run = 0; run < spec.runs; ++run) {
      const auto seed = derive_seed(spec.seed, {static_cast<std::uint64_t>(cell.precision),
                                                static_cast<std::uint64_t>(cell.recall),
                                                static_cast<std::uint64_t>(run)});
      std::vector<Label> noisy;
      try {
        noisy = inject_errors(flat, p, r, seed);
      } catch (const InfeasibleError&) {
        return;
      }
      DocLabels labels;
      std::size_t at = 0;
      for (const auto& v : gold) {
        labels.emplace_back(noisy.begin() + at, noisy.begin() + at + v.size());
        at += v.size();
      }
      rates.push_back(harness_metrics(corpus, &labels, resolver, spec.harness).success_rate);
    }
    double mean = 0;
    for (double x : rates) mean += x;
    mean /= rates.size();
    double ss = 0;
    for (double x : rates) ss += (x - mean) * (x - mean);
    cell.feasible = true;
    cell.runs = spec.runs;
    cell.mean_success = mean;
    cell.std_success = rates.size() > 1 ? std::sqrt(ss / (rates.size() - 1)) : 0.0;
  };

  // Fail early on corpora the harness cannot score at all.
  (void)harness_metrics(corpus, nullptr, resolver, spec.harness);

  unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(grid.cells.size()));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t)
      workers.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < grid.cells.size();) run_cell(grid.cells[i]);
      });
  }
  return grid;
}

namespace {

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

}  // namespace

void write_sweep_csv(std::ostream& out, const SweepGrid& grid) {
  out << "precision,recall,mean_success,std_success,runs,feasible\n";
  for (const auto& c : grid.cells) {
    out << c.precision << ',' << c.recall << ',';
    if (c.feasible)
      out << fixed(c.mean_success) << ',' << fixed(c.std_success) << ',' << c.runs << ",1\n";
    else
      out << ",,0,0\n";
  }
}

void write_marginals_csv(std::ostream& out, const SweepGrid& grid) {
  std::map<int, std::pair<double, int>> by_recall, by_precision;
  for (const auto& c : grid.cells) {
    if (!c.feasible) continue;
    auto& r = by_recall[c.recall];
    r.first += c.mean_success;
    r.second += 1;
    auto& p = by_precision[c.precision];
    p.first += c.mean_success;
    p.second += 1;
  }
  out << "axis,target,mean_success,cells\n";
  for (const auto& [t, v] : by_precision)
    out << "precision," << t << ',' << fixed(v.first / v.second) << ',' << v.second << '\n';
  for (const auto& [t, v] : by_recall)
    out << "recall," << t << ',' << fixed(v.first / v.second) << ',' << v.second << '\n';
}

}  // namespace animacy
