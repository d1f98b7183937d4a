#include "animacy/enrichment.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "animacy/error.hpp"
#include "animacy/text.hpp"

namespace animacy {

SynsetCounts accumulate_counts(const Corpus& corpus, const Taxonomy& taxonomy) {
  SynsetCounts c;
  c.total.assign(taxonomy.size(), {});
  c.direct.assign(taxonomy.size(), {});
  std::vector<char> mark(taxonomy.size(), 0);
  std::vector<std::size_t> touched;

  auto credit = [&](std::span<const std::size_t> senses, Label label) {
    touched.clear();
    for (auto s : senses) {
      (label == Label::Animate ? c.direct[s].ani : c.direct[s].inani) += 1;
      if (!mark[s]) mark[s] = 1, touched.push_back(s);
      for (auto a : taxonomy.ancestors(s))
        if (!mark[a]) mark[a] = 1, touched.push_back(a);
    }
    for (auto t : touched) {
      (label == Label::Animate ? c.total[t].ani : c.total[t].inani) += 1;
      mark[t] = 0;
    }
  };

  for (const auto& doc : corpus) {
    for (const auto& np : doc.nps) {
      if (!np.gold || *np.gold == Label::Unknown) continue;
      if (np.sense_key) {
        auto idx = taxonomy.index_of(*np.sense_key);
        if (!idx || taxonomy[*idx].pos != Pos::Noun) {
          ++c.skipped;
          c.warnings.push_back(doc.doc_id + " (" + std::to_string(np.sent_id) + ", " +
                               std::to_string(np.np_id) + "): sense key " + *np.sense_key +
                               (idx ? " is not a noun synset" : " not in taxonomy"));
        } else {
          const std::size_t one[] = {*idx};
          credit(one, *np.gold);
          ++c.noun_occurrences;
        }
      }
      if (np.is_subject && np.verb_lemma) {
        auto senses = taxonomy.sense_indices(*np.verb_lemma, Pos::Verb);
        if (!senses.empty()) {
          credit(senses, *np.gold);
          ++c.verb_occurrences;
        }
      }
    }
  }
  return c;
}

std::vector<ContingencyCell> node_table(std::size_t node, const SynsetCounts& counts,
                                        const Taxonomy& taxonomy, Label hypothesis) {
  auto cell = [&](const SynsetTally& t, std::string label) {
    return ContingencyCell{hypothesis == Label::Animate ? t.ani : t.inani, t.total(),
                           std::move(label)};
  };
  std::vector<ContingencyCell> cells;
  if (counts.direct[node].total() > 0) cells.push_back(cell(counts.direct[node], taxonomy[node].id));
  for (auto ch : taxonomy.children(node))
    if (counts.total[ch].total() > 0) cells.push_back(cell(counts.total[ch], taxonomy[ch].id));
  return cells;
}

NodeDecision decide_node(std::size_t node, const SynsetCounts& counts, const Taxonomy& taxonomy,
                         double alpha) {
  NodeDecision d;
  const auto& t = counts.total[node];
  if (t.total() == 0) return d;
  if (t.inani == 0 || t.ani == 0) {
    d.unambiguous = true;
    d.status = t.inani == 0 ? SynsetStatus::Animate : SynsetStatus::Inanimate;
    return d;
  }
  auto run = [&](Label hypothesis, bool& pass) {
    auto r = chi_square(node_table(node, counts, taxonomy, hypothesis));
    pass = r.valid && r.statistic < chi_square_critical(r.df, alpha);
    return r;
  };
  d.animate_test = run(Label::Animate, d.animate_pass);
  d.inanimate_test = run(Label::Inanimate, d.inanimate_pass);
  if (d.animate_pass && d.inanimate_pass) {
    if (t.ani > t.inani)
      d.status = SynsetStatus::Animate;
    else if (t.inani > t.ani)
      d.status = SynsetStatus::Inanimate;
  } else if (d.animate_pass) {
    d.status = SynsetStatus::Animate;
  } else if (d.inanimate_pass) {
    d.status = SynsetStatus::Inanimate;
  }
  return d;
}

EnrichedTaxonomy::EnrichedTaxonomy(std::shared_ptr<const Taxonomy> base,
                                   std::vector<SynsetStatus> status)
    : base_(std::move(base)), status_(std::move(status)) {
  if (!base_) throw Error("enriched taxonomy needs a base taxonomy");
  if (status_.size() != base_->size())
    throw Error("status table covers " + std::to_string(status_.size()) + " synsets, taxonomy has " +
                std::to_string(base_->size()));
}

void EnrichedTaxonomy::save(std::ostream& out) const {
  for (std::size_t i = 0; i < status_.size(); ++i)
    out << "STATUS\t" << (*base_)[i].id << '\t' << status_code(status_[i]) << '\n';
}

EnrichedTaxonomy EnrichedTaxonomy::load(std::istream& in, std::shared_ptr<const Taxonomy> base,
                                        const std::string& source) {
  if (!base) throw Error("enriched taxonomy needs a base taxonomy");
  std::vector<std::optional<SynsetStatus>> seen(base->size());
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = text::strip_cr(raw);
    if (text::is_blank_or_comment(line)) continue;
    auto f = text::split(line, '\t');
    if (f[0] == "SYNSET") continue;
    if (f[0] != "STATUS" || f.size() != 3)
      throw ParseError(source, lineno, "expected STATUS<TAB>id<TAB>A|I|U");
    auto idx = base->index_of(f[1]);
    if (!idx) throw ParseError(source, lineno, "unknown synset id " + std::string(f[1]));
    SynsetStatus s;
    if (f[2] == "A")
      s = SynsetStatus::Animate;
    else if (f[2] == "I")
      s = SynsetStatus::Inanimate;
    else if (f[2] == "U")
      s = SynsetStatus::Undecided;
    else
      throw ParseError(source, lineno, "status must be A, I or U");
    if (seen[*idx]) throw ParseError(source, lineno, "second status for " + std::string(f[1]));
    seen[*idx] = s;
  }
  std::vector<SynsetStatus> status(base->size());
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw Error(source + ": no status for synset " + (*base)[i].id);
    status[i] = *seen[i];
  }
  return EnrichedTaxonomy(std::move(base), std::move(status));
}

EnrichedTaxonomy EnrichedTaxonomy::load_file(const std::filesystem::path& path,
                                             std::shared_ptr<const Taxonomy> base) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open enriched taxonomy file " + path.string());
  return load(in, std::move(base), path.string());
}

EnrichedTaxonomy enrich(std::shared_ptr<const Taxonomy> taxonomy, const Corpus& corpus,
                        double alpha, SynsetCounts* counts_out) {
  if (!taxonomy) throw Error("enrich needs a taxonomy");
  auto counts = accumulate_counts(corpus, *taxonomy);
  std::vector<SynsetStatus> status(taxonomy->size(), SynsetStatus::Undecided);
  // Children before parents. Each decision only reads counts, so the
  // order among incomparable nodes cannot change the result.
  auto order = taxonomy->topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    status[*it] = classify_node(*it, counts, *taxonomy, alpha);
  if (counts_out) *counts_out = std::move(counts);
  return EnrichedTaxonomy(std::move(taxonomy), std::move(status));
}

double coverage(const EnrichedTaxonomy& e) {
  auto s = e.statuses();
  if (s.empty()) return 0.0;
  auto decided = std::count_if(s.begin(), s.end(),
                               [](SynsetStatus x) { return x != SynsetStatus::Undecided; });
  return static_cast<double>(decided) / static_cast<double>(s.size());
}

Label resolve_animacy(const EnrichedTaxonomy& e, std::size_t synset, const BeginnerClass& beginners) {
  const auto& tax = e.base();
  auto to_label = [](SynsetStatus s) {
    return s == SynsetStatus::Animate ? Label::Animate : Label::Inanimate;
  };
  if (e.status(synset) != SynsetStatus::Undecided) return to_label(e.status(synset));

  std::vector<char> seen(tax.size(), 0);
  std::vector<std::size_t> level{synset}, next;
  seen[synset] = 1;
  while (!level.empty()) {
    next.clear();
    for (auto v : level)
      for (auto p : tax.parents(v))
        if (!seen[p]) seen[p] = 1, next.push_back(p);
    for (auto v : next)
      if (e.status(v) != SynsetStatus::Undecided) return to_label(e.status(v));
    level.swap(next);
  }
  return beginner_animacy(tax.beginner_of(synset), tax[synset].pos, beginners);
}

}  // namespace animacy
