#include "animacy/cli.hpp"

#include <unistd.h>
#include <termios.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "animacy/corpus.hpp"
#include "animacy/enrichment.hpp"
#include "animacy/error.hpp"
#include "animacy/evaluation.hpp"
#include "animacy/mbl.hpp"
#include "animacy/resolution.hpp"
#include "animacy/rule_classifier.hpp"
#include "animacy/taxonomy.hpp"
#include "animacy/wsd.hpp"

namespace animacy::cli {
namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  // shared
  std::string taxonomy, corpus, enriched, out;
  std::optional<std::uint64_t> seed;
  std::string counting = "tokens";

  // import-wndb
  std::string data_noun, data_verb, index_noun, index_verb;

  // enrich
  double alpha = 0.05;

  // classify / xval
  std::string method = "rule";
  std::string train, test, ic;
  double t1 = 0.71, t2 = 0.92, t3 = 0.90;
  bool wsd = false;
  bool no_reflexive = false;
  int k = 3;
  int folds = 10;

  // eval / kappa
  std::string gold, pred, a, b, name = "system";
  bool exclude_unknown = false;

  // simulate / sweep
  std::string labels, marginals;
  int window = 2;
  bool no_preexisting = false;
  int p_from = 10, p_to = 100, r_from = 50, r_to = 100, runs = 50;
  unsigned threads = 0;
};

void require_file(const std::string& path, const char* what) {
  if (path.empty()) return;
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw Error(std::string(what) + " not found: " + path);
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

// Writes to --out when given, otherwise to the standard output stream.
template <typename Fn>
void emit(const std::string& out_path, std::ostream& out, Fn write) {
  if (out_path.empty()) {
    write(out);
    out.flush();
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw Error("cannot write " + out_path);
  write(f);
  if (!f) throw Error("write failed: " + out_path);
}

PronounCounting counting_of(const std::string& s) {
  return s == "types" ? PronounCounting::Types : PronounCounting::Tokens;
}

std::shared_ptr<const Taxonomy> load_taxonomy(const std::string& path) {
  return std::make_shared<const Taxonomy>(Taxonomy::load_file(path));
}

IcTable ic_table(const Options& o, const Taxonomy& tax, const Corpus& fallback) {
  if (o.ic.empty()) return IcTable::from_corpus(tax, fallback);
  auto in = open_in(o.ic);
  return IcTable::from_count_file(tax, in, o.ic);
}

// Puts a terminal into byte-at-a-time mode for the annotation loop.
class RawTerminal {
 public:
  explicit RawTerminal(bool enable) {
    if (!enable || !::isatty(STDIN_FILENO) || ::tcgetattr(STDIN_FILENO, &saved_) != 0) return;
    termios raw = saved_;
    raw.c_lflag &= ~(ICANON | ECHO | ISIG);
    raw.c_cc[VMIN] = 1;
    raw.c_cc[VTIME] = 0;
    active_ = ::tcsetattr(STDIN_FILENO, TCSANOW, &raw) == 0;
  }
  ~RawTerminal() {
    if (active_) ::tcsetattr(STDIN_FILENO, TCSANOW, &saved_);
  }
  RawTerminal(const RawTerminal&) = delete;
  RawTerminal& operator=(const RawTerminal&) = delete;

 private:
  termios saved_{};
  bool active_ = false;
};

void cmd_import_wndb(const Options& o, std::ostream& out) {
  if (o.data_noun.empty() && o.data_verb.empty())
    throw UsageError("import-wndb needs --data-noun and/or --data-verb");
  for (const auto* p : {&o.data_noun, &o.data_verb, &o.index_noun, &o.index_verb})
    require_file(*p, "WordNet file");
  std::optional<std::ifstream> dn, dv, in_, iv;
  auto opt = [](const std::string& p, std::optional<std::ifstream>& s) -> std::istream* {
    if (p.empty()) return nullptr;
    s.emplace(open_in(p));
    return &*s;
  };
  auto tax = import_wndb(opt(o.data_noun, dn), opt(o.data_verb, dv), opt(o.index_noun, in_),
                         opt(o.index_verb, iv));
  emit(o.out, out, [&](std::ostream& s) { tax.save(s); });
}

void cmd_annotate(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  require_file(o.corpus, "corpus");
  auto corpus = load_corpus_file(o.corpus);
  const std::string target = o.out.empty() ? o.corpus : o.out;
  AnnotationResult result;
  {
    RawTerminal raw(&in == &std::cin);
    result = annotate_interactive(corpus, in, out);
  }
  save_corpus_file(target, corpus);
  err << "labelled " << result.labeled << " of " << result.pending << " NPs"
      << (result.completed ? "" : " (partial)") << "; saved " << target << '\n';
}

void cmd_enrich(const Options& o, std::ostream& out, std::ostream& err) {
  require_file(o.taxonomy, "taxonomy");
  require_file(o.corpus, "corpus");
  if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
  auto tax = load_taxonomy(o.taxonomy);
  auto corpus = load_corpus_file(o.corpus);
  SynsetCounts counts;
  auto e = enrich(tax, corpus, o.alpha, &counts);
  for (const auto& w : counts.warnings) err << "warning: " << w << '\n';
  emit(o.out, out, [&](std::ostream& s) { e.save(s); });
}

void cmd_classify(const Options& o, std::ostream& out) {
  const auto& m = o.method;
  if (m != "rule" && m != "ml" && m != "random" && m != "weighted" && m != "dummy")
    throw UsageError("--method must be one of rule, ml, random, weighted, dummy");
  LabelStream labels;

  if (m == "random" || m == "weighted" || m == "dummy") {
    if (m != "dummy" && !o.seed) throw UsageError("--method " + m + " needs --seed");
    const auto& path = o.corpus.empty() ? o.test : o.corpus;
    if (path.empty()) throw UsageError("--corpus is required");
    require_file(path, "corpus");
    auto corpus = load_corpus_file(path);
    const auto mode = m == "random"     ? BaselineMode::Random
                      : m == "weighted" ? BaselineMode::Weighted
                                        : BaselineMode::Dummy;
    labels = baseline(mode, corpus, o.seed.value_or(0), counting_of(o.counting));
  } else if (m == "rule") {
    if (o.taxonomy.empty() || o.corpus.empty())
      throw UsageError("--method rule needs --taxonomy and --corpus");
    require_file(o.taxonomy, "taxonomy");
    require_file(o.corpus, "corpus");
    require_file(o.ic, "IC count file");
    auto tax = load_taxonomy(o.taxonomy);
    auto corpus = load_corpus_file(o.corpus);
    RuleOptions opts;
    opts.thresholds = {o.t1, o.t2, o.t3};
    opts.reflexive_rule = !o.no_reflexive;
    std::optional<std::map<std::string, SenseWeighting>> weights;
    if (o.wsd) weights = document_weights(corpus, *tax, ic_table(o, *tax, corpus));
    labels = classify_corpus_rule(corpus, *tax, BeginnerClass{}, opts, weights ? &*weights : nullptr);
  } else {
    if (o.taxonomy.empty() || o.enriched.empty() || o.train.empty() || o.test.empty())
      throw UsageError("--method ml needs --taxonomy, --enriched, --train and --test");
    for (const auto* p : {&o.taxonomy, &o.enriched, &o.train, &o.test, &o.ic})
      require_file(*p, "input file");
    auto tax = load_taxonomy(o.taxonomy);
    auto enriched = EnrichedTaxonomy::load_file(o.enriched, tax);
    auto train = load_corpus_file(o.train);
    auto test = load_corpus_file(o.test);
    std::optional<std::map<std::string, SenseWeighting>> wtrain, wtest;
    if (o.wsd) {
      const auto ic = ic_table(o, *tax, train);
      wtrain = document_weights(train, *tax, ic);
      wtest = document_weights(test, *tax, ic);
    }
    FeatureOptions fo{counting_of(o.counting)};
    labels = classify_corpus_mbl(train, test, enriched, BeginnerClass{}, MblConfig{o.k},
                                 wtrain ? &*wtrain : nullptr, wtest ? &*wtest : nullptr, fo);
  }
  emit(o.out, out, [&](std::ostream& s) { write_labels(s, labels); });
}

void cmd_xval(const Options& o, std::ostream& out) {
  for (const auto* p : {&o.taxonomy, &o.enriched, &o.corpus, &o.ic}) require_file(*p, "input file");
  auto tax = load_taxonomy(o.taxonomy);
  auto enriched = EnrichedTaxonomy::load_file(o.enriched, tax);
  auto corpus = load_corpus_file(o.corpus);
  std::optional<std::map<std::string, SenseWeighting>> weights;
  if (o.wsd) weights = document_weights(corpus, *tax, ic_table(o, *tax, corpus));
  auto cv = cross_validate(corpus, enriched, BeginnerClass{}, o.folds, MblConfig{o.k}, *o.seed,
                           weights ? &*weights : nullptr, FeatureOptions{counting_of(o.counting)});
  emit(o.out, out, [&](std::ostream& s) { write_report(s, cv.report, "mbl-xval"); });
}

void cmd_eval(const Options& o, std::ostream& out) {
  require_file(o.gold, "gold file");
  require_file(o.pred, "prediction file");
  auto report = score(read_labels_file(o.gold), read_labels_file(o.pred),
                      ScoreOptions{o.exclude_unknown});
  emit(o.out, out, [&](std::ostream& s) { write_report(s, report, o.name); });
}

void cmd_kappa(const Options& o, std::ostream& out) {
  require_file(o.a, "label file");
  require_file(o.b, "label file");
  const auto a = read_labels_file(o.a);
  const auto b = read_labels_file(o.b);
  std::map<std::pair<std::string, NpKey>, Label> second;
  for (const auto& x : b) second[{x.doc_id, x.key}] = x.label;
  std::vector<Label> la, lb;
  for (const auto& x : a)
    if (auto it = second.find({x.doc_id, x.key}); it != second.end()) {
      la.push_back(x.label);
      lb.push_back(it->second);
    }
  if (la.empty()) throw Error("the two label files share no NPs");
  const auto k = kappa(la, lb);
  emit(o.out, out, [&](std::ostream& s) {
    char buf[64];
    s << "items\tagreement\tkappa\n" << la.size() << '\t';
    std::snprintf(buf, sizeof buf, "%.6f", k.raw_agreement);
    s << buf << '\t';
    if (k.kappa) {
      std::snprintf(buf, sizeof buf, "%.6f", *k.kappa);
      s << buf << '\n';
    } else {
      s << "-\n";
    }
  });
}

HarnessOptions harness_options(const Options& o) {
  if (o.window < 0) throw UsageError("--window must be non-negative");
  return HarnessOptions{o.window, !o.no_preexisting};
}

void cmd_simulate(const Options& o, std::ostream& out) {
  require_file(o.corpus, "corpus");
  require_file(o.labels, "label file");
  auto corpus = load_corpus_file(o.corpus);
  const auto opts = harness_options(o);
  std::optional<DocLabels> labels;
  if (!o.labels.empty()) labels = assign_labels(corpus, read_labels_file(o.labels));
  RecencyResolver resolver;
  const auto m = harness_metrics(corpus, labels ? &*labels : nullptr, resolver, opts);
  emit(o.out, out, [&](std::ostream& s) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu\t%.6f\t%.6f\t%.6f\t%.6f\n", m.pronouns, m.success_rate,
                  m.avg_candidates_before, m.avg_candidates, m.pct_no_antecedent);
    s << "pronouns\tsuccess_rate\tavg_candidates_before\tavg_candidates\tpct_no_antecedent\n" << buf;
  });
}

void cmd_sweep(const Options& o, std::ostream& out) {
  require_file(o.corpus, "corpus");
  auto corpus = load_corpus_file(o.corpus);
  SweepSpec spec;
  spec.p_from = o.p_from;
  spec.p_to = o.p_to;
  spec.r_from = o.r_from;
  spec.r_to = o.r_to;
  spec.runs = o.runs;
  spec.seed = *o.seed;
  spec.harness = harness_options(o);
  spec.threads = o.threads;
  RecencyResolver resolver;
  const auto grid = sweep(corpus, spec, resolver);
  emit(o.out, out, [&](std::ostream& s) { write_sweep_csv(s, grid); });
  if (!o.marginals.empty()) {
    std::ostringstream discard;
    emit(o.marginals, discard, [&](std::ostream& s) { write_marginals_csv(s, grid); });
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Noun phrase animacy identification and evaluation", "animacy"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  auto add_out = [&](CLI::App* c, const char* what) {
    c->add_option("--out", o.out, what);
  };
  auto add_counting = [&](CLI::App* c) {
    c->add_option("--pronoun-counting", o.counting,
                  "Pronoun ratio from DOC token counts or distinct PRON surfaces")
        ->check(CLI::IsMember({"tokens", "types"}));
  };

  auto* imp = app.add_subcommand("import-wndb", "Convert WordNet data/index files to taxonomy format");
  imp->add_option("--data-noun", o.data_noun, "WordNet data.noun");
  imp->add_option("--data-verb", o.data_verb, "WordNet data.verb");
  imp->add_option("--index-noun", o.index_noun, "WordNet index.noun (restricts lemma lists)");
  imp->add_option("--index-verb", o.index_verb, "WordNet index.verb (restricts lemma lists)");
  add_out(imp, "Taxonomy output file (default: standard output)");

  auto* ann = app.add_subcommand("annotate", "Label unannotated NPs with single keystrokes");
  ann->add_option("--corpus", o.corpus, "Corpus file to annotate")->required();
  add_out(ann, "Where to save the annotated corpus (default: overwrite --corpus)");

  auto* enr = app.add_subcommand("enrich", "Propagate corpus annotations over the taxonomy");
  enr->add_option("--taxonomy", o.taxonomy, "Taxonomy file")->required();
  enr->add_option("--corpus", o.corpus, "Sense-annotated corpus")->required();
  enr->add_option("--alpha", o.alpha, "Significance level of the chi-square tests")
      ->capture_default_str();
  add_out(enr, "Enriched taxonomy (STATUS lines; default: standard output)");

  auto* cls = app.add_subcommand("classify", "Label every NP of a corpus");
  cls->add_option("--method", o.method, "rule, ml, random, weighted or dummy")->capture_default_str();
  cls->add_option("--taxonomy", o.taxonomy, "Taxonomy file");
  cls->add_option("--corpus", o.corpus, "Corpus to label (rule and baselines)");
  cls->add_option("--enriched", o.enriched, "Enriched taxonomy (ml)");
  cls->add_option("--train", o.train, "Training corpus (ml)");
  cls->add_option("--test", o.test, "Corpus to label (ml)");
  cls->add_option("--t1", o.t1, "Animate noun-sense threshold")->capture_default_str();
  cls->add_option("--t2", o.t2, "Inanimate noun-sense threshold")->capture_default_str();
  cls->add_option("--t3", o.t3, "Animate verb-sense threshold")->capture_default_str();
  cls->add_flag("--no-reflexive", o.no_reflexive, "Do not treat an animate reflexive like 'who'");
  cls->add_flag("--wsd", o.wsd, "Weight senses by group disambiguation");
  cls->add_option("--ic", o.ic, "COUNT file for information content (default: the corpus)");
  cls->add_option("--k", o.k, "Neighbourhood size in distinct distances (ml)")->capture_default_str();
  cls->add_option("--seed", o.seed, "Random seed (required for random and weighted)");
  add_counting(cls);
  add_out(cls, "Prediction TSV (default: standard output)");

  auto* xv = app.add_subcommand("xval", "Cross-validate the memory-based classifier");
  xv->add_option("--taxonomy", o.taxonomy, "Taxonomy file")->required();
  xv->add_option("--enriched", o.enriched, "Enriched taxonomy")->required();
  xv->add_option("--corpus", o.corpus, "Gold-labelled corpus")->required();
  xv->add_option("--folds", o.folds, "Number of folds")->capture_default_str();
  xv->add_option("--k", o.k, "Neighbourhood size in distinct distances")->capture_default_str();
  xv->add_option("--seed", o.seed, "Fold assignment seed")->required();
  xv->add_flag("--wsd", o.wsd, "Weight senses by group disambiguation");
  xv->add_option("--ic", o.ic, "COUNT file for information content (default: the corpus)");
  add_counting(xv);
  add_out(xv, "Report TSV (default: standard output)");

  auto* ev = app.add_subcommand("eval", "Score predictions against gold labels");
  ev->add_option("--gold", o.gold, "Gold labels (label TSV or corpus file)")->required();
  ev->add_option("--pred", o.pred, "Predicted labels")->required();
  ev->add_flag("--exclude-unknown", o.exclude_unknown,
               "Leave Unknown predictions out of the accuracy denominator");
  ev->add_option("--name", o.name, "System name for the report row")->capture_default_str();
  add_out(ev, "Report TSV (default: standard output)");

  auto* kp = app.add_subcommand("kappa", "Agreement between two annotations");
  kp->add_option("--a", o.a, "First label file (label TSV or corpus file)")->required();
  kp->add_option("--b", o.b, "Second label file")->required();
  add_out(kp, "Output TSV (default: standard output)");

  auto* sim = app.add_subcommand("simulate", "Candidate filtering with one label assignment");
  sim->add_option("--corpus", o.corpus, "Corpus with pronoun records")->required();
  sim->add_option("--labels", o.labels, "Labels used for filtering (omit for no filtering)");
  sim->add_option("--window", o.window, "Preceding sentences in the candidate window")
      ->capture_default_str();
  sim->add_flag("--no-preexisting", o.no_preexisting,
                "Do not count pronouns that lacked the antecedent before filtering");
  add_out(sim, "Metrics TSV (default: standard output)");

  auto* sw = app.add_subcommand("sweep", "Simulated identifier precision/recall sweep");
  sw->add_option("--corpus", o.corpus, "Gold-labelled corpus with pronoun records")->required();
  sw->add_option("--p-from", o.p_from, "Lowest target precision (percent)")->capture_default_str();
  sw->add_option("--p-to", o.p_to, "Highest target precision (percent)")->capture_default_str();
  sw->add_option("--r-from", o.r_from, "Lowest target recall (percent)")->capture_default_str();
  sw->add_option("--r-to", o.r_to, "Highest target recall (percent)")->capture_default_str();
  sw->add_option("--runs", o.runs, "Perturbations per cell")->capture_default_str();
  sw->add_option("--seed", o.seed, "Master seed")->required();
  sw->add_option("--window", o.window, "Preceding sentences in the candidate window")
      ->capture_default_str();
  sw->add_flag("--no-preexisting", o.no_preexisting,
               "Do not count pronouns that lacked the antecedent before filtering");
  sw->add_option("--threads", o.threads, "Worker threads (0 = all cores)")->capture_default_str();
  sw->add_option("--marginals", o.marginals, "Also write averaged curves to this CSV");
  add_out(sw, "Grid CSV (default: standard output)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  auto* cmd = app.get_subcommands().front();
  try {
    const auto& name = cmd->get_name();
    if (name == "import-wndb") cmd_import_wndb(o, out);
    else if (name == "annotate") cmd_annotate(o, in, out, err);
    else if (name == "enrich") cmd_enrich(o, out, err);
    else if (name == "classify") cmd_classify(o, out);
    else if (name == "xval") cmd_xval(o, out);
    else if (name == "eval") cmd_eval(o, out);
    else if (name == "kappa") cmd_kappa(o, out);
    else if (name == "simulate") cmd_simulate(o, out);
    else if (name == "sweep") cmd_sweep(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << cmd->help();
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace animacy::cli
