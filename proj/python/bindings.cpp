#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "animacy/chi_square.hpp"
#include "animacy/corpus.hpp"
#include "animacy/enrichment.hpp"
#include "animacy/error.hpp"
#include "animacy/evaluation.hpp"
#include "animacy/mbl.hpp"
#include "animacy/resolution.hpp"
#include "animacy/rule_classifier.hpp"
#include "animacy/taxonomy.hpp"

namespace py = pybind11;
using namespace animacy;

namespace {

using PyLabel = std::tuple<std::string, int, int, std::string>;

Label to_label(const std::string& s) {
  auto l = parse_label(s);
  if (!l) throw py::value_error("label must be 'A', 'I' or 'U', got '" + s + "'");
  return *l;
}

std::vector<Label> to_labels(const std::vector<std::string>& v) {
  std::vector<Label> out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(to_label(s));
  return out;
}

std::vector<std::string> from_labels(const std::vector<Label>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (auto l : v) out.emplace_back(1, label_code(l));
  return out;
}

std::vector<PyLabel> from_stream(const LabelStream& s) {
  std::vector<PyLabel> out;
  out.reserve(s.size());
  for (const auto& l : s) out.emplace_back(l.doc_id, l.key.sent, l.key.np, std::string(1, label_code(l.label)));
  return out;
}

LabelStream to_stream(const std::vector<PyLabel>& v) {
  LabelStream out;
  for (const auto& [doc, sent, np, label] : v) out.push_back({doc, {sent, np}, to_label(label)});
  return out;
}

Pos to_pos(const std::string& s) {
  if (s == "n") return Pos::Noun;
  if (s == "v") return Pos::Verb;
  throw py::value_error("pos must be 'n' or 'v'");
}

py::object metric(const Metric& m) { return m ? py::cast(*m) : py::none(); }

py::dict report_dict(const EvalReport& r) {
  auto scores = [](const ClassScores& s) {
    py::dict d;
    d["precision"] = metric(s.precision);
    d["recall"] = metric(s.recall);
    d["f_measure"] = metric(s.f_measure);
    return d;
  };
  py::dict d;
  d["accuracy"] = metric(r.accuracy);
  d["animate"] = scores(r.animate);
  d["inanimate"] = scores(r.inanimate);
  d["total"] = r.counts.total;
  d["correct"] = r.counts.correct;
  d["unknown_predictions"] = r.counts.unknown_predictions;
  return d;
}

py::dict metrics_dict(const HarnessMetrics& m) {
  py::dict d;
  d["pronouns"] = m.pronouns;
  d["success_rate"] = m.success_rate;
  d["avg_candidates_before"] = m.avg_candidates_before;
  d["avg_candidates"] = m.avg_candidates;
  d["pct_no_antecedent"] = m.pct_no_antecedent;
  return d;
}

// Python-side handle that keeps the taxonomy alive for enriched results.
struct PyTaxonomy {
  std::shared_ptr<const Taxonomy> t;
};

struct PyCorpus {
  Corpus c;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Animacy identification: taxonomy enrichment, classifiers and resolution simulation";

  auto base = py::register_exception<Error>(m, "AnimacyError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<InfeasibleError>(m, "InfeasibleError", base.ptr());

  py::class_<PyTaxonomy>(m, "Taxonomy")
      .def_static("load", [](const std::string& path) {
        return PyTaxonomy{std::make_shared<const Taxonomy>(Taxonomy::load_file(path))};
      }, py::arg("path"))
      .def("__len__", [](const PyTaxonomy& t) { return t.t->size(); })
      .def("senses", [](const PyTaxonomy& t, const std::string& lemma, const std::string& pos) {
        return t.t->senses(lemma, to_pos(pos));
      }, py::arg("lemma"), py::arg("pos") = "n")
      .def("beginner", [](const PyTaxonomy& t, const std::string& id) { return t.t->beginner_of(id); })
      .def("ids", [](const PyTaxonomy& t) {
        std::vector<std::string> out;
        for (const auto& s : t.t->synsets()) out.push_back(s.id);
        return out;
      });

  py::class_<PyCorpus>(m, "Corpus")
      .def_static("load", [](const std::string& path) { return PyCorpus{load_corpus_file(path)}; },
                  py::arg("path"))
      .def("__len__", [](const PyCorpus& c) { return c.c.size(); })
      .def_property_readonly("np_count", [](const PyCorpus& c) {
        std::size_t n = 0;
        for (const auto& d : c.c) n += d.nps.size();
        return n;
      })
      .def_property_readonly("pronoun_count", [](const PyCorpus& c) {
        std::size_t n = 0;
        for (const auto& d : c.c) n += d.pronouns.size();
        return n;
      })
      .def("gold_labels", [](const PyCorpus& c) { return from_stream(gold_labels(c.c)); })
      .def("save", [](const PyCorpus& c, const std::string& path) { save_corpus_file(path, c.c); });

  py::class_<EnrichedTaxonomy>(m, "EnrichedTaxonomy")
      .def("status", [](const EnrichedTaxonomy& e, const std::string& id) {
        return std::string(1, status_code(e.status(id)));
      })
      .def("coverage", [](const EnrichedTaxonomy& e) { return coverage(e); });

  m.def("enrich", [](const PyTaxonomy& t, const PyCorpus& c, double alpha) {
    return enrich(t.t, c.c, alpha);
  }, py::arg("taxonomy"), py::arg("corpus"), py::arg("alpha") = 0.05);

  m.def("chi_square", [](const std::vector<std::tuple<long, long, std::string>>& cells) {
    std::vector<ContingencyCell> in;
    for (const auto& [o, e, label] : cells) in.push_back({o, e, label});
    auto r = chi_square(in);
    py::dict d;
    d["statistic"] = r.statistic;
    d["df"] = r.df;
    d["valid"] = r.valid;
    std::vector<std::string> labels;
    for (const auto& c : r.cells) labels.push_back(c.label);
    d["cells"] = labels;
    return d;
  }, py::arg("cells"), "Pearson statistic over (observed, expected, label) cells after merging.");
  m.def("chi_square_critical", &chi_square_critical, py::arg("df"), py::arg("alpha") = 0.05);

  m.def("classify_rule", [](const PyTaxonomy& t, const PyCorpus& c, double t1, double t2, double t3,
                            bool reflexive) {
    RuleOptions o;
    o.thresholds = {t1, t2, t3};
    o.reflexive_rule = reflexive;
    return from_stream(classify_corpus_rule(c.c, *t.t, BeginnerClass{}, o));
  }, py::arg("taxonomy"), py::arg("corpus"), py::arg("t1") = 0.71, py::arg("t2") = 0.92,
        py::arg("t3") = 0.90, py::arg("reflexive") = true);

  m.def("classify_mbl", [](const PyCorpus& train, const PyCorpus& test, const EnrichedTaxonomy& e, int k) {
    return from_stream(classify_corpus_mbl(train.c, test.c, e, BeginnerClass{}, MblConfig{k}));
  }, py::arg("train"), py::arg("test"), py::arg("enriched"), py::arg("k") = 3);

  m.def("cross_validate", [](const PyCorpus& c, const EnrichedTaxonomy& e, int folds, int k,
                             std::uint64_t seed) {
    auto r = cross_validate(c.c, e, BeginnerClass{}, folds, MblConfig{k}, seed);
    py::dict d = report_dict(r.report);
    d["predicted"] = from_stream(r.predicted);
    d["fold"] = r.fold;
    return d;
  }, py::arg("corpus"), py::arg("enriched"), py::arg("folds") = 10, py::arg("k") = 3, py::arg("seed"));

  m.def("baseline", [](const std::string& mode, const PyCorpus& c, std::uint64_t seed) {
    BaselineMode b;
    if (mode == "random") b = BaselineMode::Random;
    else if (mode == "weighted") b = BaselineMode::Weighted;
    else if (mode == "dummy") b = BaselineMode::Dummy;
    else throw py::value_error("mode must be random, weighted or dummy");
    return from_stream(baseline(b, c.c, seed));
  }, py::arg("mode"), py::arg("corpus"), py::arg("seed") = 0);

  m.def("score", [](const std::vector<std::string>& gold, const std::vector<std::string>& pred,
                    bool exclude_unknown) {
    return report_dict(score(to_labels(gold), to_labels(pred), {.exclude_unknown = exclude_unknown}));
  }, py::arg("gold"), py::arg("predicted"), py::arg("exclude_unknown") = false);

  m.def("score_streams", [](const std::vector<PyLabel>& gold, const std::vector<PyLabel>& pred) {
    return report_dict(score(to_stream(gold), to_stream(pred)));
  }, py::arg("gold"), py::arg("predicted"));

  m.def("kappa", [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
    auto k = kappa(to_labels(a), to_labels(b));
    return std::make_pair(k.kappa ? py::cast(*k.kappa) : py::none(), k.raw_agreement);
  }, py::arg("a"), py::arg("b"));

  m.def("plan_injection", [](long a, long i, double p, double r) {
    auto plan = plan_injection(a, i, p, r);
    return std::make_pair(plan.animate_to_inanimate, plan.inanimate_to_animate);
  }, py::arg("animate"), py::arg("inanimate"), py::arg("precision"), py::arg("recall"));

  m.def("inject_errors", [](const std::vector<std::string>& gold, double p, double r, std::uint64_t seed) {
    return from_labels(inject_errors(to_labels(gold), p, r, seed));
  }, py::arg("gold"), py::arg("precision"), py::arg("recall"), py::arg("seed"));

  m.def("simulate", [](const PyCorpus& c, std::optional<std::vector<PyLabel>> labels, int window,
                       bool count_preexisting_missing) {
    HarnessOptions o{window, count_preexisting_missing};
    RecencyResolver r;
    if (!labels) return metrics_dict(harness_metrics(c.c, nullptr, r, o));
    auto d = assign_labels(c.c, to_stream(*labels));
    return metrics_dict(harness_metrics(c.c, &d, r, o));
  }, py::arg("corpus"), py::arg("labels") = py::none(), py::arg("window") = 2,
        py::arg("count_preexisting_missing") = true);

  m.def("sweep", [](const PyCorpus& c, int p_from, int p_to, int r_from, int r_to, int runs,
                    std::uint64_t seed, int window, unsigned threads) {
    SweepSpec s;
    s.p_from = p_from;
    s.p_to = p_to;
    s.r_from = r_from;
    s.r_to = r_to;
    s.runs = runs;
    s.seed = seed;
    s.harness.window = window;
    s.threads = threads;
    SweepGrid g;
    {
      py::gil_scoped_release release;
      g = sweep(c.c, s, RecencyResolver{});
    }
    py::list out;
    for (const auto& cell : g.cells) {
      py::dict d;
      d["precision"] = cell.precision;
      d["recall"] = cell.recall;
      d["feasible"] = cell.feasible;
      d["mean_success"] = cell.feasible ? py::cast(cell.mean_success) : py::none();
      d["std_success"] = cell.feasible ? py::cast(cell.std_success) : py::none();
      d["runs"] = cell.runs;
      out.append(d);
    }
    return out;
  }, py::arg("corpus"), py::arg("p_from") = 10, py::arg("p_to") = 100, py::arg("r_from") = 50,
        py::arg("r_to") = 100, py::arg("runs") = 50, py::arg("seed"), py::arg("window") = 2,
        py::arg("threads") = 0);
}
