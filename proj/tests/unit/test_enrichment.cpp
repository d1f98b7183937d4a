#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "../oracles.hpp"
#include "animacy/enrichment.hpp"
#include "animacy/error.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace animacy;

namespace {

std::string np_line(const std::string& doc, int sent, int np, const std::string& lemma,
                    const std::string& label, const std::string& sense, const std::string& verb = "-") {
  std::ostringstream s;
  s << "NP\t" << doc << '\t' << sent << '\t' << np << '\t' << lemma << '\t' << (verb == "-" ? 0 : 1)
    << '\t' << verb << "\t0\t0\t" << label << '\t' << sense << '\t' << lemma << '\n';
  return s.str();
}

// Builds a one-document corpus from (sense, label) occurrences.
Corpus occurrences(const std::vector<std::pair<std::string, std::string>>& occ) {
  std::string text = "DOC\td\t0\t0\n";
  int i = 0;
  for (const auto& [sense, label] : occ) text += np_line("d", i, 0, "x", label, sense), ++i;
  return fixtures::corpus(text);
}

std::shared_ptr<const Taxonomy> shared(Taxonomy t) { return std::make_shared<const Taxonomy>(std::move(t)); }

const char* kTree =
    "SYNSET\tr\tn\t3\troot\t\n"
    "SYNSET\ta\tn\t-\talpha\tr\n"
    "SYNSET\tb\tn\t-\tbeta\tr\n"
    "SYNSET\ta1\tn\t-\talpha1\ta\n"
    "SYNSET\ta2\tn\t-\talpha2\ta\n"
    "SYNSET\tb1\tn\t-\tbeta1\tb\n";

}  // namespace

TEST_CASE("chain propagation") {
  auto t = fixtures::taxonomy("SYNSET\tR\tn\t3\tr\t\nSYNSET\tM\tn\t-\tm\tR\nSYNSET\tL\tn\t-\tl\tM\n");
  auto c = accumulate_counts(occurrences({{"L", "A"}}), t);
  for (const char* id : {"L", "M", "R"}) CHECK(c.total[t.require(id)] == SynsetTally{1, 0});
  CHECK(c.direct[t.require("L")] == SynsetTally{1, 0});
  CHECK(c.direct[t.require("M")] == SynsetTally{0, 0});
  CHECK(c.noun_occurrences == 1);
}

TEST_CASE("diamond occurrences reach each ancestor once") {
  const auto& t = *fixtures::toy();
  auto c = accumulate_counts(occurrences({{"n-teacher", "A"}}), t);
  CHECK(c.total[t.require("n-person")] == SynsetTally{1, 0});
  CHECK(c.total[t.require("n-worker")] == SynsetTally{1, 0});
  CHECK(c.total[t.require("n-adult")] == SynsetTally{1, 0});

  auto m = accumulate_counts(occurrences({{"n-mascot", "A"}, {"n-mascot", "I"}}), t);
  CHECK(m.total[t.require("n-person")] == SynsetTally{1, 1});
  CHECK(m.total[t.require("n-artifact")] == SynsetTally{1, 1});
}

TEST_CASE("empty corpus gives zero counts") {
  const auto& t = *fixtures::toy();
  auto c = accumulate_counts({}, t);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(c.total[i].total() == 0);
}

TEST_CASE("unresolvable sense keys are skipped with a warning") {
  const auto& t = *fixtures::toy();
  auto c = accumulate_counts(occurrences({{"n-unicorn", "A"}, {"v-say", "A"}, {"n-dog", "A"}}), t);
  CHECK(c.skipped == 2);
  CHECK(c.warnings.size() == 2);
  CHECK(c.warnings[0].find("n-unicorn") != std::string::npos);
  CHECK(c.noun_occurrences == 1);
}

TEST_CASE("verb counts come from the subject label") {
  const auto& t = *fixtures::toy();
  auto corpus = fixtures::corpus(std::string("DOC\td\t0\t0\n") + np_line("d", 0, 0, "man", "A", "n-man", "run") +
                                 np_line("d", 1, 0, "car", "I", "-", "run") +
                                 np_line("d", 2, 0, "woman", "A", "-", "say") +
                                 np_line("d", 3, 0, "gizmo", "-", "-", "say"));
  auto c = accumulate_counts(corpus, t);
  CHECK(c.total[t.require("v-run")] == SynsetTally{1, 1});
  CHECK(c.total[t.require("v-manage")] == SynsetTally{1, 1});
  CHECK(c.total[t.require("v-move")] == SynsetTally{1, 1});
  CHECK(c.total[t.require("v-say")] == SynsetTally{1, 0});
  CHECK(c.verb_occurrences == 3);

  auto e = enrich(fixtures::toy(), corpus);
  CHECK(e.status("v-say") == SynsetStatus::Animate);
}

TEST_CASE("count conservation at the root of a tree") {
  auto t = fixtures::taxonomy(kTree);
  std::mt19937 gen(3);
  const std::vector<std::string> ids{"r", "a", "b", "a1", "a2", "b1"};
  for (int round = 0; round < 50; ++round) {
    std::vector<std::pair<std::string, std::string>> occ;
    long ani = 0, inani = 0;
    const int n = std::uniform_int_distribution<int>(0, 40)(gen);
    for (int i = 0; i < n; ++i) {
      const bool a = gen() % 3 == 0;
      (a ? ani : inani) += 1;
      occ.push_back({ids[gen() % ids.size()], a ? "A" : "I"});
    }
    auto c = accumulate_counts(occurrences(occ), t);
    CHECK(c.total[t.require("r")] == SynsetTally{ani, inani});
    // A node's count is at least its direct count and each child's.
    for (std::size_t i = 0; i < t.size(); ++i) {
      CHECK(c.total[i].ani >= c.direct[i].ani);
      for (auto ch : t.children(i)) CHECK(c.total[i].ani >= c.total[ch].ani);
    }
  }
}

TEST_CASE("node decisions") {
  auto t = fixtures::taxonomy(kTree);
  const auto a = t.require("a");
  auto decide = [&](SynsetTally x, SynsetTally y) {
    SynsetCounts c;
    c.total.assign(t.size(), {});
    c.direct.assign(t.size(), {});
    c.total[t.require("a1")] = c.direct[t.require("a1")] = x;
    c.total[t.require("a2")] = c.direct[t.require("a2")] = y;
    c.total[a] = {x.ani + y.ani, x.inani + y.inani};
    return decide_node(a, c, t);
  };

  auto unamb = decide({3, 0}, {7, 0});
  CHECK(unamb.status == SynsetStatus::Animate);
  CHECK(unamb.unambiguous);
  CHECK(decide({0, 3}, {0, 1}).status == SynsetStatus::Inanimate);

  // obs (4, 5) against exp (5, 5): statistic 0.2 < 3.841.
  auto d = decide({4, 1}, {5, 0});
  CHECK(d.status == SynsetStatus::Animate);
  REQUIRE(d.animate_test);
  CHECK(d.animate_test->statistic == doctest::Approx(0.2));
  CHECK(d.animate_pass);
  CHECK_FALSE(d.inanimate_pass);  // (1-5)^2/5 + 25/5 = 8.2

  CHECK(decide({20, 20}, {20, 20}).status == SynsetStatus::Undecided);
  CHECK(decide({40, 10}, {10, 40}).status == SynsetStatus::Undecided);

  // Both tests pass: larger class wins, equal classes stay undecided.
  auto both = decide({3, 2}, {3, 3});
  CHECK(both.animate_pass);
  CHECK(both.inanimate_pass);
  CHECK(both.status == SynsetStatus::Animate);
  CHECK(decide({3, 2}, {2, 3}).status == SynsetStatus::Undecided);

  SynsetCounts none;
  none.total.assign(t.size(), {});
  none.direct.assign(t.size(), {});
  CHECK(classify_node(a, none, t) == SynsetStatus::Undecided);
}

TEST_CASE("node table includes the node's own occurrences") {
  auto t = fixtures::taxonomy(kTree);
  auto c = accumulate_counts(occurrences({{"a", "A"}, {"a1", "I"}, {"a1", "A"}}), t);
  auto cells = node_table(t.require("a"), c, t, Label::Animate);
  REQUIRE(cells.size() == 2);
  CHECK(cells[0] == ContingencyCell{1, 1, "a"});
  CHECK(cells[1] == ContingencyCell{1, 2, "a1"});
}

TEST_CASE("decisions match the oracle on random counts") {
  auto t = fixtures::taxonomy(kTree);
  std::mt19937 gen(17);
  for (int round = 0; round < 300; ++round) {
    std::vector<std::pair<std::string, std::string>> occ;
    for (const char* id : {"a", "a1", "a2"}) {
      const int ani = std::uniform_int_distribution<int>(0, 12)(gen);
      const int inani = std::uniform_int_distribution<int>(0, 12)(gen);
      for (int i = 0; i < ani; ++i) occ.push_back({id, "A"});
      for (int i = 0; i < inani; ++i) occ.push_back({id, "I"});
    }
    auto c = accumulate_counts(occurrences(occ), t);
    std::vector<oracle::RawCell> raw;
    for (const char* id : {"a", "a1", "a2"}) {
      auto i = t.require(id);
      const auto& tally = std::string(id) == "a" ? c.direct[i] : c.total[i];
      raw.push_back({id, tally.ani, tally.inani});
    }
    CHECK(classify_node(t.require("a"), c, t) == oracle::node_status(raw));
  }
}

TEST_CASE("fully and unambiguously annotated taxonomy") {
  auto t = shared(fixtures::taxonomy(kTree + std::string("SYNSET\tz\tn\t6\tzed\t\n")));
  auto e = enrich(t, occurrences({{"a1", "A"}, {"a2", "A"}, {"b1", "I"}, {"z", "I"}}));
  // Root sees both classes, 2 against 2 across hyponyms a and b.
  CHECK(e.status("a") == SynsetStatus::Animate);
  CHECK(e.status("a1") == SynsetStatus::Animate);
  CHECK(e.status("b") == SynsetStatus::Inanimate);
  CHECK(e.status("z") == SynsetStatus::Inanimate);
  CHECK(e.status("r") == SynsetStatus::Undecided);

  auto all = enrich(t, occurrences({{"a1", "A"}, {"a2", "A"}, {"b1", "A"}, {"z", "I"}}));
  for (auto s : all.statuses()) CHECK(s != SynsetStatus::Undecided);
  CHECK(coverage(all) == 1.0);
}

TEST_CASE("no evidence means undecided") {
  auto e = enrich(fixtures::toy(), {});
  CHECK(coverage(e) == 0.0);
  auto part = enrich(fixtures::toy(), occurrences({{"n-dog", "A"}}));
  CHECK(part.status("n-dog") == SynsetStatus::Animate);
  CHECK(part.status("n-animal") == SynsetStatus::Animate);
  CHECK(part.status("n-cat") == SynsetStatus::Undecided);
}

TEST_CASE("status soundness on the mini corpus") {
  SynsetCounts counts;
  auto e = enrich(fixtures::toy(), fixtures::mini(), 0.05, &counts);
  const auto& t = e.base();
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto d = decide_node(i, counts, t);
    const auto& tally = counts.total[i];
    if (e.status(i) == SynsetStatus::Animate) CHECK((tally.inani == 0 || d.animate_pass));
    if (e.status(i) == SynsetStatus::Inanimate) CHECK((tally.ani == 0 || d.inanimate_pass));
    if (tally.total() == 0) CHECK(e.status(i) == SynsetStatus::Undecided);
  }
  CHECK(coverage(e) > 0.5);
}

TEST_CASE("file order of the taxonomy does not change the result") {
  const auto& base = *fixtures::toy();
  auto e1 = enrich(fixtures::toy(), fixtures::mini());
  std::vector<Synset> synsets(base.synsets().begin(), base.synsets().end());
  std::mt19937 gen(8);
  for (int round = 0; round < 5; ++round) {
    std::shuffle(synsets.begin(), synsets.end(), gen);
    auto t = shared(Taxonomy(synsets));
    auto e2 = enrich(t, fixtures::mini());
    for (const auto& s : synsets) CHECK(e2.status(s.id) == e1.status(s.id));
  }
}

TEST_CASE("fallback chain") {
  auto t = shared(fixtures::taxonomy(
      "SYNSET\tp\tn\t18\tperson\t\n"
      "SYNSET\tw\tn\t-\tworker\tp\n"
      "SYNSET\tk\tn\t-\tclerk\tw\n"
      "SYNSET\tq\tn\t6\tartifact\t\n"
      "SYNSET\ttool\tn\t-\ttool\tq\n"));
  std::vector<SynsetStatus> st(t->size(), SynsetStatus::Undecided);
  st[t->require("q")] = SynsetStatus::Animate;  // deliberately odd
  EnrichedTaxonomy e(t, st);
  BeginnerClass bc;
  CHECK(resolve_animacy(e, t->require("tool"), bc) == Label::Animate);
  CHECK(resolve_animacy(e, t->require("k"), bc) == Label::Animate);  // beginner 18

  st[t->require("p")] = SynsetStatus::Inanimate;
  st[t->require("w")] = SynsetStatus::Undecided;
  EnrichedTaxonomy e2(t, st);
  CHECK(resolve_animacy(e2, t->require("k"), bc) == Label::Inanimate);
}

TEST_CASE("enriched file round trip and errors") {
  auto e = enrich(fixtures::toy(), fixtures::mini());
  std::stringstream buf;
  e.save(buf);
  auto back = EnrichedTaxonomy::load(buf, fixtures::toy());
  CHECK(std::equal(back.statuses().begin(), back.statuses().end(), e.statuses().begin()));

  // Taxonomy lines in the same file are skipped.
  std::stringstream combined;
  fixtures::toy()->save(combined);
  e.save(combined);
  CHECK_NOTHROW(EnrichedTaxonomy::load(combined, fixtures::toy()));

  std::istringstream missing("STATUS\tn-person\tA\n");
  CHECK_THROWS_WITH_AS(EnrichedTaxonomy::load(missing, fixtures::toy()), doctest::Contains("no status"),
                       Error);
  std::istringstream twice("STATUS\tn-person\tA\nSTATUS\tn-person\tI\n");
  CHECK_THROWS_AS(EnrichedTaxonomy::load(twice, fixtures::toy()), ParseError);
  std::istringstream bad("STATUS\tn-person\tX\n");
  CHECK_THROWS_AS(EnrichedTaxonomy::load(bad, fixtures::toy()), ParseError);
}
