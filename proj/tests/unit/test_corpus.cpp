#include <sstream>

#include "animacy/corpus.hpp"
#include "animacy/error.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace animacy;

namespace {

const char* kTwoDocs =
    "DOC\ta\t3\t1\n"
    "NP\ta\t0\t0\tteacher\t1\tsay\t0\t0\tA\tn-teacher\tThe teacher\n"
    "NP\ta\t0\t1\tbook\t0\t-\t0\t0\tI\tn-book\ta red book\n"
    "PRON\ta\t1\tshe\t1\t0\t0\n"
    "NP\ta\t1\t0\tgizmo\t0\t-\t0\t0\t-\t-\tthe gizmo\n"
    "DOC\tb\t0\t0\n"
    "NP\tb\t0\t0\tman\t1\t-\t1\t0\tA\t-\tThe man who\n";

}  // namespace

TEST_CASE("two-document file") {
  auto c = fixtures::corpus(kTwoDocs);
  REQUIRE(c.size() == 2);
  CHECK(c[0].nps.size() == 3);
  CHECK(c[1].nps.size() == 1);
  CHECK(c[0].pronouns.size() == 1);

  const auto& np = c[0].nps[0];
  CHECK(np.head_lemma == "teacher");
  CHECK(np.is_subject);
  CHECK(np.verb_lemma == "say");
  CHECK(np.gold == Label::Animate);
  CHECK(np.sense_key == "n-teacher");
  CHECK(c[0].nps[1].surface == "a red book");
  CHECK_FALSE(c[0].nps[2].gold.has_value());
  CHECK_FALSE(c[0].nps[2].sense_key.has_value());
  CHECK(c[1].nps[0].has_who_complementizer);
  CHECK_FALSE(c[1].nps[0].verb_lemma.has_value());

  const auto& p = c[0].pronouns[0];
  CHECK(p.animate);
  CHECK(p.gold_antecedent == NpKey{0, 0});
  CHECK(p.position == 2);
}

TEST_CASE("load save load is the identity") {
  for (const auto& c : {fixtures::corpus(kTwoDocs), fixtures::mini()}) {
    std::stringstream buf;
    save_corpus(buf, c);
    auto back = load_corpus(buf, "roundtrip");
    CHECK(back == c);
  }
}

TEST_CASE("cross-reference and format errors") {
  CHECK_THROWS_WITH_AS(
      fixtures::corpus("DOC\ta\t0\t0\nNP\ta\t0\t0\tx\t0\t-\t0\t0\tA\t-\tx\nPRON\ta\t0\tit\t0\t3\t0\n"),
      doctest::Contains("dangling antecedent"), Error);
  CHECK_THROWS_WITH_AS(
      fixtures::corpus("DOC\ta\t0\t0\nNP\ta\t0\t0\tx\t0\t-\t0\t0\tA\t-\tx\nNP\ta\t0\t0\ty\t0\t-\t0\t0\tA\t-\ty\n"),
      doctest::Contains("duplicate NP key"), ParseError);
  CHECK_THROWS_AS(fixtures::corpus("NP\ta\t0\t0\tx\t0\t-\t0\t0\tA\t-\tx\n"), ParseError);
  CHECK_THROWS_AS(fixtures::corpus("DOC\ta\t0\t0\nDOC\ta\t0\t0\n"), ParseError);
  CHECK_THROWS_AS(fixtures::corpus("DOC\ta\t0\t0\nNP\ta\t0\t0\tx\t0\tsay\t0\t0\tA\t-\tx\n"),
                  ParseError);
  CHECK_THROWS_AS(fixtures::corpus("DOC\ta\t0\t0\nNP\ta\t0\t0\tx\t0\t-\t0\t0\tU\t-\tx\n"),
                  ParseError);
  CHECK_THROWS_AS(fixtures::corpus("DOC\ta\t0\t0\nNP\ta\t0\t0\tx\t2\t-\t0\t0\tA\t-\tx\n"),
                  ParseError);
  CHECK_THROWS_AS(fixtures::corpus("DOC\ta\t-1\t0\n"), ParseError);
  CHECK_THROWS_AS(fixtures::corpus("DOC\ta\t0\t0\nPRON\ta\t0\tit\t0\t0\t-\n"), ParseError);
  CHECK_THROWS_AS(fixtures::corpus("DOC\ta\t0\t0\nNP\ta\t2\t0\tx\t0\t-\t0\t0\tA\t-\tx\n"
                                   "NP\ta\t1\t0\ty\t0\t-\t0\t0\tA\t-\ty\n"),
                  ParseError);
  CHECK_THROWS_AS(fixtures::corpus("TOKEN\ta\n"), ParseError);
}

TEST_CASE("parse errors report the line") {
  try {
    fixtures::corpus("# comment\nDOC\ta\t0\t0\nNP\ta\t0\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("pronoun ratio") {
  Document d;
  CHECK(pronoun_ratio(d) == 0.0);
  d.animate_pronoun_count = 3;
  d.inanimate_pronoun_count = 1;
  CHECK(pronoun_ratio(d) == 0.75);
  d.animate_pronoun_count = 0;
  CHECK(pronoun_ratio(d) == 0.0);

  // Types: distinct surfaces among the PRON records.
  Document t;
  t.animate_pronoun_count = 10;
  t.pronouns = {{0, "he", true, {}, 0}, {0, "He", true, {}, 0}, {1, "she", true, {}, 0},
                {1, "it", false, {}, 0}};
  CHECK(pronoun_ratio(t, PronounCounting::Tokens) == 1.0);
  CHECK(pronoun_ratio(t, PronounCounting::Types) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("pronoun ratio stays in [0, 1] on the mini corpus") {
  for (const auto& d : fixtures::mini())
    for (auto m : {PronounCounting::Tokens, PronounCounting::Types}) {
      const double r = pronoun_ratio(d, m);
      CHECK(r >= 0.0);
      CHECK(r <= 1.0);
    }
}

TEST_CASE("label streams") {
  auto c = fixtures::corpus(kTwoDocs);
  auto gold = gold_labels(c);
  CHECK(gold.size() == 3);
  std::stringstream buf;
  write_labels(buf, gold);
  CHECK(buf.str() == "a\t0\t0\tA\na\t0\t1\tI\nb\t0\t0\tA\n");
  auto back = read_labels(buf, "labels");
  CHECK(back == gold);

  std::istringstream corpus_text(kTwoDocs);
  CHECK(read_labels(corpus_text) == gold);

  std::istringstream bad("a\t0\t0\tX\n");
  CHECK_THROWS_AS(read_labels(bad), ParseError);
}

TEST_CASE("mini corpus shape") {
  const auto& c = fixtures::mini();
  std::size_t nps = 0, prons = 0;
  for (const auto& d : c) {
    nps += d.nps.size();
    prons += d.pronouns.size();
    for (const auto& p : d.pronouns) CHECK(p.gold_antecedent.has_value());
  }
  CHECK(c.size() == 4);
  CHECK(nps == 63);
  CHECK(prons == 11);
}
