#include <sstream>

#include "animacy/corpus.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace animacy;

namespace {

Corpus three_unlabelled() {
  return fixtures::corpus(
      "DOC\td\t0\t0\n"
      "NP\td\t0\t0\tman\t1\t-\t0\t0\t-\t-\tThe man\n"
      "NP\td\t0\t1\ttable\t0\t-\t0\t0\t-\t-\tthe table\n"
      "NP\td\t1\t0\tpeople\t0\t-\t0\t0\t-\t-\tpeople\n");
}

AnnotationResult session(Corpus& c, const std::string& keys, std::string* shown = nullptr) {
  std::istringstream in(keys);
  std::ostringstream out;
  auto r = annotate_interactive(c, in, out);
  if (shown) *shown = out.str();
  return r;
}

}  // namespace

TEST_CASE("a i q labels the first two NPs") {
  auto c = three_unlabelled();
  auto r = session(c, "a i q");
  CHECK(r.pending == 3);
  CHECK(r.labeled == 2);
  CHECK_FALSE(r.completed);
  CHECK(c[0].nps[0].gold == Label::Animate);
  CHECK(c[0].nps[1].gold == Label::Inanimate);
  CHECK_FALSE(c[0].nps[2].gold.has_value());
}

TEST_CASE("keys after q are ignored") {
  auto c = three_unlabelled();
  session(c, "aqii");
  CHECK(c[0].nps[0].gold == Label::Animate);
  CHECK_FALSE(c[0].nps[1].gold.has_value());
}

TEST_CASE("undo") {
  auto c = three_unlabelled();
  session(c, "aui");
  CHECK(c[0].nps[0].gold == Label::Inanimate);
  CHECK_FALSE(c[0].nps[1].gold.has_value());

  auto d = three_unlabelled();
  auto r = session(d, "aiiuaq");
  CHECK(r.completed);
  CHECK(d[0].nps[2].gold == Label::Animate);

  auto e = three_unlabelled();
  std::string shown;
  session(e, "u", &shown);
  CHECK(shown.find("Nothing to undo") != std::string::npos);
}

TEST_CASE("end of input and control keys end the session") {
  for (const std::string& keys : {std::string("a"), std::string("a\x03i"), std::string("a\x04i")}) {
    auto c = three_unlabelled();
    auto r = session(c, keys);
    CHECK(r.labeled == 1);
    CHECK_FALSE(c[0].nps[1].gold.has_value());
  }
}

TEST_CASE("fully annotated corpus completes immediately") {
  Corpus c = fixtures::mini();
  const Corpus before = c;
  std::string shown;
  auto r = session(c, "aaaa", &shown);
  CHECK(r.pending == 0);
  CHECK(r.completed);
  CHECK(c == before);
  CHECK(shown.find("Nothing to annotate") != std::string::npos);
}

TEST_CASE("existing gold labels are never touched") {
  auto c = fixtures::corpus(
      "DOC\td\t0\t0\n"
      "NP\td\t0\t0\tman\t1\t-\t0\t0\tI\t-\tThe man\n"
      "NP\td\t0\t1\ttable\t0\t-\t0\t0\t-\t-\tthe table\n"
      "NP\td\t0\t2\tdog\t0\t-\t0\t0\tA\t-\tthe dog\n");
  auto r = session(c, "auaq");
  CHECK(r.pending == 1);
  CHECK(c[0].nps[0].gold == Label::Inanimate);
  CHECK(c[0].nps[1].gold == Label::Animate);
  CHECK(c[0].nps[2].gold == Label::Animate);
}

TEST_CASE("display shows the reminder and the target NP") {
  auto c = three_unlabelled();
  std::string shown;
  session(c, "q", &shown);
  CHECK(shown.find("Collective nouns") != std::string::npos);
  CHECK(shown.find(">>The man<<") != std::string::npos);
}
