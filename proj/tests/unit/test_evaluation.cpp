#include <cmath>
#include <random>
#include <sstream>

#include "animacy/error.hpp"
#include "animacy/evaluation.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace animacy;

namespace {

constexpr Label A = Label::Animate, I = Label::Inanimate, U = Label::Unknown;

// Builds aligned streams from per-cell counts (gold, predicted).
void add(std::vector<Label>& g, std::vector<Label>& p, Label gl, Label pl, int n) {
  for (int i = 0; i < n; ++i) g.push_back(gl), p.push_back(pl);
}

}  // namespace

TEST_CASE("precision recall and F from counts") {
  std::vector<Label> g, p;
  add(g, p, A, A, 9);
  add(g, p, I, A, 1);
  add(g, p, A, I, 3);
  add(g, p, I, I, 7);
  auto r = score(g, p);
  CHECK(r.counts.animate.tp == 9);
  CHECK(r.counts.animate.fp == 1);
  CHECK(r.counts.animate.fn == 3);
  CHECK(*r.animate.precision == doctest::Approx(0.9));
  CHECK(*r.animate.recall == doctest::Approx(0.75));
  CHECK(*r.animate.f_measure == doctest::Approx(2 * 0.9 * 0.75 / 1.65));
  CHECK(*r.accuracy == doctest::Approx(16.0 / 20.0));
  CHECK(r.counts.animate.tp + r.counts.animate.fn == 12);
}

TEST_CASE("unknown predictions") {
  std::vector<Label> g{A, A, I, I}, p{A, U, I, U};
  auto r = score(g, p);
  CHECK(*r.accuracy == 0.5);
  CHECK(r.counts.unknown_predictions == 2);
  CHECK(r.counts.animate.fn == 1);
  CHECK(r.counts.inanimate.fn == 1);
  CHECK(r.counts.animate.fp + r.counts.inanimate.fp == 0);
  CHECK(*r.animate.precision == 1.0);
  CHECK(*r.animate.recall == 0.5);
  auto ex = score(g, p, {.exclude_unknown = true});
  CHECK(*ex.accuracy == 1.0);

  auto none = score(std::vector<Label>{A}, std::vector<Label>{U}, {.exclude_unknown = true});
  CHECK_FALSE(none.accuracy);
}

TEST_CASE("undefined metrics") {
  std::vector<Label> g{A, I, I, I}, p{I, I, I, I};
  auto r = score(g, p);
  CHECK_FALSE(r.animate.precision);
  CHECK(*r.animate.recall == 0.0);
  CHECK_FALSE(r.animate.f_measure);
  CHECK(*r.accuracy == 0.75);
  CHECK_FALSE(f_measure(0.0, 0.0));
  CHECK_FALSE(f_measure(std::nullopt, 0.5));

  std::ostringstream out;
  write_report(out, r, "dummy");
  CHECK(out.str() ==
        "system\taccuracy\tanimate_precision\tanimate_recall\tanimate_f\t"
        "inanimate_precision\tinanimate_recall\tinanimate_f\ttotal\tunknown\n"
        "dummy\t75.00\t-\t0.00\t-\t75.00\t100.00\t85.71\t4\t0\n");
}

TEST_CASE("score errors") {
  CHECK_THROWS_AS(score(std::vector<Label>{A}, std::vector<Label>{}), Error);
  CHECK_THROWS_AS(score(std::vector<Label>{U}, std::vector<Label>{A}), Error);
}

TEST_CASE("F lies between precision and recall") {
  std::mt19937 gen(8);
  for (int round = 0; round < 500; ++round) {
    std::vector<Label> g, p;
    for (int i = 0; i < 30; ++i) {
      g.push_back(gen() % 2 ? A : I);
      p.push_back(gen() % 5 == 0 ? U : gen() % 2 ? A : I);
    }
    auto r = score(g, p);
    for (const auto* s : {&r.animate, &r.inanimate}) {
      if (!s->f_measure) continue;
      CHECK(*s->f_measure >= std::min(*s->precision, *s->recall) - 1e-12);
      CHECK(*s->f_measure <= std::max(*s->precision, *s->recall) + 1e-12);
    }
    CHECK(*r.accuracy == doctest::Approx(double(r.counts.correct) / r.counts.total));
  }
}

TEST_CASE("label streams are aligned by key") {
  LabelStream gold{{"d", {0, 0}, A}, {"d", {0, 1}, I}, {"e", {0, 0}, I}};
  LabelStream pred{{"e", {0, 0}, I}, {"d", {0, 0}, A}, {"x", {9, 9}, A}};
  auto r = score(gold, pred);
  CHECK(r.counts.total == 3);
  CHECK(r.counts.correct == 2);
  CHECK(r.counts.unknown_predictions == 1);
}

TEST_CASE("kappa") {
  std::vector<Label> a, b;
  add(a, b, A, A, 45);
  add(a, b, A, I, 5);
  add(a, b, I, A, 5);
  add(a, b, I, I, 45);
  auto k = kappa(a, b);
  CHECK(*k.kappa == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(k.raw_agreement == doctest::Approx(0.9));

  auto same = kappa(std::vector<Label>{A, I, I}, std::vector<Label>{A, I, I});
  CHECK(*same.kappa == 1.0);

  auto constant = kappa(std::vector<Label>{I, I}, std::vector<Label>{I, I});
  CHECK_FALSE(constant.kappa);
  CHECK(constant.raw_agreement == 1.0);

  CHECK_THROWS_AS(kappa(std::vector<Label>{A}, std::vector<Label>{}), Error);
}

TEST_CASE("baselines") {
  const auto& c = fixtures::mini();
  auto dummy = baseline(BaselineMode::Dummy, c, 0);
  CHECK(dummy.size() == 63);
  for (const auto& l : dummy) CHECK(l.label == I);

  auto gold = gold_labels(c);
  long inanimate = 0;
  for (const auto& l : gold) inanimate += l.label == I;
  CHECK(*score(gold, dummy).accuracy == double(inanimate) / double(gold.size()));

  CHECK(baseline(BaselineMode::Random, c, 5) == baseline(BaselineMode::Random, c, 5));
  CHECK(baseline(BaselineMode::Random, c, 5) != baseline(BaselineMode::Random, c, 6));

  auto all = fixtures::corpus(
      "DOC\tz\t3\t0\n"
      "NP\tz\t0\t0\tman\t0\t-\t0\t0\tA\t-\tman\n"
      "NP\tz\t0\t1\tdog\t0\t-\t0\t0\tA\t-\tdog\n");
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    for (const auto& l : baseline(BaselineMode::Weighted, all, seed)) CHECK(l.label == A);
}

TEST_CASE("weighted baseline rate tracks the pronoun ratio") {
  const auto& doc = fixtures::mini()[0];  // ratio 5/8
  Corpus one{doc};
  const int seeds = 400;
  long animate = 0, n = 0;
  for (int s = 0; s < seeds; ++s)
    for (const auto& l : baseline(BaselineMode::Weighted, one, s)) animate += l.label == A, ++n;
  const double p = 5.0 / 8.0;
  const double sigma = std::sqrt(p * (1 - p) / double(n));
  CHECK(std::abs(double(animate) / double(n) - p) < 3 * sigma);
}
