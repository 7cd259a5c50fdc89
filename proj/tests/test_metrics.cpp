#include "doctest.h"

#include "sugaman/metrics.hpp"

#include <cmath>

using namespace sugaman;

namespace {
const std::vector<Scalar> kUniform1{1.0};
const std::vector<Scalar> kUniform4{0.25, 0.25, 0.25, 0.25};
}  // namespace

TEST_CASE("tokenize") {
  CHECK(tokenize("Go 6 steps.") == TokenSequence{"go", "6", "steps", "."});
  CHECK(tokenize("").empty());
  CHECK(tokenize("It has an area of 25.50") ==
        TokenSequence{"it", "has", "an", "area", "of", "25.50"});
  CHECK(tokenize("Hello, world!") == TokenSequence{"hello", ",", "world", "!"});
  CHECK(tokenize("  MANY   spaces  ") == TokenSequence{"many", "spaces"});
}

TEST_CASE("rouge_n hand-counted cases") {
  const TokenSequence cand{"the", "cat", "sat"};
  const TokenSequence ref{"the", "cat", "ate"};

  auto r1 = rouge_n(cand, {ref}, 1);
  CHECK(r1.recall == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(r1.precision == doctest::Approx(2.0 / 3).epsilon(1e-12));

  auto r2 = rouge_n(cand, {ref}, 2);
  CHECK(r2.recall == doctest::Approx(0.5).epsilon(1e-12));

  auto self = rouge_n(cand, {cand}, 1);
  CHECK(self.recall == 1.0);
  CHECK(self.precision == 1.0);
  CHECK(self.f1 == 1.0);

  // Candidate shorter than n: defined as all zeros.
  auto zero = rouge_n({"a"}, {ref}, 2);
  CHECK(zero.recall == 0.0);
  CHECK(zero.precision == 0.0);
  CHECK(zero.f1 == 0.0);
}

TEST_CASE("bleu clipped precision and brevity penalty") {
  // Perfect match scores 1 with the standard quarter weights.
  const TokenSequence s{"this", "floor", "plan", "has", "3", "rooms"};
  CHECK(bleu(s, {s}, 4, kUniform4) == doctest::Approx(1.0).epsilon(1e-12));

  // Clipping: [a,a,a] vs [a,a] gives p1 = 2/3, BP = 1.
  CHECK(bleu({"a", "a", "a"}, {{"a", "a"}}, 1, kUniform1) ==
        doctest::Approx(2.0 / 3).epsilon(1e-12));

  // Brevity penalty: [a] vs [a,b] gives e^{-1}.
  CHECK(bleu({"a"}, {{"a", "b"}}, 1, kUniform1) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

  // Any zero p_n zeroes the score.
  CHECK(bleu({"x"}, {{"a", "b"}}, 1, kUniform1) == 0.0);

  CHECK_THROWS_AS(bleu({"a"}, {{"a"}}, 2, {0.7, 0.7}), Error);
}

TEST_CASE("bleu repetition never raises clipped precision") {
  const TokenSequence ref{"a", "b", "a"};
  Scalar prev = 1.0;
  TokenSequence cand{"a", "a"};
  for (int extra = 0; extra < 4; ++extra) {
    const Scalar p1 = bleu_precisions(cand, {ref}, 1)[0];
    CHECK(p1 <= prev + 1e-12);
    CHECK(p1 <= 1.0);
    prev = p1;
    cand.push_back("a");
  }
}

TEST_CASE("meteor worked examples") {
  auto perfect = meteor({"a", "b", "c"}, {"a", "b", "c"});
  CHECK(perfect.matches == 3);
  CHECK(perfect.chunks == 1);
  CHECK(perfect.penalty == doctest::Approx(1.0 / 6).epsilon(1e-12));
  CHECK(perfect.score == doctest::Approx(5.0 / 6).epsilon(1e-12));

  auto none = meteor({"x", "y"}, {"a", "b"});
  CHECK(none.score == 0.0);
  CHECK(none.matches == 0);

  auto split = meteor({"a", "x", "b"}, {"a", "b"});
  CHECK(split.matches == 2);
  CHECK(split.chunks == 2);
  CHECK(split.precision == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(split.recall == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(split.f_mean == doctest::Approx(20.0 / 21).epsilon(1e-12));
  CHECK(split.penalty == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(split.score == doctest::Approx(10.0 / 21).epsilon(1e-12));
}

TEST_CASE("meteor alignment minimizes chunks") {
  // [a b] vs [a b a]: both orders match 2 tokens; contiguous pairing wins.
  auto s = meteor({"a", "b"}, {"a", "b", "a"});
  CHECK(s.matches == 2);
  CHECK(s.chunks == 1);

  // Penalty bounds: PN in (0, 0.5] once there is a match, score <= F_mean.
  for (const auto& cand : {TokenSequence{"a", "b", "c"}, TokenSequence{"c", "a"}}) {
    auto m = meteor(cand, {"a", "c", "b"});
    if (m.matches > 0) {
      CHECK(m.penalty > 0.0);
      CHECK(m.penalty <= 0.5);
      CHECK(m.score <= m.f_mean + 1e-12);
    }
  }
}

TEST_CASE("evaluate_corpus averages") {
  const TokenSequence a{"the", "cat", "sat"};
  const TokenSequence b{"the", "cat", "ate"};

  auto single = evaluate_corpus({a}, {{b}});
  auto item = rouge_n(a, {b}, 1);
  CHECK(single.rouge[0].recall == doctest::Approx(item.recall));

  auto doubled = evaluate_corpus({a, a}, {{b}, {b}});
  CHECK(doubled.rouge[0].recall == doctest::Approx(item.recall));
  CHECK(doubled.bleu_avg[0] == doctest::Approx(single.bleu_avg[0]));

  // Mixed corpus: mean recomputed by hand from per-item scores.
  const TokenSequence c{"a", "b"};
  auto mixed = evaluate_corpus({a, c}, {{b}, {c}});
  const Scalar expect =
      0.5 * (rouge_n(a, {b}, 1).recall + rouge_n(c, {c}, 1).recall);
  CHECK(mixed.rouge[0].recall == doctest::Approx(expect).epsilon(1e-12));

  CHECK_THROWS_AS(evaluate_corpus({a}, {}), Error);

  // All outputs live in [0, 1].
  for (const auto& r : mixed.rouge) {
    CHECK(r.recall >= 0.0);
    CHECK(r.recall <= 1.0);
    CHECK(r.precision >= 0.0);
    CHECK(r.precision <= 1.0);
  }
  for (Scalar v : mixed.bleu_avg) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  CHECK(mixed.meteor.score >= 0.0);
  CHECK(mixed.meteor.score <= 1.0);
}

TEST_CASE("identical corpus scores exactly one") {
  const TokenSequence s = tokenize("This floor plan has 3 rooms.");
  auto rep = evaluate_corpus({s}, {{s}});
  for (const auto& r : rep.rouge) {
    CHECK(r.recall == 1.0);
    CHECK(r.precision == 1.0);
    CHECK(r.f1 == 1.0);
  }
  for (Scalar v : rep.bleu_avg) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}
