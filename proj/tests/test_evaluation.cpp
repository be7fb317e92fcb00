/*
 * Copyright 2026 The gssnmf Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "gssnmf/error.hpp"
#include "gssnmf/evaluation.hpp"
#include "support/oracles.hpp"

using namespace gssnmf;
using namespace gssnmf::testing;

namespace {

std::vector<TermSet> as_sets(const std::vector<std::vector<std::string>>& docs) {
  std::vector<TermSet> out;
  for (const auto& d : docs) out.emplace_back(d.begin(), d.end());
  return out;
}

}  // namespace

TEST_CASE("threshold predictions") {
  const std::vector<std::size_t> two{2};
  CHECK(threshold_predictions(Matrix::from_rows({{0.9}, {0.1}, {0.4}}), two) ==
        Matrix::from_rows({{1}, {0}, {1}}));
  const std::vector<std::size_t> three{3};
  CHECK(threshold_predictions(Matrix::from_rows({{0.2}, {0.1}, {0.4}}), three) == Matrix(3, 1, 1.0));
  const std::vector<std::size_t> one{1};
  CHECK(threshold_predictions(Matrix::from_rows({{0.5}, {0.5}, {0.1}}), one) ==
        Matrix::from_rows({{1}, {0}, {0}}));
  const std::vector<std::size_t> zero{0};
  CHECK_THROWS_AS(threshold_predictions(Matrix(3, 1), zero), InputError);
  const std::vector<std::size_t> four{4};
  CHECK_THROWS_AS(threshold_predictions(Matrix(3, 1), four), InputError);
  CHECK_THROWS_AS(threshold_predictions(Matrix(3, 2), one), DimensionError);
}

TEST_CASE("threshold column sums equal the requested counts") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t p = 1 + rng() % 6, m = 1 + rng() % 10;
    Matrix scores = random_matrix(p, m, rng);
    // Coarse values force ties.
    for (double& v : scores.data()) v = std::round(v * 3.0);
    std::vector<std::size_t> counts(m);
    for (auto& c : counts) c = 1 + rng() % p;
    const Matrix pred = threshold_predictions(scores, counts);
    for (std::size_t j = 0; j < m; ++j) {
      std::size_t sum = 0;
      for (std::size_t i = 0; i < p; ++i) sum += pred(i, j) == 1.0;
      CHECK(sum == counts[j]);
      // Every selected score is at least every unselected one.
      for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = 0; b < p; ++b)
          if (pred(a, j) == 1.0 && pred(b, j) == 0.0) {
            CHECK(scores(a, j) >= scores(b, j));
            if (scores(a, j) == scores(b, j)) CHECK(a < b);
          }
    }
  }
}

TEST_CASE("macro f1 examples") {
  const Matrix truth = Matrix::from_rows({{1, 1}, {0, 1}});
  const Matrix pred = Matrix::from_rows({{1, 0}, {0, 1}});
  const F1Scores f = macro_f1(pred, truth);
  CHECK(f.per_class[0] == doctest::Approx(2.0 / 3.0));
  CHECK(f.per_class[1] == 1.0);
  CHECK(std::abs(f.macro - 5.0 / 6.0) < 1e-15);

  CHECK(macro_f1(truth, truth).macro == 1.0);
  const F1Scores absent = macro_f1(Matrix::from_rows({{1}, {0}}), Matrix::from_rows({{1}, {0}}));
  CHECK(absent.per_class[1] == 0.0);
  CHECK(absent.macro == 0.5);

  CHECK_THROWS_AS(macro_f1(Matrix(2, 2), Matrix(2, 3)), DimensionError);
  CHECK_THROWS_AS(macro_f1(Matrix(1, 1, 0.5), Matrix(1, 1)), InputError);
}

TEST_CASE("macro f1 matches the precision/recall oracle") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t p = 1 + rng() % 5, m = 1 + rng() % 20;
    const Matrix pred = random_binary(p, m, rng), truth = random_binary(p, m, rng);
    const F1Scores got = macro_f1(pred, truth);
    const auto ref = f1_by_precision_recall(pred, truth);
    double mean = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      CHECK(std::abs(got.per_class[i] - ref[i]) < 1e-12);
      mean += ref[i];
    }
    CHECK(std::abs(got.macro - mean / static_cast<double>(p)) < 1e-12);
    const double own_mean =
        std::accumulate(got.per_class.begin(), got.per_class.end(), 0.0) / static_cast<double>(p);
    CHECK(std::abs(got.macro - own_mean) < 1e-12);
  }
}

TEST_CASE("macro f1 is invariant to a shared row permutation") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t p = 2 + rng() % 4, m = 1 + rng() % 15;
    const Matrix pred = random_binary(p, m, rng), truth = random_binary(p, m, rng);
    std::vector<std::size_t> perm(p);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix pp(p, m), pt(p, m);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        pp(i, j) = pred(perm[i], j);
        pt(i, j) = truth(perm[i], j);
      }
    CHECK(macro_f1(pp, pt).macro == doctest::Approx(macro_f1(pred, truth).macro).epsilon(1e-14));
  }
}

TEST_CASE("majority baseline") {
  const Matrix z = Matrix::from_rows({{1, 1, 0, 0}, {0, 1, 1, 1}, {0, 0, 0, 1}});
  const std::vector<std::size_t> train{0, 1, 2};
  const std::vector<std::size_t> counts{1, 2};
  // Training class frequencies: 2, 2, 0; the tie goes to row 0.
  CHECK(majority_predictions(z, train, counts) == Matrix::from_rows({{1, 1}, {0, 1}, {0, 0}}));
  CHECK(label_counts(z) == std::vector<std::size_t>{1, 2, 1, 2});
}

TEST_CASE("classification of held-out documents") {
  const Matrix z = Matrix::from_rows({{1, 0, 1, 0}, {0, 1, 0, 1}});
  const Matrix c = Matrix::identity(2);
  const Matrix h = Matrix::from_rows({{0.9, 0.1, 0.8, 0.3}, {0.1, 0.7, 0.2, 0.6}});
  const std::vector<std::size_t> train{0, 1};
  const MaskMatrix mask = mask_from_train_ids(4, 2, train);
  const Classification cls = classify_test_documents(c, h, z, mask);
  CHECK(cls.truth == Matrix::from_rows({{1, 0}, {0, 1}}));
  CHECK(cls.predicted == cls.truth);
  CHECK(cls.f1.macro == 1.0);

  // All-zero scores tie everywhere and resolve to the first rows.
  const Classification ties = classify_test_documents(c, Matrix(2, 4), z, mask);
  CHECK(ties.predicted == Matrix::from_rows({{1, 1}, {0, 0}}));
  CHECK(ties.f1.macro == classify_test_documents(c, Matrix(2, 4), z, mask).f1.macro);
}

TEST_CASE("coherence examples") {
  const auto docs = as_sets({{"a", "b"}, {"a"}, {"b", "c"}});
  const std::vector<std::string> ab{"a", "b"};
  CHECK(coherence(ab, docs) == 0.0);
  const std::vector<std::string> aa{"a", "a"};
  CHECK(coherence(aa, docs) == doctest::Approx(std::log(3.0 / 2.0)));
  CHECK(coherence(aa, docs) > 0.0);
  const std::vector<std::string> ca{"c", "a"};
  CHECK(coherence(ca, docs) == 0.0);

  const std::vector<std::string> missing{"a", "zz"};
  CHECK_THROWS_WITH_AS(coherence(missing, docs), "keyword 'zz' occurs in no document", InputError);
  const std::vector<std::string> single{"a"};
  CHECK_THROWS_AS(coherence(single, docs), InputError);
}

TEST_CASE("coherence equals brute-force pair counting") {
  std::mt19937_64 rng(11);
  const std::vector<std::string> bank{"a", "b", "c", "d", "e", "f", "g", "h"};
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n_docs = 1 + rng() % 10, v = 2 + rng() % 7;
    std::vector<std::vector<std::string>> docs(n_docs);
    for (auto& d : docs) {
      for (std::size_t t = rng() % 8; t > 0; --t) d.push_back(bank[rng() % v]);
    }
    docs[0].push_back(bank[0]);
    std::vector<std::string> present;
    for (const auto& d : docs)
      for (const auto& w : d)
        if (std::find(present.begin(), present.end(), w) == present.end()) present.push_back(w);
    std::vector<std::string> keywords;
    const std::size_t n = 2 + rng() % 4;
    for (std::size_t i = 0; i < n; ++i) keywords.push_back(present[rng() % present.size()]);
    const auto sets = as_sets(docs);
    CHECK(coherence(keywords, sets) == brute_force_coherence(keywords, docs));

    auto shuffled = sets;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(coherence(keywords, shuffled) == coherence(keywords, sets));
    shuffled.push_back(TermSet{"zzz"});
    CHECK(coherence(keywords, shuffled) == coherence(keywords, sets));
  }
}

TEST_CASE("averaged coherence") {
  const std::vector<double> table{1112.94, 1388.307, 1290.817, 921.023, 1109.453, 1123.185, 1090.895};
  CHECK(std::abs(avg_coherence(table) - 1148.089) <= 0.001);
  const std::vector<double> one{-3.5};
  CHECK(avg_coherence(one) == -3.5);
  const std::vector<double> zeros{0, 0};
  CHECK(avg_coherence(zeros) == 0.0);
  CHECK_THROWS_AS(avg_coherence(std::vector<double>{}), InputError);
}

TEST_CASE("report json and topic table") {
  EvalReport r;
  r.macro_f1 = 0.5;
  r.per_class_f1 = {0.25, 0.75};
  r.label_names = {"x", "y"};
  auto j = report_to_json(r);
  CHECK(j.at("macro_f1") == 0.5);
  CHECK_FALSE(j.contains("avg_coherence"));
  r.per_topic_coherence = {1.0, 3.0};
  r.avg_coherence = 2.0;
  r.topics = {{"murder", "kill"}, {"drug", "deal"}};
  j = report_to_json(r);
  CHECK(j.at("topics")[1][0] == "drug");
  const std::string table = topics_table("GSSNMF", r.topics, r.per_topic_coherence, 2.0, 2);
  CHECK(table.find("Topic 1") != std::string::npos);
  CHECK(table.find("murder") != std::string::npos);
  CHECK(table.find("deal") != std::string::npos);
}
