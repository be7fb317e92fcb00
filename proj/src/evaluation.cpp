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
#include "gssnmf/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "gssnmf/error.hpp"
#include "gssnmf/matrix_io.hpp"

namespace gssnmf {
namespace {

void require_binary(const Matrix& m, const char* what) {
  for (double v : m.data()) {
    if (v != 0.0 && v != 1.0) throw InputError(fmt::format("{} must be binary", what));
  }
}

// Indices of the `count` largest values; ties go to the lower index.
std::vector<std::size_t> top_indices(std::span<const double> values, std::size_t count) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  order.resize(count);
  return order;
}

}  // namespace

Matrix threshold_predictions(const Matrix& scores, std::span<const std::size_t> true_counts) {
  const std::size_t p = scores.rows();
  if (true_counts.size() != scores.cols()) {
    throw DimensionError(fmt::format("{} label counts for {} columns", true_counts.size(),
                                     scores.cols()));
  }
  Matrix out(p, scores.cols());
  std::vector<double> column(p);
  for (std::size_t j = 0; j < scores.cols(); ++j) {
    const std::size_t count = true_counts[j];
    if (count < 1 || count > p) {
      throw InputError(fmt::format("label count {} for column {} outside [1, {}]", count, j, p));
    }
    for (std::size_t i = 0; i < p; ++i) column[i] = scores(i, j);
    for (std::size_t i : top_indices(column, count)) out(i, j) = 1.0;
  }
  return out;
}

F1Scores macro_f1(const Matrix& pred, const Matrix& truth) {
  if (!same_shape(pred, truth)) {
    throw DimensionError(fmt::format("macro_f1: prediction {} vs truth {}", pred.shape(),
                                     truth.shape()));
  }
  require_binary(pred, "predictions");
  require_binary(truth, "truth");
  F1Scores out;
  out.per_class.reserve(pred.rows());
  for (std::size_t i = 0; i < pred.rows(); ++i) {
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t j = 0; j < pred.cols(); ++j) {
      const bool p = pred(i, j) == 1.0;
      const bool t = truth(i, j) == 1.0;
      tp += p && t;
      fp += p && !t;
      fn += !p && t;
    }
    const std::size_t denom = 2 * tp + fp + fn;
    out.per_class.push_back(denom == 0 ? 0.0
                                       : 2.0 * static_cast<double>(tp) / static_cast<double>(denom));
  }
  out.macro = std::accumulate(out.per_class.begin(), out.per_class.end(), 0.0) /
              static_cast<double>(out.per_class.size());
  return out;
}

std::vector<std::size_t> label_counts(const Matrix& z) {
  std::vector<std::size_t> counts(z.cols(), 0);
  for (std::size_t i = 0; i < z.rows(); ++i) {
    for (std::size_t j = 0; j < z.cols(); ++j) counts[j] += z(i, j) != 0.0;
  }
  return counts;
}

Matrix majority_predictions(const Matrix& z, std::span<const std::size_t> train_ids,
                            std::span<const std::size_t> true_counts) {
  std::vector<double> frequency(z.rows(), 0.0);
  for (std::size_t j : train_ids) {
    if (j >= z.cols()) throw InputError(fmt::format("train index {} out of range", j));
    for (std::size_t i = 0; i < z.rows(); ++i) frequency[i] += z(i, j);
  }
  Matrix scores(z.rows(), true_counts.size());
  for (std::size_t j = 0; j < true_counts.size(); ++j) {
    for (std::size_t i = 0; i < z.rows(); ++i) scores(i, j) = frequency[i];
  }
  return threshold_predictions(scores, true_counts);
}

Classification classify_test_documents(const Matrix& c, const Matrix& h, const Matrix& z,
                                       const MaskMatrix& mask) {
  if (mask.test_ids.empty()) throw InputError("mask has no test documents");
  if (c.rows() != z.rows() || h.cols() != z.cols() || c.cols() != h.rows()) {
    throw DimensionError(fmt::format("classification: C {} H {} Z {}", c.shape(), h.shape(),
                                     z.shape()));
  }
  Matrix scores = matmul(c, column_block(h, mask.test_ids));
  Matrix truth = column_block(z, mask.test_ids);
  Matrix predicted = threshold_predictions(scores, label_counts(truth));
  F1Scores f1 = macro_f1(predicted, truth);
  return Classification{std::move(scores), std::move(predicted), std::move(truth), std::move(f1)};
}

double coherence(std::span<const std::string> keywords, std::span<const TermSet> docs) {
  const std::size_t n = keywords.size();
  if (n < 2) throw InputError(fmt::format("coherence needs at least 2 keywords, got {}", n));

  // presence[d][w]: document d contains keyword w.
  std::vector<std::vector<char>> presence(docs.size(), std::vector<char>(n, 0));
  std::vector<std::size_t> df(n, 0);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (std::size_t w = 0; w < n; ++w) {
      if (docs[d].contains(keywords[w])) {
        presence[d][w] = 1;
        ++df[w];
      }
    }
  }
  for (std::size_t w = 0; w < n; ++w) {
    if (df[w] == 0) throw InputError(fmt::format("keyword '{}' occurs in no document", keywords[w]));
  }

  double total = 0.0;
  for (std::size_t b = 1; b < n; ++b) {
    for (std::size_t l = 0; l < b; ++l) {
      std::size_t co = 0;
      for (const auto& row : presence) co += row[b] && row[l];
      total += std::log(static_cast<double>(co + 1) / static_cast<double>(df[l]));
    }
  }
  return total;
}

double avg_coherence(std::span<const double> per_topic) {
  if (per_topic.empty()) throw InputError("avg_coherence of an empty list");
  return std::accumulate(per_topic.begin(), per_topic.end(), 0.0) /
         static_cast<double>(per_topic.size());
}

nlohmann::json report_to_json(const EvalReport& r) {
  nlohmann::json j = nlohmann::json::object();
  if (r.macro_f1) {
    j["macro_f1"] = *r.macro_f1;
    j["per_class_f1"] = r.per_class_f1;
    j["label_names"] = r.label_names;
  }
  if (r.avg_coherence) {
    j["avg_coherence"] = *r.avg_coherence;
    j["per_topic_coherence"] = r.per_topic_coherence;
    j["topics"] = r.topics;
  }
  return j;
}

std::string topics_table(const std::string& title, const std::vector<std::vector<std::string>>& topics,
                         std::span<const double> per_topic, double average, std::size_t rows_shown) {
  const std::size_t k = topics.size();
  std::size_t width = 10;
  for (const auto& t : topics) {
    for (std::size_t i = 0; i < std::min(rows_shown, t.size()); ++i) width = std::max(width, t[i].size());
  }
  width += 2;
  const std::string rule(width * std::max<std::size_t>(k, 1), '-');
  std::string out = title + "\n" + rule + "\n";
  for (std::size_t t = 0; t < k; ++t) out += fmt::format("{:<{}}", fmt::format("Topic {}", t + 1), width);
  out += "\n" + rule + "\n";
  for (std::size_t i = 0; i < rows_shown; ++i) {
    for (const auto& t : topics) out += fmt::format("{:<{}}", i < t.size() ? t[i] : "", width);
    out += "\n";
  }
  out += rule + "\nCoherence score per topic:\n" + rule + "\n";
  for (double c : per_topic) out += fmt::format("{:<{}.3f}", c, width);
  out += "\n" + rule + "\n";
  out += fmt::format("Averaged coherence score: {:.3f}\n", average);
  out += rule + "\n";
  return out;
}

}  // namespace gssnmf
