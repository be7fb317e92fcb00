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
#ifndef GSSNMF_EVALUATION_HPP_
#define GSSNMF_EVALUATION_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gssnmf/matrix.hpp"
#include "gssnmf/supervision.hpp"
#include "gssnmf/textpipe.hpp"

namespace gssnmf {

// Per column i, ones at the true_counts[i] largest scores (lower row index
// wins ties), zeros elsewhere.
Matrix threshold_predictions(const Matrix& scores, std::span<const std::size_t> true_counts);

struct F1Scores {
  double macro = 0.0;
  std::vector<double> per_class;
};

// Rows are classes. F1_i = 2TP / (2TP + FP + FN), or 0 when that denominator
// is 0; macro is the unweighted mean over every row.
F1Scores macro_f1(const Matrix& pred, const Matrix& truth);

// Number of labels carried by each column of a binary label matrix.
std::vector<std::size_t> label_counts(const Matrix& z);

// Baseline: every column predicts the classes most frequent among the
// training columns of z (ties to the lower row), true_counts[i] of them.
Matrix majority_predictions(const Matrix& z, std::span<const std::size_t> train_ids,
                            std::span<const std::size_t> true_counts);

struct Classification {
  Matrix scores;     // C H restricted to test columns
  Matrix predicted;  // thresholded scores
  Matrix truth;      // Z restricted to test columns
  F1Scores f1;
};

// Scores the held-out documents. The per-document label counts used for
// thresholding come from the true test labels.
Classification classify_test_documents(const Matrix& c, const Matrix& h, const Matrix& z,
                                       const MaskMatrix& mask);

// Sum over ordered keyword pairs (l < b) of ln((D(w_b, w_l) + 1) / D(w_l)),
// with D the document and co-document counts over `docs`. Keywords must be
// ordered by descending topic weight. Throws InputError for N < 2 or a
// keyword no document contains.
double coherence(std::span<const std::string> keywords, std::span<const TermSet> docs);

// Arithmetic mean; throws InputError on an empty list.
double avg_coherence(std::span<const double> per_topic);

struct EvalReport {
  std::optional<double> macro_f1;
  std::vector<double> per_class_f1;
  std::vector<std::string> label_names;
  std::vector<double> per_topic_coherence;
  std::optional<double> avg_coherence;
  std::vector<std::vector<std::string>> topics;
};

nlohmann::json report_to_json(const EvalReport& report);

// Keyword columns per topic followed by the per-topic scores and their mean,
// as fixed-width plain text.
std::string topics_table(const std::string& title, const std::vector<std::vector<std::string>>& topics,
                         std::span<const double> per_topic, double average, std::size_t rows_shown);

}  // namespace gssnmf

#endif  // GSSNMF_EVALUATION_HPP_
