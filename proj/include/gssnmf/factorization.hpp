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
#ifndef GSSNMF_FACTORIZATION_HPP_
#define GSSNMF_FACTORIZATION_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gssnmf/matrix.hpp"
#include "gssnmf/supervision.hpp"
#include "gssnmf/textpipe.hpp"

namespace gssnmf {

struct ModelConfig {
  std::size_t rank = 8;
  double lambda = 0.0;  // seed-guidance weight
  double mu = 0.0;      // label-supervision weight
  std::size_t max_iters = 500;
  std::uint64_t rng_seed = 0;
  double eps = kDefaultEps;
  // Relative objective change below which fitting stops; 0 runs all max_iters.
  double tol = 0.0;

  void validate() const;
  bool operator==(const ModelConfig&) const = default;
};

nlohmann::json config_to_json(const ModelConfig& config);
ModelConfig config_from_json(const nlohmann::json& j);

// Inputs to the solver. x is d x n; y is d x s; z and mask are p x n. The
// label matrix and the mask are supplied together or not at all.
struct ProblemData {
  Matrix x;
  std::optional<Matrix> y;
  std::optional<Matrix> z;
  std::optional<Matrix> mask;

  // Shape and sign checks; throws DimensionError / InputError.
  void validate() const;
  bool has_seeds() const noexcept { return y.has_value(); }
  bool has_labels() const noexcept { return z.has_value(); }
};

ProblemData make_problem(const CorpusMatrix& corpus, const SeedMatrix* seeds = nullptr,
                         const LabelMatrix* labels = nullptr, const MaskMatrix* mask = nullptr);

// W (d x k), H (k x n), B (k x s) when seeds are present, C (p x k) when
// labels are present.
struct Factors {
  Matrix w;
  Matrix h;
  std::optional<Matrix> b;
  std::optional<Matrix> c;

  bool operator==(const Factors&) const = default;
};

struct LossTerms {
  double total = 0.0;
  double reconstruction = 0.0;  // 1/2 |X - WH|^2
  double guidance = 0.0;        // lambda/2 |Y - WB|^2
  double label = 0.0;           // mu/2 |L o (Z - CH)|^2

  bool operator==(const LossTerms&) const = default;
};

enum class ModelKind { kClassical, kSemiSupervised, kGuided, kGuidedSemiSupervised };

std::string_view model_kind_name(ModelKind kind);
// Classified by which weights are nonzero.
ModelKind model_kind(const ModelConfig& config);

// Throws ConfigError when a nonzero weight lacks its supervision, and
// DimensionError naming the offending term when shapes do not conform.
LossTerms objective(const ProblemData& data, const Factors& factors, double lambda, double mu);

// Partial derivatives of the total objective with respect to each factor.
struct Gradients {
  Matrix w;
  Matrix h;
  std::optional<Matrix> b;
  std::optional<Matrix> c;
};
Gradients gradients(const ProblemData& data, const Factors& factors, double lambda, double mu);

// All entries i.i.d. uniform on [0, 1), drawn in the order W, H, B, C
// (row-major) from a 64-bit Mersenne Twister seeded with rng_seed.
Factors initialize_factors(const ProblemData& data, std::size_t rank, std::uint64_t rng_seed);

// One pass of the multiplicative rules, in the order W, H, B, C, each rule
// seeing the factors already updated in this pass:
//
//   W <- W o (X H^T + lambda Y B^T) / (W (H H^T) + lambda W (B B^T))
//   H <- H o (W^T X + mu C^T (L o L o Z)) / ((W^T W) H + mu C^T (L o L o (C H)))
//   B <- B o (W^T Y) / ((W^T W) B)
//   C <- C o ((L o L o Z) H^T) / ((L o L o (C H)) H^T)
//
// Every denominator gets +eps. Weighted terms are evaluated (times a possibly
// zero weight) whenever their supervision is present. Throws NumericError
// "update diverged at iteration i" on any non-finite entry.
Factors update_step(const ProblemData& data, const Factors& factors, const ModelConfig& config,
                    std::size_t iteration = 1);

struct FactorizationResult {
  Factors factors;
  std::vector<double> objective_trace;  // total objective after each iteration
  std::vector<LossTerms> term_trace;
  std::size_t iterations = 0;
  ModelKind kind = ModelKind::kClassical;
};

FactorizationResult fit(const ProblemData& data, const ModelConfig& config);
// Same as fit, starting from caller-provided factors.
FactorizationResult fit_from(const ProblemData& data, Factors init, const ModelConfig& config);

// The n_top terms with the largest weight in column `topic` of W, by
// descending weight with ties in lexicographic order.
std::vector<std::string> top_keywords(const Matrix& w, const Vocabulary& vocab, std::size_t topic,
                                      std::size_t n_top);

// Result directory: W.csv, H.csv, [B.csv], [C.csv], trace.csv, manifest.json.
// `extra` is merged into the manifest (doc ids, label names, seed words...).
void save_result(const std::filesystem::path& dir, const FactorizationResult& result,
                 const ModelConfig& config, const nlohmann::json& extra = nlohmann::json::object());

struct LoadedResult {
  Factors factors;
  ModelConfig config;
  nlohmann::json manifest;
};
LoadedResult load_result(const std::filesystem::path& dir);

}  // namespace gssnmf

#endif  // GSSNMF_FACTORIZATION_HPP_
