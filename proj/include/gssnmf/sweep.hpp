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
#ifndef GSSNMF_SWEEP_HPP_
#define GSSNMF_SWEEP_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gssnmf/factorization.hpp"
#include "gssnmf/supervision.hpp"
#include "gssnmf/textpipe.hpp"

namespace gssnmf {

enum class SweepMetric { kMacroF1, kAvgCoherence };

std::string_view metric_name(SweepMetric metric);
SweepMetric parse_metric(std::string_view name);

struct SweepSpec {
  std::vector<double> lambda_grid;
  std::vector<double> mu_grid;
  std::vector<std::size_t> ranks;
  std::size_t trials = 10;
  std::uint64_t base_rng_seed = 0;
  double train_fraction = 0.7;
  SweepMetric metric = SweepMetric::kMacroF1;
  std::size_t max_iters = 500;
  double eps = kDefaultEps;
  double tol = 0.0;
  std::size_t n_top = 30;  // keywords per topic for coherence
  std::size_t threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

// labels and seeds may be null when the grid never needs them.
struct SweepInputs {
  const CorpusMatrix& corpus;
  const LabelMatrix* labels = nullptr;
  const SeedMatrix* seeds = nullptr;
};

struct SweepRow {
  std::size_t rank = 0;
  double lambda = 0.0;
  double mu = 0.0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;  // base_rng_seed + trial; drives the split and the init
  double value = 0.0;
};

// One trial of one cell, independent of every other cell.
SweepRow run_sweep_trial(const SweepInputs& inputs, const SweepSpec& spec, std::size_t rank,
                         double lambda, double mu, std::size_t trial);

// Every (rank, lambda, mu, trial) in that nesting order, grid order preserved.
// Failures are rethrown naming the failing cell.
std::vector<SweepRow> run_sweep(const SweepInputs& inputs, const SweepSpec& spec);

struct SweepMean {
  std::size_t rank = 0;
  double lambda = 0.0;
  double mu = 0.0;
  std::size_t trials = 0;
  double mean = 0.0;
  double stddev = 0.0;  // population
};
std::vector<SweepMean> aggregate_sweep(const std::vector<SweepRow>& rows);

// Per (rank, lambda): the mu = 0 mean when the grid has it, and the mu with
// the highest mean (first in grid order on ties).
struct BestMu {
  std::size_t rank = 0;
  double lambda = 0.0;
  std::optional<double> mu_zero_mean;
  double best_mu = 0.0;
  double best_mean = 0.0;
};
std::vector<BestMu> best_mu_per_lambda(const std::vector<SweepMean>& means);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, SweepMetric metric);
void write_mean_csv(std::ostream& out, const std::vector<SweepMean>& means, SweepMetric metric);
void write_best_csv(std::ostream& out, const std::vector<BestMu>& best, SweepMetric metric);
std::vector<SweepMean> read_mean_csv(std::istream& in, const std::string& source);

// lambda x mu heatmap of the means for one rank, colored on a linear scale
// from the smallest to the largest mean.
std::string heatmap_svg(const std::vector<SweepMean>& means, std::size_t rank, const std::string& title);

// "a,b,c" or "start:stop:step" (inclusive, values snapped to 12 significant digits).
std::vector<double> parse_grid(std::string_view text);

}  // namespace gssnmf

#endif  // GSSNMF_SWEEP_HPP_
