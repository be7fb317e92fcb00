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
#ifndef GSSNMF_TOOLS_COMMANDS_HPP_
#define GSSNMF_TOOLS_COMMANDS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "gssnmf/factorization.hpp"
#include "gssnmf/sweep.hpp"

namespace gssnmf::cli {

namespace fs = std::filesystem;

struct IngestOptions {
  fs::path corpus_dir;
  std::optional<fs::path> params_file;
  fs::path out;
};

struct RankScanOptions {
  fs::path corpus;
  std::size_t top = 20;
  fs::path out;
};

struct FactorizeOptions {
  fs::path corpus;
  ModelConfig config;
  std::optional<fs::path> seeds;
  std::optional<fs::path> labels;
  double train_fraction = 0.7;
  std::optional<std::uint64_t> split_seed;  // defaults to config.rng_seed
  fs::path out;
};

struct ClassifyOptions {
  fs::path result;
  fs::path labels;
  std::optional<fs::path> mask;  // defaults to <result>/mask.json
  std::optional<fs::path> out;   // stdout when absent
};

struct CoherenceOptions {
  fs::path result;
  fs::path corpus;
  std::size_t n_top = 30;
  std::optional<fs::path> out;
  std::optional<fs::path> table;
  std::size_t table_rows = 10;
};

struct SweepOptions {
  fs::path corpus;
  std::optional<fs::path> labels;
  std::optional<fs::path> seeds;
  SweepSpec spec;
  fs::path out;
  std::optional<fs::path> mean_out;  // defaults to <out stem>_mean.csv
  std::optional<fs::path> best_out;  // defaults to <out stem>_best.csv
};

struct PlotOptions {
  fs::path in;
  std::size_t rank = 8;
  fs::path out;
  std::string title;
};

// Each command writes its files and a short human-readable summary to `log`.
void cmd_ingest(const IngestOptions& opts, std::ostream& log);
void cmd_rank_scan(const RankScanOptions& opts, std::ostream& log);
void cmd_factorize(const FactorizeOptions& opts, std::ostream& log);
void cmd_classify(const ClassifyOptions& opts, std::ostream& log);
void cmd_coherence(const CoherenceOptions& opts, std::ostream& log);
void cmd_sweep(const SweepOptions& opts, std::ostream& log);
void cmd_plot(const PlotOptions& opts, std::ostream& log);

}  // namespace gssnmf::cli

#endif  // GSSNMF_TOOLS_COMMANDS_HPP_
