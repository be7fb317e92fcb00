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
#include <cmath>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "commands.hpp"
#include "gssnmf/error.hpp"
#include "json_config.hpp"

namespace {

using namespace gssnmf;
using namespace gssnmf::cli;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

// Optional path options are bound through a string and converted after parsing.
std::optional<fs::path> optional_path(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return fs::path(s);
}

std::vector<std::size_t> parse_ranks(const std::string& text) {
  std::vector<std::size_t> ranks;
  for (double v : parse_grid(text)) {
    if (v < 1.0 || v != std::floor(v)) throw ConfigError("ranks must be positive integers");
    ranks.push_back(static_cast<std::size_t>(v));
  }
  return ranks;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Guided semi-supervised NMF: corpus ingestion, factorization and evaluation"};
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file supplying flags per subcommand; command-line flags win");
  app.require_subcommand(1);

  // ingest
  IngestOptions ingest;
  std::string ingest_params;
  auto* ingest_cmd = app.add_subcommand("ingest", "Build a tf-idf corpus file from a directory of .txt files");
  ingest_cmd->add_option("--corpus-dir", ingest.corpus_dir, "Directory of UTF-8 .txt documents")->required();
  ingest_cmd->add_option("--params", ingest_params,
                         "JSON pipeline params {max_df, min_df, max_features, stopwords_file}");
  ingest_cmd->add_option("--out", ingest.out, "Output corpus file")->required();

  // rank-scan
  RankScanOptions scan;
  auto* scan_cmd = app.add_subcommand("rank-scan", "Leading singular values of the corpus matrix");
  scan_cmd->add_option("--corpus", scan.corpus, "Corpus file")->required();
  scan_cmd->add_option("--top", scan.top, "How many singular values")->capture_default_str();
  scan_cmd->add_option("--out", scan.out, "Output CSV (index,singular_value)")->required();

  // factorize
  FactorizeOptions fac;
  std::string fac_seeds, fac_labels;
  std::uint64_t fac_split_seed = 0;
  auto* fac_cmd = app.add_subcommand("factorize", "Fit NMF / SSNMF / Guided NMF / GSSNMF");
  fac_cmd->add_option("--corpus", fac.corpus, "Corpus file")->required();
  fac_cmd->add_option("--rank", fac.config.rank, "Number of topics k")->capture_default_str();
  fac_cmd->add_option("--lambda", fac.config.lambda, "Seed-guidance weight")->capture_default_str();
  fac_cmd->add_option("--mu", fac.config.mu, "Label-supervision weight")->capture_default_str();
  fac_cmd->add_option("--iters", fac.config.max_iters, "Iteration budget N")->capture_default_str();
  fac_cmd->add_option("--seed", fac.config.rng_seed, "Initialization seed")->capture_default_str();
  fac_cmd->add_option("--eps", fac.config.eps, "Denominator stabilizer")->capture_default_str();
  fac_cmd->add_option("--tol", fac.config.tol, "Relative objective change for early stop (0 = off)")
      ->capture_default_str();
  fac_cmd->add_option("--seeds", fac_seeds, "Seed words file (one word or phrase per line)");
  fac_cmd->add_option("--labels", fac_labels, "Label assignments CSV (doc_id,class1;class2)");
  fac_cmd->add_option("--train-fraction", fac.train_fraction, "Share of labelled training documents")
      ->capture_default_str();
  auto* split_opt = fac_cmd->add_option("--split-seed", fac_split_seed, "Train/test split seed (default: --seed)");
  fac_cmd->add_option("--out", fac.out, "Output result directory")->required();

  // classify
  ClassifyOptions cls;
  std::string cls_mask, cls_out;
  auto* cls_cmd = app.add_subcommand("classify", "Macro F1 on the held-out documents");
  cls_cmd->add_option("--result", cls.result, "Result directory from factorize")->required();
  cls_cmd->add_option("--labels", cls.labels, "Label assignments CSV")->required();
  cls_cmd->add_option("--mask", cls_mask, "Split file (default: <result>/mask.json)");
  cls_cmd->add_option("--out", cls_out, "Report JSON (default: stdout)");

  // coherence
  CoherenceOptions coh;
  std::string coh_out, coh_table;
  auto* coh_cmd = app.add_subcommand("coherence", "Per-topic and averaged coherence scores");
  coh_cmd->add_option("--result", coh.result, "Result directory from factorize")->required();
  coh_cmd->add_option("--corpus", coh.corpus, "Corpus file used for the fit")->required();
  coh_cmd->add_option("--top", coh.n_top, "Keywords per topic")->capture_default_str();
  coh_cmd->add_option("--out", coh_out, "Report JSON (default: stdout)");
  coh_cmd->add_option("--table", coh_table, "Also write a plain-text topic table here");
  coh_cmd->add_option("--table-rows", coh.table_rows, "Keywords shown per topic in the table")
      ->capture_default_str();

  // sweep
  SweepOptions sw;
  std::string sw_labels, sw_seeds, sw_mean, sw_best, sw_metric = "macro_f1";
  std::string sw_ranks = "8", sw_lambdas = "0", sw_mus = "0";
  auto* sw_cmd = app.add_subcommand("sweep", "Grid over rank, lambda and mu with repeated trials");
  sw_cmd->add_option("--corpus", sw.corpus, "Corpus file")->required();
  sw_cmd->add_option("--labels", sw_labels, "Label assignments CSV");
  sw_cmd->add_option("--seeds", sw_seeds, "Seed words file");
  sw_cmd->add_option("--ranks", sw_ranks, "Ranks: list a,b,c or range start:stop:step")->capture_default_str();
  sw_cmd->add_option("--lambdas", sw_lambdas, "Lambda grid: list or start:stop:step")->capture_default_str();
  sw_cmd->add_option("--mus", sw_mus, "Mu grid: list or start:stop:step")->capture_default_str();
  sw_cmd->add_option("--trials", sw.spec.trials, "Trials per cell")->capture_default_str();
  sw_cmd->add_option("--seed", sw.spec.base_rng_seed, "Base seed; trial t uses seed + t")->capture_default_str();
  sw_cmd->add_option("--train-fraction", sw.spec.train_fraction, "Share of labelled training documents")
      ->capture_default_str();
  sw_cmd->add_option("--metric", sw_metric, "macro_f1 or avg_coherence")->capture_default_str();
  sw_cmd->add_option("--iters", sw.spec.max_iters, "Iteration budget per fit")->capture_default_str();
  sw_cmd->add_option("--eps", sw.spec.eps, "Denominator stabilizer")->capture_default_str();
  sw_cmd->add_option("--tol", sw.spec.tol, "Early-stop tolerance (0 = off)")->capture_default_str();
  sw_cmd->add_option("--top", sw.spec.n_top, "Keywords per topic for coherence")->capture_default_str();
  sw_cmd->add_option("--threads", sw.spec.threads, "Worker threads (0 = all cores)")->capture_default_str();
  sw_cmd->add_option("--out", sw.out, "Long-form CSV, one row per trial")->required();
  sw_cmd->add_option("--mean-out", sw_mean, "Per-cell mean CSV (default: <out>_mean.csv)");
  sw_cmd->add_option("--best-out", sw_best, "Per-lambda best-mu CSV (default: <out>_best.csv)");

  // plot
  PlotOptions plot;
  auto* plot_cmd = app.add_subcommand("plot", "SVG heatmap of a sweep mean CSV for one rank");
  plot_cmd->add_option("--in", plot.in, "Mean CSV written by sweep")->required();
  plot_cmd->add_option("--rank", plot.rank, "Rank to draw")->capture_default_str();
  plot_cmd->add_option("--out", plot.out, "Output SVG")->required();
  plot_cmd->add_option("--title", plot.title, "Chart title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*ingest_cmd) {
      ingest.params_file = optional_path(ingest_params);
      cmd_ingest(ingest, std::cout);
    } else if (*scan_cmd) {
      cmd_rank_scan(scan, std::cout);
    } else if (*fac_cmd) {
      fac.seeds = optional_path(fac_seeds);
      fac.labels = optional_path(fac_labels);
      if (split_opt->count() > 0) fac.split_seed = fac_split_seed;
      cmd_factorize(fac, std::cout);
    } else if (*cls_cmd) {
      cls.mask = optional_path(cls_mask);
      cls.out = optional_path(cls_out);
      cmd_classify(cls, std::cout);
    } else if (*coh_cmd) {
      coh.out = optional_path(coh_out);
      coh.table = optional_path(coh_table);
      cmd_coherence(coh, std::cout);
    } else if (*sw_cmd) {
      sw.labels = optional_path(sw_labels);
      sw.seeds = optional_path(sw_seeds);
      sw.mean_out = optional_path(sw_mean);
      sw.best_out = optional_path(sw_best);
      sw.spec.ranks = parse_ranks(sw_ranks);
      sw.spec.lambda_grid = parse_grid(sw_lambdas);
      sw.spec.mu_grid = parse_grid(sw_mus);
      sw.spec.metric = parse_metric(sw_metric);
      cmd_sweep(sw, std::cout);
    } else if (*plot_cmd) {
      cmd_plot(plot, std::cout);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
