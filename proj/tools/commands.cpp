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
#include "commands.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include "gssnmf/error.hpp"
#include "gssnmf/evaluation.hpp"
#include "gssnmf/matrix_io.hpp"
#include "gssnmf/supervision.hpp"
#include "gssnmf/textpipe.hpp"

namespace gssnmf::cli {
namespace {

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  auto out = open_output(path);
  out << text;
  if (!out) throw Error("write failed: " + path.string());
}

void emit_json(const nlohmann::json& j, const std::optional<fs::path>& path, std::ostream& log) {
  const std::string text = j.dump(2) + "\n";
  if (path) {
    write_text(*path, text);
    fmt::print(log, "wrote {}\n", path->string());
  } else {
    log << text;
  }
}

fs::path sibling_with_suffix(const fs::path& path, const std::string& suffix) {
  return path.parent_path() / (path.stem().string() + suffix + path.extension().string());
}

}  // namespace

void cmd_ingest(const IngestOptions& opts, std::ostream& log) {
  PipelineParams params;
  if (opts.params_file) {
    std::ifstream in(*opts.params_file);
    if (!in) throw InputError("cannot open " + opts.params_file->string());
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(opts.params_file->string(), 1, e.what());
    }
    params = params_from_json(j, opts.params_file->parent_path());
  }
  const auto docs = load_documents(opts.corpus_dir);
  const CorpusMatrix corpus = build_corpus(docs, params);
  if (opts.out.has_parent_path()) fs::create_directories(opts.out.parent_path());
  save_corpus(opts.out, corpus);

  std::size_t nonzero = 0;
  for (double v : corpus.x.data()) nonzero += v != 0.0;
  const double density = static_cast<double>(nonzero) / static_cast<double>(corpus.x.size());
  fmt::print(log, "d={} n={} density={:.6f}\n", corpus.terms(), corpus.documents(), density);
}

void cmd_rank_scan(const RankScanOptions& opts, std::ostream& log) {
  const CorpusMatrix corpus = load_corpus(opts.corpus);
  const SvdSpectrum spectrum = singular_values(corpus.x, opts.top);
  auto out = open_output(opts.out);
  out << "index,singular_value\n";
  for (std::size_t i = 0; i < spectrum.singular_values.size(); ++i) {
    out << (i + 1) << ',' << format_real(spectrum.singular_values[i]) << '\n';
  }
  fmt::print(log, "wrote {} singular values to {}\n", spectrum.singular_values.size(),
             opts.out.string());
}

void cmd_factorize(const FactorizeOptions& opts, std::ostream& log) {
  opts.config.validate();
  if (opts.config.lambda > 0.0 && !opts.seeds) {
    throw ConfigError("--lambda > 0 needs --seeds (seed words file)");
  }
  if (opts.config.mu > 0.0 && !opts.labels) {
    throw ConfigError("--mu > 0 needs --labels (label assignments file)");
  }
  const CorpusMatrix corpus = load_corpus(opts.corpus);

  nlohmann::json extra = {{"doc_ids", corpus.doc_ids}};
  std::optional<SeedMatrix> seeds;
  if (opts.seeds) {
    seeds = build_seed_matrix(load_seed_words(*opts.seeds), corpus.vocab);
    for (const auto& word : seeds->dropped) {
      fmt::print(log, "warning: seed word '{}' is not in the vocabulary\n", word);
    }
    extra["seed_words"] = seeds->seed_words;
  }
  std::optional<LabelMatrix> labels;
  std::optional<MaskMatrix> mask;
  if (opts.labels) {
    labels = build_label_matrix(load_label_assignments(*opts.labels), corpus.doc_ids);
    const std::uint64_t split_seed = opts.split_seed.value_or(opts.config.rng_seed);
    mask = split_mask(corpus.documents(), labels->z.rows(), opts.train_fraction, split_seed);
    extra["label_names"] = labels->label_names;
    extra["train_fraction"] = opts.train_fraction;
    extra["split_seed"] = split_seed;
  }

  const ProblemData data = make_problem(corpus, seeds ? &*seeds : nullptr,
                                        labels ? &*labels : nullptr, mask ? &*mask : nullptr);
  const FactorizationResult result = fit(data, opts.config);
  save_result(opts.out, result, opts.config, extra);
  if (mask) write_text(opts.out / "mask.json", mask_to_json(*mask).dump() + "\n");

  const LossTerms& last = result.term_trace.back();
  fmt::print(log, "model={} rank={} iterations={}\n", model_kind_name(result.kind),
             opts.config.rank, result.iterations);
  fmt::print(log, "objective first={:.10g} last={:.10g}\n", result.objective_trace.front(),
             result.objective_trace.back());
  fmt::print(log, "loss reconstruction={:.10g} guidance={:.10g} label={:.10g} total={:.10g}\n",
             last.reconstruction, last.guidance, last.label, last.total);
}

void cmd_classify(const ClassifyOptions& opts, std::ostream& log) {
  const LoadedResult loaded = load_result(opts.result);
  if (!loaded.factors.c) throw InputError("model was not label-supervised");
  if (!loaded.manifest.contains("doc_ids")) {
    throw InputError("result manifest has no doc_ids; re-run factorize");
  }
  const auto doc_ids = loaded.manifest.at("doc_ids").get<std::vector<std::string>>();
  const LabelMatrix labels = build_label_matrix(load_label_assignments(opts.labels), doc_ids);
  if (loaded.manifest.contains("label_names") &&
      loaded.manifest.at("label_names").get<std::vector<std::string>>() != labels.label_names) {
    throw InputError("label classes differ from the ones the model was fitted with");
  }
  nlohmann::json mask_json;
  const fs::path mask_path = opts.mask.value_or(opts.result / "mask.json");
  {
    std::ifstream in(mask_path);
    if (!in) throw InputError("cannot open mask " + mask_path.string());
    try {
      mask_json = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(mask_path.string(), 1, e.what());
    }
  }
  const MaskMatrix mask = mask_from_json(mask_json, labels.z.rows());
  if (mask.l.cols() != labels.z.cols()) throw InputError("mask size does not match the corpus");

  const Classification cls = classify_test_documents(*loaded.factors.c, loaded.factors.h,
                                                     labels.z, mask);
  const Matrix baseline =
      majority_predictions(labels.z, mask.train_ids, label_counts(cls.truth));
  EvalReport report;
  report.macro_f1 = cls.f1.macro;
  report.per_class_f1 = cls.f1.per_class;
  report.label_names = labels.label_names;
  nlohmann::json j = report_to_json(report);
  j["majority_baseline_macro_f1"] = macro_f1(baseline, cls.truth).macro;
  j["test_documents"] = mask.test_ids.size();
  emit_json(j, opts.out, log);
}

void cmd_coherence(const CoherenceOptions& opts, std::ostream& log) {
  if (opts.n_top < 2) throw ConfigError("--top must be at least 2");
  const LoadedResult loaded = load_result(opts.result);
  const CorpusMatrix corpus = load_corpus(opts.corpus);
  if (loaded.factors.w.rows() != corpus.terms()) {
    throw InputError(fmt::format("result has {} terms but corpus has {}; corpora mismatch",
                                 loaded.factors.w.rows(), corpus.terms()));
  }
  const auto docs = document_term_sets(corpus);
  EvalReport report;
  for (std::size_t t = 0; t < loaded.factors.w.cols(); ++t) {
    auto keywords = top_keywords(loaded.factors.w, corpus.vocab, t, opts.n_top);
    report.per_topic_coherence.push_back(coherence(keywords, docs));
    report.topics.push_back(std::move(keywords));
  }
  report.avg_coherence = avg_coherence(report.per_topic_coherence);
  emit_json(report_to_json(report), opts.out, log);
  if (opts.table) {
    const std::string title = fmt::format(
        "{} (rank {}, lambda {}, mu {})", loaded.manifest.value("model", std::string("model")),
        loaded.config.rank, format_shortest(loaded.config.lambda),
        format_shortest(loaded.config.mu));
    write_text(*opts.table, topics_table(title, report.topics, report.per_topic_coherence,
                                         *report.avg_coherence,
                                         std::min(opts.table_rows, opts.n_top)));
    fmt::print(log, "wrote {}\n", opts.table->string());
  }
}

void cmd_sweep(const SweepOptions& opts, std::ostream& log) {
  opts.spec.validate();
  const CorpusMatrix corpus = load_corpus(opts.corpus);
  std::optional<LabelMatrix> labels;
  if (opts.labels) labels = build_label_matrix(load_label_assignments(*opts.labels), corpus.doc_ids);
  std::optional<SeedMatrix> seeds;
  if (opts.seeds) {
    seeds = build_seed_matrix(load_seed_words(*opts.seeds), corpus.vocab);
    for (const auto& word : seeds->dropped) {
      fmt::print(log, "warning: seed word '{}' is not in the vocabulary\n", word);
    }
  }
  const SweepInputs inputs{corpus, labels ? &*labels : nullptr, seeds ? &*seeds : nullptr};
  const auto rows = run_sweep(inputs, opts.spec);
  const auto means = aggregate_sweep(rows);
  const auto best = best_mu_per_lambda(means);

  const fs::path mean_path = opts.mean_out.value_or(sibling_with_suffix(opts.out, "_mean"));
  const fs::path best_path = opts.best_out.value_or(sibling_with_suffix(opts.out, "_best"));
  {
    auto out = open_output(opts.out);
    write_sweep_csv(out, rows, opts.spec.metric);
  }
  {
    auto out = open_output(mean_path);
    write_mean_csv(out, means, opts.spec.metric);
  }
  {
    auto out = open_output(best_path);
    write_best_csv(out, best, opts.spec.metric);
  }
  fmt::print(log, "{} runs over {} cells; wrote {}, {}, {}\n", rows.size(), means.size(),
             opts.out.string(), mean_path.string(), best_path.string());
}

void cmd_plot(const PlotOptions& opts, std::ostream& log) {
  std::ifstream in(opts.in);
  if (!in) throw InputError("cannot open " + opts.in.string());
  const auto means = read_mean_csv(in, opts.in.string());
  const std::string title =
      opts.title.empty() ? fmt::format("mean metric by lambda and mu, rank {}", opts.rank) : opts.title;
  write_text(opts.out, heatmap_svg(means, opts.rank, title));
  fmt::print(log, "wrote {}\n", opts.out.string());
}

}  // namespace gssnmf::cli
