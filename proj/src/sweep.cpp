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
#include "gssnmf/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <istream>
#include <map>
#include <ostream>
#include <thread>
#include <tuple>

#include <fmt/format.h>

#include "gssnmf/error.hpp"
#include "gssnmf/evaluation.hpp"
#include "gssnmf/matrix_io.hpp"

namespace gssnmf {
namespace {

struct CellKey {
  std::size_t rank;
  double lambda;
  double mu;
  auto operator<=>(const CellKey&) const = default;
};

double trial_value(const SweepInputs& inputs, const SweepSpec& spec,
                   const std::vector<TermSet>* doc_sets, std::size_t rank, double lambda, double mu,
                   std::uint64_t seed) {
  const CorpusMatrix& corpus = inputs.corpus;
  ProblemData data{corpus.x, std::nullopt, std::nullopt, std::nullopt};
  if (inputs.seeds) data.y = inputs.seeds->y;
  std::optional<MaskMatrix> mask;
  if (inputs.labels) {
    mask = split_mask(corpus.documents(), inputs.labels->z.rows(), spec.train_fraction, seed);
    data.z = inputs.labels->z;
    data.mask = mask->l;
  }
  const ModelConfig config{rank, lambda, mu, spec.max_iters, seed, spec.eps, spec.tol};
  const FactorizationResult result = fit(data, config);

  if (spec.metric == SweepMetric::kMacroF1) {
    return classify_test_documents(*result.factors.c, result.factors.h, *data.z, *mask).f1.macro;
  }
  std::vector<double> scores;
  scores.reserve(rank);
  for (std::size_t t = 0; t < rank; ++t) {
    const auto keywords = top_keywords(result.factors.w, corpus.vocab, t, spec.n_top);
    scores.push_back(coherence(keywords, *doc_sets));
  }
  return avg_coherence(scores);
}

void check_inputs(const SweepInputs& inputs, const SweepSpec& spec) {
  spec.validate();
  const bool need_seeds = std::any_of(spec.lambda_grid.begin(), spec.lambda_grid.end(),
                                      [](double v) { return v > 0.0; });
  const bool need_labels = spec.metric == SweepMetric::kMacroF1 ||
                           std::any_of(spec.mu_grid.begin(), spec.mu_grid.end(),
                                       [](double v) { return v > 0.0; });
  if (need_seeds && !inputs.seeds) throw ConfigError("lambda grid is nonzero but no seed words given");
  if (need_labels && !inputs.labels) throw ConfigError("this sweep needs a labels file");
  if (spec.metric == SweepMetric::kAvgCoherence && spec.n_top > inputs.corpus.terms()) {
    throw ConfigError(fmt::format("n_top {} exceeds vocabulary size {}", spec.n_top,
                                  inputs.corpus.terms()));
  }
}

[[noreturn]] void rethrow_for_cell(std::exception_ptr error, const SweepRow& cell) {
  const std::string where = fmt::format("sweep cell rank={} lambda={} mu={} trial={}: ", cell.rank,
                                        format_shortest(cell.lambda), format_shortest(cell.mu),
                                        cell.trial);
  try {
    std::rethrow_exception(error);
  } catch (const InputError& e) {
    throw InputError(where + e.what());
  } catch (const NumericError& e) {
    throw NumericError(where + e.what());
  } catch (const std::exception& e) {
    throw Error(where + e.what());
  }
}

}  // namespace

std::string_view metric_name(SweepMetric metric) {
  return metric == SweepMetric::kMacroF1 ? "macro_f1" : "avg_coherence";
}

SweepMetric parse_metric(std::string_view name) {
  if (name == "macro_f1") return SweepMetric::kMacroF1;
  if (name == "avg_coherence") return SweepMetric::kAvgCoherence;
  throw ConfigError(fmt::format("unknown metric '{}' (expected macro_f1 or avg_coherence)", name));
}

void SweepSpec::validate() const {
  if (lambda_grid.empty() || mu_grid.empty() || ranks.empty()) {
    throw ConfigError("sweep grids must be non-empty");
  }
  if (trials < 1) throw ConfigError("trials must be at least 1");
  for (double v : lambda_grid) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("lambda grid values must be >= 0");
  }
  for (double v : mu_grid) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("mu grid values must be >= 0");
  }
  for (std::size_t r : ranks) {
    if (r < 1) throw ConfigError("ranks must be at least 1");
  }
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("train fraction must be in (0, 1)");
  }
  if (max_iters < 1) throw ConfigError("max_iters must be at least 1");
  if (metric == SweepMetric::kAvgCoherence && n_top < 2) throw ConfigError("n_top must be >= 2");
}

SweepRow run_sweep_trial(const SweepInputs& inputs, const SweepSpec& spec, std::size_t rank,
                         double lambda, double mu, std::size_t trial) {
  check_inputs(inputs, spec);
  std::optional<std::vector<TermSet>> doc_sets;
  if (spec.metric == SweepMetric::kAvgCoherence) doc_sets = document_term_sets(inputs.corpus);
  const std::uint64_t seed = spec.base_rng_seed + trial;
  const double value =
      trial_value(inputs, spec, doc_sets ? &*doc_sets : nullptr, rank, lambda, mu, seed);
  return SweepRow{rank, lambda, mu, trial, seed, value};
}

std::vector<SweepRow> run_sweep(const SweepInputs& inputs, const SweepSpec& spec) {
  check_inputs(inputs, spec);
  std::optional<std::vector<TermSet>> doc_sets;
  if (spec.metric == SweepMetric::kAvgCoherence) doc_sets = document_term_sets(inputs.corpus);

  std::vector<SweepRow> rows;
  for (std::size_t rank : spec.ranks) {
    for (double lambda : spec.lambda_grid) {
      for (double mu : spec.mu_grid) {
        for (std::size_t t = 0; t < spec.trials; ++t) {
          rows.push_back(SweepRow{rank, lambda, mu, t, spec.base_rng_seed + t, 0.0});
        }
      }
    }
  }

  std::vector<std::exception_ptr> errors(rows.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      SweepRow& row = rows[i];
      try {
        row.value = trial_value(inputs, spec, doc_sets ? &*doc_sets : nullptr, row.rank,
                                row.lambda, row.mu, row.seed);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::size_t threads = spec.threads ? spec.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, rows.size());
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (errors[i]) rethrow_for_cell(errors[i], rows[i]);
  }
  return rows;
}

std::vector<SweepMean> aggregate_sweep(const std::vector<SweepRow>& rows) {
  std::map<CellKey, std::size_t> index;
  std::vector<std::vector<double>> values;
  std::vector<SweepMean> means;
  for (const auto& row : rows) {
    const CellKey key{row.rank, row.lambda, row.mu};
    auto [it, inserted] = index.emplace(key, means.size());
    if (inserted) {
      means.push_back(SweepMean{row.rank, row.lambda, row.mu, 0, 0.0, 0.0});
      values.emplace_back();
    }
    values[it->second].push_back(row.value);
  }
  for (std::size_t i = 0; i < means.size(); ++i) {
    const auto& v = values[i];
    double sum = 0.0;
    for (double x : v) sum += x;
    const double mean = sum / static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    means[i].trials = v.size();
    means[i].mean = mean;
    means[i].stddev = std::sqrt(var / static_cast<double>(v.size()));
  }
  return means;
}

std::vector<BestMu> best_mu_per_lambda(const std::vector<SweepMean>& means) {
  std::map<std::pair<std::size_t, double>, std::size_t> index;
  std::vector<BestMu> out;
  for (const auto& m : means) {
    auto [it, inserted] = index.emplace(std::make_pair(m.rank, m.lambda), out.size());
    if (inserted) {
      out.push_back(BestMu{m.rank, m.lambda, std::nullopt, m.mu, m.mean});
    } else if (m.mean > out[it->second].best_mean) {
      out[it->second].best_mu = m.mu;
      out[it->second].best_mean = m.mean;
    }
    if (m.mu == 0.0) out[it->second].mu_zero_mean = m.mean;
  }
  return out;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, SweepMetric metric) {
  out << "rank,lambda,mu,trial,seed," << metric_name(metric) << '\n';
  for (const auto& r : rows) {
    out << r.rank << ',' << format_shortest(r.lambda) << ',' << format_shortest(r.mu) << ','
        << r.trial << ',' << r.seed << ',' << format_real(r.value) << '\n';
  }
}

void write_mean_csv(std::ostream& out, const std::vector<SweepMean>& means, SweepMetric metric) {
  const auto name = metric_name(metric);
  out << "rank,lambda,mu,trials,mean_" << name << ",std_" << name << '\n';
  for (const auto& m : means) {
    out << m.rank << ',' << format_shortest(m.lambda) << ',' << format_shortest(m.mu) << ','
        << m.trials << ',' << format_real(m.mean) << ',' << format_real(m.stddev) << '\n';
  }
}

void write_best_csv(std::ostream& out, const std::vector<BestMu>& best, SweepMetric metric) {
  const auto name = metric_name(metric);
  out << "rank,lambda,mean_" << name << "_mu0,best_mu,mean_" << name << "_best\n";
  for (const auto& b : best) {
    out << b.rank << ',' << format_shortest(b.lambda) << ','
        << (b.mu_zero_mean ? format_real(*b.mu_zero_mean) : std::string()) << ','
        << format_shortest(b.best_mu) << ',' << format_real(b.best_mean) << '\n';
  }
}

std::vector<SweepMean> read_mean_csv(std::istream& in, const std::string& source) {
  std::vector<SweepMean> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1 || line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 6) throw ParseError(source, lineno, "expected 6 fields");
    SweepMean m;
    m.rank = static_cast<std::size_t>(parse_real(fields[0], source, lineno));
    m.lambda = parse_real(fields[1], source, lineno);
    m.mu = parse_real(fields[2], source, lineno);
    m.trials = static_cast<std::size_t>(parse_real(fields[3], source, lineno));
    m.mean = parse_real(fields[4], source, lineno);
    m.stddev = parse_real(fields[5], source, lineno);
    out.push_back(m);
  }
  if (out.empty()) throw ParseError(source, lineno, "no sweep rows");
  return out;
}

std::string heatmap_svg(const std::vector<SweepMean>& means, std::size_t rank,
                        const std::string& title) {
  std::vector<double> lambdas;
  std::vector<double> mus;
  std::map<std::pair<double, double>, double> value;
  for (const auto& m : means) {
    if (m.rank != rank) continue;
    if (std::find(lambdas.begin(), lambdas.end(), m.lambda) == lambdas.end()) lambdas.push_back(m.lambda);
    if (std::find(mus.begin(), mus.end(), m.mu) == mus.end()) mus.push_back(m.mu);
    value[{m.lambda, m.mu}] = m.mean;
  }
  if (value.empty()) throw InputError(fmt::format("no sweep cells for rank {}", rank));
  double lo = value.begin()->second;
  double hi = lo;
  for (const auto& [key, v] : value) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  constexpr int kCellW = 72, kCellH = 28, kLeft = 80, kTop = 50;
  const int width = kLeft + kCellW * static_cast<int>(mus.size()) + 20;
  const int height = kTop + kCellH * static_cast<int>(lambdas.size()) + 40;
  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
      "font-family=\"sans-serif\" font-size=\"11\">\n",
      width, height);
  svg += fmt::format("<text x=\"{}\" y=\"20\" font-size=\"14\">{}</text>\n", kLeft, title);
  svg += fmt::format("<text x=\"10\" y=\"{}\">lambda \\ mu</text>\n", kTop - 8);
  for (std::size_t c = 0; c < mus.size(); ++c) {
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                       kLeft + kCellW * static_cast<int>(c) + kCellW / 2, kTop - 8,
                       format_shortest(mus[c]));
  }
  for (std::size_t r = 0; r < lambdas.size(); ++r) {
    const int y = kTop + kCellH * static_cast<int>(r);
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", kLeft - 6,
                       y + kCellH / 2 + 4, format_shortest(lambdas[r]));
    for (std::size_t c = 0; c < mus.size(); ++c) {
      const int x = kLeft + kCellW * static_cast<int>(c);
      const auto it = value.find({lambdas[r], mus[c]});
      if (it == value.end()) continue;
      // Linear scale from light (min) to dark blue (max).
      const double t = hi > lo ? (it->second - lo) / (hi - lo) : 0.5;
      const int red = static_cast<int>(std::lround(247 + t * (8 - 247)));
      const int green = static_cast<int>(std::lround(251 + t * (48 - 251)));
      const int blue = static_cast<int>(std::lround(255 + t * (107 - 255)));
      svg += fmt::format(
          "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"rgb({},{},{})\"/>\n", x, y,
          kCellW, kCellH, red, green, blue);
      svg += fmt::format(
          "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" fill=\"{}\">{:.4g}</text>\n",
          x + kCellW / 2, y + kCellH / 2 + 4, t > 0.5 ? "white" : "black", it->second);
    }
  }
  svg += fmt::format("<text x=\"{}\" y=\"{}\">scale: {:.6g} (light) to {:.6g} (dark)</text>\n",
                     kLeft, height - 12, lo, hi);
  svg += "</svg>\n";
  return svg;
}

std::vector<double> parse_grid(std::string_view text) {
  const std::string source = "grid";
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    std::vector<double> parts;
    std::string_view rest = text;
    while (true) {
      const auto colon = rest.find(':');
      parts.push_back(parse_real(rest.substr(0, colon), source, 1));
      if (colon == std::string_view::npos) break;
      rest.remove_prefix(colon + 1);
    }
    if (parts.size() != 3) throw ConfigError(fmt::format("range '{}' must be start:stop:step", text));
    const double start = parts[0], stop = parts[1], step = parts[2];
    if (!(step > 0.0) || stop < start) throw ConfigError(fmt::format("bad range '{}'", text));
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) {
      const double v = start + static_cast<double>(i) * step;
      out.push_back(parse_real(fmt::format("{:.12g}", v), source, 1));
    }
  } else {
    std::string_view rest = text;
    while (true) {
      const auto comma = rest.find(',');
      out.push_back(parse_real(rest.substr(0, comma), source, 1));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  }
  return out;
}

}  // namespace gssnmf
