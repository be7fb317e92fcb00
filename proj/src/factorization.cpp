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
#include "gssnmf/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "gssnmf/error.hpp"
#include "gssnmf/matrix_io.hpp"

namespace gssnmf {
namespace {

constexpr std::string_view kResultFormat = "gssnmf-result";

Matrix uniform_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  Matrix m(rows, cols);
  for (double& v : m.data()) v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return m;
}

void require_shape(const Matrix& m, std::size_t rows, std::size_t cols, std::string_view what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw DimensionError(fmt::format("{}: expected {}x{}, got {}", what, rows, cols, m.shape()));
  }
}

void check_factors(const ProblemData& data, const Factors& f) {
  const std::size_t d = data.x.rows();
  const std::size_t n = data.x.cols();
  const std::size_t k = f.w.cols();
  require_shape(f.w, d, k, "W");
  require_shape(f.h, k, n, "H");
  if (data.y.has_value() != f.b.has_value()) {
    throw InputError("factor B must be present exactly when a seed matrix is supplied");
  }
  if (f.b) require_shape(*f.b, k, data.y->cols(), "B");
  if (data.z.has_value() != f.c.has_value()) {
    throw InputError("factor C must be present exactly when labels are supplied");
  }
  if (f.c) require_shape(*f.c, data.z->rows(), k, "C");
}

void check_weights(const ProblemData& data, double lambda, double mu) {
  if (!(lambda >= 0.0) || !(mu >= 0.0)) throw ConfigError("lambda and mu must be non-negative");
  if (lambda != 0.0 && !data.has_seeds()) throw ConfigError("lambda > 0 requires a seed matrix");
  if (mu != 0.0 && !data.has_labels()) throw ConfigError("mu > 0 requires labels and a mask");
}

void require_finite(const Matrix& m, std::size_t iteration) {
  if (!all_finite(m)) throw NumericError(fmt::format("update diverged at iteration {}", iteration));
}

// Holds the iteration-invariant products so that fit and update_step run the
// same arithmetic.
class Solver {
 public:
  Solver(const ProblemData& data, const ModelConfig& config) : data_(data), config_(config) {
    if (data.has_labels()) {
      masked_weight_ = hadamard(*data.mask, *data.mask);
      masked_labels_ = hadamard(*masked_weight_, *data.z);
    }
  }

  Factors step(Factors f, std::size_t iteration) const {
    const double lambda = config_.lambda;
    const double mu = config_.mu;
    const double eps = config_.eps;

    {
      const Matrix ht = transpose(f.h);
      Matrix numer = matmul(data_.x, ht);
      Matrix denom = matmul(f.w, matmul(f.h, ht));
      if (f.b) {
        const Matrix bt = transpose(*f.b);
        numer = add(numer, scaled(matmul(*data_.y, bt), lambda));
        denom = add(denom, scaled(matmul(f.w, matmul(*f.b, bt)), lambda));
      }
      f.w = hadamard(f.w, safe_divide(numer, denom, eps));
      require_finite(f.w, iteration);
    }

    const Matrix wt = transpose(f.w);
    const Matrix wtw = matmul(wt, f.w);
    {
      Matrix numer = matmul(wt, data_.x);
      Matrix denom = matmul(wtw, f.h);
      if (f.c) {
        const Matrix ct = transpose(*f.c);
        numer = add(numer, scaled(matmul(ct, *masked_labels_), mu));
        denom = add(denom, scaled(matmul(ct, hadamard(*masked_weight_, matmul(*f.c, f.h))), mu));
      }
      f.h = hadamard(f.h, safe_divide(numer, denom, eps));
      require_finite(f.h, iteration);
    }

    if (f.b) {
      const Matrix numer = matmul(wt, *data_.y);
      const Matrix denom = matmul(wtw, *f.b);
      f.b = hadamard(*f.b, safe_divide(numer, denom, eps));
      require_finite(*f.b, iteration);
    }

    if (f.c) {
      const Matrix ht = transpose(f.h);
      const Matrix numer = matmul(*masked_labels_, ht);
      const Matrix denom = matmul(hadamard(*masked_weight_, matmul(*f.c, f.h)), ht);
      f.c = hadamard(*f.c, safe_divide(numer, denom, eps));
      require_finite(*f.c, iteration);
    }
    return f;
  }

 private:
  const ProblemData& data_;
  const ModelConfig& config_;
  std::optional<Matrix> masked_weight_;  // L o L
  std::optional<Matrix> masked_labels_;  // L o L o Z
};

}  // namespace

void ModelConfig::validate() const {
  if (rank < 1) throw ConfigError("rank must be at least 1");
  if (max_iters < 1) throw ConfigError("max_iters must be at least 1");
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
  if (!(tol >= 0.0)) throw ConfigError("tol must be non-negative");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ConfigError("lambda must be finite and >= 0");
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw ConfigError("mu must be finite and >= 0");
}

nlohmann::json config_to_json(const ModelConfig& c) {
  return {{"rank", c.rank},         {"lambda", c.lambda},     {"mu", c.mu},
          {"max_iters", c.max_iters}, {"rng_seed", c.rng_seed}, {"eps", c.eps},
          {"tol", c.tol}};
}

ModelConfig config_from_json(const nlohmann::json& j) {
  ModelConfig c;
  try {
    c.rank = j.at("rank").get<std::size_t>();
    c.lambda = j.at("lambda").get<double>();
    c.mu = j.at("mu").get<double>();
    c.max_iters = j.at("max_iters").get<std::size_t>();
    c.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    c.eps = j.at("eps").get<double>();
    c.tol = j.at("tol").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid model config: ") + e.what());
  }
  c.validate();
  return c;
}

void ProblemData::validate() const {
  if (!all_finite(x) || !all_nonnegative(x)) throw InputError("X must be finite and non-negative");
  if (y) {
    if (y->rows() != x.rows()) {
      throw DimensionError(fmt::format("seed matrix {} does not match X {}", y->shape(), x.shape()));
    }
    if (!all_finite(*y) || !all_nonnegative(*y)) throw InputError("Y must be non-negative");
  }
  if (z.has_value() != mask.has_value()) {
    throw InputError("labels and mask must be supplied together");
  }
  if (z) {
    if (z->cols() != x.cols()) {
      throw DimensionError(fmt::format("label matrix {} does not match X {}", z->shape(), x.shape()));
    }
    if (!same_shape(*z, *mask)) {
      throw DimensionError(fmt::format("mask {} does not match labels {}", mask->shape(), z->shape()));
    }
    if (!all_finite(*z) || !all_nonnegative(*z) || !all_finite(*mask) || !all_nonnegative(*mask)) {
      throw InputError("Z and L must be non-negative");
    }
  }
}

ProblemData make_problem(const CorpusMatrix& corpus, const SeedMatrix* seeds,
                         const LabelMatrix* labels, const MaskMatrix* mask) {
  ProblemData data{corpus.x, std::nullopt, std::nullopt, std::nullopt};
  if (seeds) data.y = seeds->y;
  if (labels) data.z = labels->z;
  if (mask) data.mask = mask->l;
  data.validate();
  return data;
}

std::string_view model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kClassical:
      return "nmf";
    case ModelKind::kSemiSupervised:
      return "ssnmf";
    case ModelKind::kGuided:
      return "guided-nmf";
    case ModelKind::kGuidedSemiSupervised:
      return "gssnmf";
  }
  return "unknown";
}

ModelKind model_kind(const ModelConfig& config) {
  const bool guided = config.lambda > 0.0;
  const bool supervised = config.mu > 0.0;
  if (guided && supervised) return ModelKind::kGuidedSemiSupervised;
  if (guided) return ModelKind::kGuided;
  if (supervised) return ModelKind::kSemiSupervised;
  return ModelKind::kClassical;
}

LossTerms objective(const ProblemData& data, const Factors& f, double lambda, double mu) {
  check_weights(data, lambda, mu);
  if (f.w.rows() != data.x.rows() || f.h.cols() != data.x.cols() || f.w.cols() != f.h.rows()) {
    throw DimensionError(fmt::format("reconstruction term: X {} vs W {} H {}", data.x.shape(),
                                     f.w.shape(), f.h.shape()));
  }
  LossTerms out;
  out.reconstruction = 0.5 * frobenius_sq(subtract(data.x, matmul(f.w, f.h)));
  if (data.y && f.b) {
    if (f.b->rows() != f.w.cols() || f.b->cols() != data.y->cols()) {
      throw DimensionError(fmt::format("guidance term: Y {} vs W {} B {}", data.y->shape(),
                                       f.w.shape(), f.b->shape()));
    }
    out.guidance = 0.5 * lambda * frobenius_sq(subtract(*data.y, matmul(f.w, *f.b)));
  } else if (lambda != 0.0) {
    throw ConfigError("guidance term: lambda > 0 needs both Y and B");
  }
  if (data.z && f.c) {
    if (f.c->cols() != f.h.rows() || f.c->rows() != data.z->rows()) {
      throw DimensionError(fmt::format("label term: Z {} vs C {} H {}", data.z->shape(),
                                       f.c->shape(), f.h.shape()));
    }
    out.label =
        0.5 * mu * frobenius_sq(hadamard(*data.mask, subtract(*data.z, matmul(*f.c, f.h))));
  } else if (mu != 0.0) {
    throw ConfigError("label term: mu > 0 needs Z, L and C");
  }
  out.total = out.reconstruction + out.guidance + out.label;
  return out;
}

Gradients gradients(const ProblemData& data, const Factors& f, double lambda, double mu) {
  check_weights(data, lambda, mu);
  check_factors(data, f);
  const Matrix ht = transpose(f.h);
  const Matrix wt = transpose(f.w);
  const Matrix wtw = matmul(wt, f.w);

  Matrix gw = subtract(matmul(f.w, matmul(f.h, ht)), matmul(data.x, ht));
  Matrix gh = subtract(matmul(wtw, f.h), matmul(wt, data.x));
  Gradients g{gw, gh, std::nullopt, std::nullopt};
  if (f.b) {
    const Matrix bt = transpose(*f.b);
    g.w = add(g.w, scaled(subtract(matmul(f.w, matmul(*f.b, bt)), matmul(*data.y, bt)), lambda));
    g.b = scaled(subtract(matmul(wtw, *f.b), matmul(wt, *data.y)), lambda);
  }
  if (f.c) {
    const Matrix ll = hadamard(*data.mask, *data.mask);
    const Matrix llz = hadamard(ll, *data.z);
    const Matrix llch = hadamard(ll, matmul(*f.c, f.h));
    const Matrix ct = transpose(*f.c);
    g.h = add(g.h, scaled(subtract(matmul(ct, llch), matmul(ct, llz)), mu));
    g.c = scaled(subtract(matmul(llch, ht), matmul(llz, ht)), mu);
  }
  return g;
}

Factors initialize_factors(const ProblemData& data, std::size_t rank, std::uint64_t rng_seed) {
  if (rank < 1) throw ConfigError("rank must be at least 1");
  std::mt19937_64 rng(rng_seed);
  Matrix w = uniform_matrix(data.x.rows(), rank, rng);
  Matrix h = uniform_matrix(rank, data.x.cols(), rng);
  Factors f{std::move(w), std::move(h), std::nullopt, std::nullopt};
  if (data.y) f.b = uniform_matrix(rank, data.y->cols(), rng);
  if (data.z) f.c = uniform_matrix(data.z->rows(), rank, rng);
  return f;
}

Factors update_step(const ProblemData& data, const Factors& factors, const ModelConfig& config,
                    std::size_t iteration) {
  config.validate();
  check_weights(data, config.lambda, config.mu);
  check_factors(data, factors);
  return Solver(data, config).step(factors, iteration);
}

FactorizationResult fit_from(const ProblemData& data, Factors init, const ModelConfig& config) {
  config.validate();
  data.validate();
  check_weights(data, config.lambda, config.mu);
  check_factors(data, init);
  if (init.w.cols() != config.rank) {
    throw ConfigError(fmt::format("initial factors have rank {}, config says {}", init.w.cols(),
                                  config.rank));
  }

  FactorizationResult result{std::move(init), {}, {}, 0, model_kind(config)};
  result.objective_trace.reserve(config.max_iters);
  result.term_trace.reserve(config.max_iters);
  const Solver solver(data, config);
  double previous = objective(data, result.factors, config.lambda, config.mu).total;
  for (std::size_t it = 1; it <= config.max_iters; ++it) {
    result.factors = solver.step(std::move(result.factors), it);
    const LossTerms loss = objective(data, result.factors, config.lambda, config.mu);
    result.objective_trace.push_back(loss.total);
    result.term_trace.push_back(loss);
    result.iterations = it;
    if (config.tol > 0.0 &&
        std::abs(loss.total - previous) / std::max(previous, config.eps) < config.tol) {
      break;
    }
    previous = loss.total;
  }
  return result;
}

FactorizationResult fit(const ProblemData& data, const ModelConfig& config) {
  config.validate();
  return fit_from(data, initialize_factors(data, config.rank, config.rng_seed), config);
}

std::vector<std::string> top_keywords(const Matrix& w, const Vocabulary& vocab, std::size_t topic,
                                      std::size_t n_top) {
  if (w.rows() != vocab.size()) {
    throw DimensionError(fmt::format("W has {} rows but vocabulary has {} terms", w.rows(),
                                     vocab.size()));
  }
  if (topic >= w.cols()) {
    throw InputError(fmt::format("topic {} out of range for rank {}", topic, w.cols()));
  }
  if (n_top == 0 || n_top > w.rows()) {
    throw InputError(fmt::format("n_top must be in [1, {}], got {}", w.rows(), n_top));
  }
  std::vector<std::size_t> order(w.rows());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (w(a, topic) != w(b, topic)) return w(a, topic) > w(b, topic);
    return vocab.term(a) < vocab.term(b);
  });
  std::vector<std::string> out;
  out.reserve(n_top);
  for (std::size_t i = 0; i < n_top; ++i) out.push_back(vocab.term(order[i]));
  return out;
}

void save_result(const std::filesystem::path& dir, const FactorizationResult& result,
                 const ModelConfig& config, const nlohmann::json& extra) {
  std::filesystem::create_directories(dir);
  save_matrix_csv(dir / "W.csv", result.factors.w);
  save_matrix_csv(dir / "H.csv", result.factors.h);
  if (result.factors.b) save_matrix_csv(dir / "B.csv", *result.factors.b);
  if (result.factors.c) save_matrix_csv(dir / "C.csv", *result.factors.c);

  std::ofstream trace(dir / "trace.csv", std::ios::binary);
  if (!trace) throw InputError("cannot write " + (dir / "trace.csv").string());
  trace << "iteration,total,reconstruction,guidance,label\n";
  for (std::size_t i = 0; i < result.term_trace.size(); ++i) {
    const auto& t = result.term_trace[i];
    trace << (i + 1) << ',' << format_real(t.total) << ',' << format_real(t.reconstruction) << ','
          << format_real(t.guidance) << ',' << format_real(t.label) << '\n';
  }

  nlohmann::json manifest = extra.is_object() ? extra : nlohmann::json::object();
  manifest["format"] = kResultFormat;
  manifest["model"] = model_kind_name(result.kind);
  manifest["config"] = config_to_json(config);
  manifest["iterations"] = result.iterations;
  manifest["has_b"] = result.factors.b.has_value();
  manifest["has_c"] = result.factors.c.has_value();
  if (!result.term_trace.empty()) {
    const auto& last = result.term_trace.back();
    manifest["final_loss"] = {{"total", last.total},
                              {"reconstruction", last.reconstruction},
                              {"guidance", last.guidance},
                              {"label", last.label}};
  }
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  if (!out) throw InputError("cannot write " + (dir / "manifest.json").string());
  out << manifest.dump(2) << '\n';
}

LoadedResult load_result(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw InputError("no manifest.json in " + dir.string());
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError((dir / "manifest.json").string(), 1, e.what());
  }
  if (manifest.value("format", "") != kResultFormat) {
    throw InputError(dir.string() + " is not a factorization result directory");
  }
  ModelConfig config = config_from_json(manifest.at("config"));
  Factors f{load_matrix_csv(dir / "W.csv"), load_matrix_csv(dir / "H.csv"), std::nullopt,
            std::nullopt};
  if (manifest.value("has_b", false)) f.b = load_matrix_csv(dir / "B.csv");
  if (manifest.value("has_c", false)) f.c = load_matrix_csv(dir / "C.csv");
  if (f.w.cols() != f.h.rows()) throw DimensionError("W and H ranks disagree in " + dir.string());
  return LoadedResult{std::move(f), config, std::move(manifest)};
}

}  // namespace gssnmf
