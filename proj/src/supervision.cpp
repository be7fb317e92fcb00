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
#include "gssnmf/supervision.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <random>
#include <unordered_map>

#include <fmt/format.h>

#include "gssnmf/error.hpp"
#include "gssnmf/porter_stemmer.hpp"

namespace gssnmf {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

bool skip_line(const std::string& line) { return line.empty() || line.front() == '#'; }

}  // namespace

SeedMatrix build_seed_matrix(std::span<const std::string> seed_phrases, const Vocabulary& vocab) {
  std::vector<std::size_t> rows;
  std::vector<std::string> words;
  std::vector<std::string> dropped;
  for (const auto& phrase : seed_phrases) {
    for (const auto& token : tokenize(phrase)) {
      std::string stem = porter_stem(token);
      if (auto idx = vocab.index_of(stem)) {
        rows.push_back(*idx);
        words.push_back(std::move(stem));
      } else {
        dropped.push_back(token);
      }
    }
  }
  if (rows.empty()) throw InputError("no seed word in vocabulary");
  Matrix y(vocab.size(), rows.size());
  for (std::size_t c = 0; c < rows.size(); ++c) y(rows[c], c) = 1.0;
  return SeedMatrix{std::move(y), std::move(words), std::move(dropped)};
}

LabelMatrix build_label_matrix(const LabelAssignments& assignments,
                               std::span<const std::string> doc_ids) {
  std::unordered_map<std::string, std::size_t> column;
  for (std::size_t j = 0; j < doc_ids.size(); ++j) column.emplace(doc_ids[j], j);

  std::set<std::string> classes;
  for (const auto& [doc, labels] : assignments) {
    if (!column.contains(doc)) throw InputError(fmt::format("label for unknown document '{}'", doc));
    if (labels.empty()) throw InputError(fmt::format("document '{}' has an empty class set", doc));
    classes.insert(labels.begin(), labels.end());
  }
  for (const auto& id : doc_ids) {
    if (!assignments.contains(id)) throw InputError(fmt::format("document '{}' has no label", id));
  }

  std::vector<std::string> names(classes.begin(), classes.end());
  Matrix z(names.size(), doc_ids.size());
  for (const auto& [doc, labels] : assignments) {
    const std::size_t j = column.at(doc);
    for (const auto& label : labels) {
      const auto row = std::lower_bound(names.begin(), names.end(), label) - names.begin();
      z(static_cast<std::size_t>(row), j) = 1.0;
    }
  }
  return LabelMatrix{std::move(z), std::move(names)};
}

std::size_t train_count(std::size_t n, double train_fraction) {
  // The small offset keeps products like 0.7 * 10 from rounding up to 8.
  const auto raw = static_cast<std::size_t>(std::ceil(train_fraction * static_cast<double>(n) - 1e-9));
  return std::clamp<std::size_t>(raw, 1, n - 1);
}

MaskMatrix mask_from_train_ids(std::size_t n, std::size_t p, std::span<const std::size_t> train_ids) {
  std::vector<bool> is_train(n, false);
  for (std::size_t j : train_ids) {
    if (j >= n) throw InputError(fmt::format("train index {} out of range for {} documents", j, n));
    if (is_train[j]) throw InputError(fmt::format("train index {} listed twice", j));
    is_train[j] = true;
  }
  MaskMatrix mask{Matrix(p, n), {}, {}};
  for (std::size_t j = 0; j < n; ++j) {
    if (is_train[j]) {
      mask.train_ids.push_back(j);
      for (std::size_t i = 0; i < p; ++i) mask.l(i, j) = 1.0;
    } else {
      mask.test_ids.push_back(j);
    }
  }
  return mask;
}

MaskMatrix split_mask(std::size_t n, std::size_t p, double train_fraction, std::uint64_t rng_seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError(fmt::format("train fraction must be in (0, 1), got {}", train_fraction));
  }
  if (n < 2) throw InputError("a train/test split needs at least 2 documents");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(rng_seed);
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(train_count(n, train_fraction));
  return mask_from_train_ids(n, p, order);
}

LabelAssignments parse_label_assignments(std::istream& in, const std::string& source) {
  LabelAssignments out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (skip_line(line)) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError(source, lineno, "expected doc_id,classes");
    std::string doc = trim(std::string_view(line).substr(0, comma));
    if (doc.empty()) throw ParseError(source, lineno, "empty doc_id");
    std::set<std::string> classes;
    std::string_view rest = std::string_view(line).substr(comma + 1);
    while (true) {
      const auto semi = rest.find(';');
      std::string name = trim(rest.substr(0, semi));
      if (!name.empty()) classes.insert(std::move(name));
      if (semi == std::string_view::npos) break;
      rest.remove_prefix(semi + 1);
    }
    if (out.contains(doc)) throw ParseError(source, lineno, fmt::format("duplicate doc_id '{}'", doc));
    out.emplace(std::move(doc), std::move(classes));
  }
  return out;
}

LabelAssignments load_label_assignments(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return parse_label_assignments(in, path.string());
}

std::vector<std::string> load_seed_words(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (!skip_line(line)) words.push_back(line);
  }
  return words;
}

nlohmann::json mask_to_json(const MaskMatrix& mask) {
  return {{"n", mask.l.cols()}, {"train", mask.train_ids}, {"test", mask.test_ids}};
}

MaskMatrix mask_from_json(const nlohmann::json& j, std::size_t p) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    const auto train = j.at("train").get<std::vector<std::size_t>>();
    MaskMatrix mask = mask_from_train_ids(n, p, train);
    if (j.contains("test") && j.at("test").get<std::vector<std::size_t>>() != mask.test_ids) {
      throw InputError("mask test ids are not the complement of train ids");
    }
    return mask;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid mask json: ") + e.what());
  }
}

}  // namespace gssnmf
