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
#include "gssnmf/textpipe.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "gssnmf/error.hpp"
#include "gssnmf/matrix_io.hpp"
#include "gssnmf/porter_stemmer.hpp"

namespace gssnmf {
namespace detail {
extern const char* const kEnglishStopwords;
}  // namespace detail

namespace {

constexpr std::string_view kCorpusFormat = "gssnmf-corpus";
constexpr int kCorpusVersion = 1;

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
char to_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

bool valid_term(const std::string& t) {
  return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

}  // namespace

const StopwordSet& english_stopwords() {
  static const StopwordSet words = [] {
    std::istringstream in(detail::kEnglishStopwords);
    return parse_stopwords(in);
  }();
  return words;
}

StopwordSet parse_stopwords(std::istream& in) {
  StopwordSet out;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string word = trim(line);
    std::transform(word.begin(), word.end(), word.begin(), to_lower);
    if (!word.empty()) out.insert(std::move(word));
  }
  return out;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open stopword file " + path.string());
  return parse_stopwords(in);
}

std::vector<std::string> tokenize(std::string_view raw) {
  std::vector<std::string> tokens;
  std::string current;
  bool has_digit = false;
  auto flush = [&] {
    if (!current.empty() && !has_digit) tokens.push_back(current);
    current.clear();
    has_digit = false;
  };
  for (char c : raw) {
    if (is_alpha(c)) {
      current.push_back(to_lower(c));
    } else if (is_digit(c)) {
      current.push_back(c);
      has_digit = true;
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

Vocabulary::Vocabulary(std::vector<std::string> terms) : terms_(std::move(terms)) {
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!valid_term(terms_[i])) {
      throw InputError(fmt::format("invalid vocabulary term '{}'", terms_[i]));
    }
    if (!index_.emplace(terms_[i], i).second) {
      throw InputError(fmt::format("duplicate vocabulary term '{}'", terms_[i]));
    }
  }
}

std::optional<std::size_t> Vocabulary::index_of(std::string_view term) const {
  const auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void PipelineParams::validate() const {
  if (!(max_df > 0.0 && max_df <= 1.0)) {
    throw ConfigError(fmt::format("max_df must be in (0, 1], got {}", max_df));
  }
  if (!(min_df >= 0.0 && min_df <= 1.0)) {
    throw ConfigError(fmt::format("min_df must be in [0, 1], got {}", min_df));
  }
  if (min_df > max_df) {
    throw ConfigError(fmt::format("min_df ({}) exceeds max_df ({})", min_df, max_df));
  }
  if (max_features == 0) throw ConfigError("max_features must be at least 1");
}

nlohmann::json params_to_json(const PipelineParams& params) {
  return {{"max_df", params.max_df},
          {"min_df", params.min_df},
          {"max_features", params.max_features},
          {"stopwords", std::vector<std::string>(params.stopwords.begin(), params.stopwords.end())}};
}

PipelineParams params_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  PipelineParams p;
  try {
    if (!j.is_object()) throw ConfigError("pipeline params must be a JSON object");
    if (j.contains("max_df")) p.max_df = j.at("max_df").get<double>();
    if (j.contains("min_df")) p.min_df = j.at("min_df").get<double>();
    if (j.contains("max_features")) p.max_features = j.at("max_features").get<std::size_t>();
    if (j.contains("stopwords") && j.contains("stopwords_file")) {
      throw ConfigError("give either stopwords or stopwords_file, not both");
    }
    if (j.contains("stopwords")) {
      p.stopwords.clear();
      for (const auto& w : j.at("stopwords")) p.stopwords.insert(w.get<std::string>());
    }
    if (j.contains("stopwords_file")) {
      std::filesystem::path file = j.at("stopwords_file").get<std::string>();
      if (file.is_relative()) file = base_dir / file;
      p.stopwords = load_stopwords(file);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid pipeline params: ") + e.what());
  }
  p.validate();
  return p;
}

std::vector<std::string> preprocess(std::string_view raw, const StopwordSet& stopwords) {
  std::vector<std::string> out;
  for (auto& token : tokenize(raw)) {
    if (stopwords.contains(token)) continue;
    out.push_back(porter_stem(token));
  }
  return out;
}

CorpusMatrix build_corpus(std::span<const Document> docs, const PipelineParams& params) {
  params.validate();
  const std::size_t n = docs.size();
  if (n < 2) throw InputError(fmt::format("need at least 2 documents, got {}", n));

  std::vector<std::map<std::string, std::size_t>> counts(n);
  std::map<std::string, std::size_t> df;
  std::map<std::string, std::size_t> total;
  for (std::size_t j = 0; j < n; ++j) {
    for (auto& stem : preprocess(docs[j].text, params.stopwords)) ++counts[j][stem];
    for (const auto& [term, c] : counts[j]) {
      ++df[term];
      total[term] += c;
    }
  }

  const double max_count = params.max_df * static_cast<double>(n);
  const double min_count = params.min_df * static_cast<double>(n);
  std::vector<std::string> kept;
  for (const auto& [term, f] : df) {
    const auto fd = static_cast<double>(f);
    if (fd > max_count || fd < min_count) continue;
    kept.push_back(term);
  }
  if (kept.empty()) throw InputError("no terms survive df filters");

  if (kept.size() > params.max_features) {
    // kept is already lexicographic, so a stable sort on count breaks ties by term.
    std::stable_sort(kept.begin(), kept.end(), [&](const std::string& a, const std::string& b) {
      return total.at(a) > total.at(b);
    });
    kept.resize(params.max_features);
    std::sort(kept.begin(), kept.end());
  }

  Vocabulary vocab(kept);
  const std::size_t d = vocab.size();
  Matrix x(d, n);
  const double smoothed_n = 1.0 + static_cast<double>(n);
  for (std::size_t t = 0; t < d; ++t) {
    const double idf = std::log(smoothed_n / (1.0 + static_cast<double>(df.at(vocab.term(t))))) + 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      const auto it = counts[j].find(vocab.term(t));
      if (it != counts[j].end()) x(t, j) = static_cast<double>(it->second) * idf;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    double norm = 0.0;
    for (std::size_t t = 0; t < d; ++t) norm += x(t, j) * x(t, j);
    if (norm == 0.0) {
      throw InputError(fmt::format("document '{}' has no terms left after filtering", docs[j].id));
    }
    norm = std::sqrt(norm);
    for (std::size_t t = 0; t < d; ++t) x(t, j) /= norm;
  }

  std::vector<std::string> ids;
  ids.reserve(n);
  for (const auto& doc : docs) ids.push_back(doc.id);
  return CorpusMatrix{std::move(x), std::move(vocab), std::move(ids), params};
}

std::vector<Document> load_documents(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) throw InputError("not a directory: " + root.string());
  std::vector<std::pair<std::string, fs::path>> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    files.emplace_back(fs::relative(entry.path(), root).generic_string(), entry.path());
  }
  if (files.empty()) throw InputError("no documents in " + root.string());
  std::sort(files.begin(), files.end());

  std::vector<Document> docs;
  docs.reserve(files.size());
  for (const auto& [id, path] : files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    docs.push_back(Document{id, text.str()});
  }
  return docs;
}

void write_corpus(std::ostream& out, const CorpusMatrix& corpus) {
  nlohmann::json header = {{"format", kCorpusFormat},
                           {"version", kCorpusVersion},
                           {"rows", corpus.x.rows()},
                           {"cols", corpus.x.cols()},
                           {"doc_ids", corpus.doc_ids},
                           {"vocab", corpus.vocab.terms()},
                           {"params", params_to_json(corpus.params)}};
  out << header.dump() << '\n';
  write_matrix_csv(out, corpus.x);
}

CorpusMatrix read_corpus(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(source, 1, "empty corpus file");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source, 1, std::string("bad corpus header: ") + e.what());
  }
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::string> doc_ids;
  std::vector<std::string> terms;
  PipelineParams params;
  try {
    if (header.at("format").get<std::string>() != kCorpusFormat) {
      throw ParseError(source, 1, "not a corpus file");
    }
    rows = header.at("rows").get<std::size_t>();
    cols = header.at("cols").get<std::size_t>();
    doc_ids = header.at("doc_ids").get<std::vector<std::string>>();
    terms = header.at("vocab").get<std::vector<std::string>>();
    params = params_from_json(header.at("params"));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source, 1, std::string("bad corpus header: ") + e.what());
  } catch (const ConfigError& e) {
    throw ParseError(source, 1, e.what());
  }
  if (terms.size() != rows || doc_ids.size() != cols) {
    throw ParseError(source, 1, "header sizes disagree with vocab/doc_ids");
  }
  Matrix x = read_matrix_csv(in, source, rows, 2);
  if (x.cols() != cols) {
    throw ParseError(source, 2, fmt::format("expected {} columns, got {}", cols, x.cols()));
  }
  std::size_t lineno = rows + 2;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) throw ParseError(source, lineno, "trailing content after matrix");
    ++lineno;
  }
  if (!all_finite(x) || !all_nonnegative(x)) {
    throw ParseError(source, 2, "corpus matrix must be finite and non-negative");
  }
  return CorpusMatrix{std::move(x), Vocabulary(std::move(terms)), std::move(doc_ids),
                      std::move(params)};
}

void save_corpus(const std::filesystem::path& path, const CorpusMatrix& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  write_corpus(out, corpus);
  if (!out) throw Error("write failed: " + path.string());
}

CorpusMatrix load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return read_corpus(in, path.string());
}

std::vector<TermSet> document_term_sets(const CorpusMatrix& corpus) {
  std::vector<TermSet> sets(corpus.documents());
  for (std::size_t t = 0; t < corpus.terms(); ++t) {
    for (std::size_t j = 0; j < corpus.documents(); ++j) {
      if (corpus.x(t, j) > 0.0) sets[j].insert(corpus.vocab.term(t));
    }
  }
  return sets;
}

}  // namespace gssnmf
