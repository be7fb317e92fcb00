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
#ifndef GSSNMF_TEXTPIPE_HPP_
#define GSSNMF_TEXTPIPE_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "gssnmf/matrix.hpp"

namespace gssnmf {

using TermSet = std::set<std::string, std::less<>>;
using StopwordSet = TermSet;

// The bundled English stopword list.
const StopwordSet& english_stopwords();

// One token per line, '#' starts a comment, blank lines ignored.
StopwordSet parse_stopwords(std::istream& in);
StopwordSet load_stopwords(const std::filesystem::path& path);

// Lowercase alphabetic tokens. Splits on every non-alphanumeric byte and
// drops any token that contains a digit.
std::vector<std::string> tokenize(std::string_view raw);

// Ordered set of unique stemmed terms with a reverse index.
class Vocabulary {
 public:
  explicit Vocabulary(std::vector<std::string> terms);

  std::size_t size() const noexcept { return terms_.size(); }
  const std::vector<std::string>& terms() const noexcept { return terms_; }
  const std::string& term(std::size_t i) const { return terms_.at(i); }
  std::optional<std::size_t> index_of(std::string_view term) const;

  bool operator==(const Vocabulary& other) const { return terms_ == other.terms_; }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct PipelineParams {
  double max_df = 0.8;
  double min_df = 0.04;
  std::size_t max_features = 700;
  StopwordSet stopwords = english_stopwords();

  // Throws ConfigError on out-of-range fractions or max_features == 0.
  void validate() const;

  bool operator==(const PipelineParams&) const = default;
};

// {"max_df", "min_df", "max_features", "stopwords": [...]}. When reading,
// "stopwords_file" (resolved against base_dir) may replace "stopwords"; keys
// that are absent keep their defaults.
nlohmann::json params_to_json(const PipelineParams& params);
PipelineParams params_from_json(const nlohmann::json& j,
                                const std::filesystem::path& base_dir = {});

struct Document {
  std::string id;
  std::string text;
};

// X is terms x documents; column j belongs to doc_ids[j].
struct CorpusMatrix {
  Matrix x;
  Vocabulary vocab;
  std::vector<std::string> doc_ids;
  PipelineParams params;

  std::size_t terms() const noexcept { return x.rows(); }
  std::size_t documents() const noexcept { return x.cols(); }
  bool operator==(const CorpusMatrix&) const = default;
};

// tokenize -> drop stopwords (on raw tokens) -> Porter stem.
std::vector<std::string> preprocess(std::string_view raw, const StopwordSet& stopwords);

// Document-frequency filtering, max_features truncation, smoothed tf-idf
// (raw tf, idf = ln((1+n)/(1+df)) + 1) and unit L2 columns. Documents keep
// the order given.
CorpusMatrix build_corpus(std::span<const Document> docs, const PipelineParams& params);

// Every `.txt` file below root, ids = paths relative to root in generic form,
// sorted lexicographically. Throws InputError("no documents") when none.
std::vector<Document> load_documents(const std::filesystem::path& root);

// Corpus file: one JSON header line, then the d x n matrix as CSV.
void write_corpus(std::ostream& out, const CorpusMatrix& corpus);
CorpusMatrix read_corpus(std::istream& in, const std::string& source);
void save_corpus(const std::filesystem::path& path, const CorpusMatrix& corpus);
CorpusMatrix load_corpus(const std::filesystem::path& path);

// Per document, the vocabulary terms it contains (nonzero entries of X).
std::vector<TermSet> document_term_sets(const CorpusMatrix& corpus);

}  // namespace gssnmf

#endif  // GSSNMF_TEXTPIPE_HPP_
