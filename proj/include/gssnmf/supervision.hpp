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
#ifndef GSSNMF_SUPERVISION_HPP_
#define GSSNMF_SUPERVISION_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gssnmf/matrix.hpp"
#include "gssnmf/textpipe.hpp"

namespace gssnmf {

// Y: d x s, one unit entry per column at the seed term's row.
struct SeedMatrix {
  Matrix y;
  std::vector<std::string> seed_words;  // stemmed, one per column
  std::vector<std::string> dropped;     // input words with no vocabulary match
};

// Z: p x n binary, rows in sorted class order.
struct LabelMatrix {
  Matrix z;
  std::vector<std::string> label_names;
};

// L: p x n, column j is all ones for a training document and all zeros for
// a test document.
struct MaskMatrix {
  Matrix l;
  std::vector<std::size_t> train_ids;  // ascending
  std::vector<std::size_t> test_ids;   // ascending
};

using LabelAssignments = std::map<std::string, std::set<std::string>>;

// Each phrase is tokenized and every constituent word is stemmed before
// lookup; each match contributes one column. Throws InputError when nothing
// matches.
SeedMatrix build_seed_matrix(std::span<const std::string> seed_phrases, const Vocabulary& vocab);

// Columns follow doc_ids. Every listed document needs at least one class and
// every assignment must name a listed document.
LabelMatrix build_label_matrix(const LabelAssignments& assignments,
                               std::span<const std::string> doc_ids);

// Uniform random split; the train size is ceil(train_fraction * n) capped at
// n - 1 so the test set is never empty. p is the number of mask rows.
MaskMatrix split_mask(std::size_t n, std::size_t p, double train_fraction, std::uint64_t rng_seed);

// Builds the mask for an explicit training set.
MaskMatrix mask_from_train_ids(std::size_t n, std::size_t p, std::span<const std::size_t> train_ids);

// Training-column count rule used by split_mask.
std::size_t train_count(std::size_t n, double train_fraction);

// `doc_id,class1;class2;...` per line. Blank lines and '#' lines are skipped.
LabelAssignments parse_label_assignments(std::istream& in, const std::string& source);
LabelAssignments load_label_assignments(const std::filesystem::path& path);

// One word or phrase per line; blank lines and '#' lines are skipped.
std::vector<std::string> load_seed_words(const std::filesystem::path& path);

// {"n": n, "train": [...], "test": [...]}
nlohmann::json mask_to_json(const MaskMatrix& mask);
MaskMatrix mask_from_json(const nlohmann::json& j, std::size_t p);

}  // namespace gssnmf

#endif  // GSSNMF_SUPERVISION_HPP_
