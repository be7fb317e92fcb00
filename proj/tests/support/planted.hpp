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
// Synthetic labelled corpus with planted topics, built through the real
// text pipeline.
#ifndef GSSNMF_TESTS_SUPPORT_PLANTED_HPP_
#define GSSNMF_TESTS_SUPPORT_PLANTED_HPP_

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <algorithm>
#include <utility>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gssnmf/porter_stemmer.hpp"
#include "gssnmf/supervision.hpp"
#include "gssnmf/textpipe.hpp"

namespace gssnmf::testing {

struct PlantedSpec {
  std::size_t documents = 200;
  std::size_t background_terms = 240;
  std::size_t anchors_per_topic = 20;
  std::size_t min_length = 10;
  std::size_t max_length = 20;
  double own_topic_share = 0.6;  // tokens drawn from the document's class topic
  double anchor_mass = 0.3;      // share of a topic's mass on its anchor words
  double label_noise = 0.15;     // fraction of documents whose label is replaced
  std::uint64_t seed = 2026;
};

struct PlantedCorpus {
  std::vector<Document> documents;
  std::vector<std::size_t> true_class;
  LabelAssignments labels;  // noisy
  std::vector<std::string> class_names;
  CorpusMatrix corpus;
  LabelMatrix label_matrix;
  SeedMatrix seeds;
};

// Three topics named by their classes; each class name is also the leading
// anchor word of its topic, so the class names double as seed words.
inline PlantedCorpus make_planted_corpus(const PlantedSpec& spec) {
  const std::vector<std::string> class_names{"alpha", "beta", "gamma"};
  const std::size_t topics = class_names.size();
  std::mt19937_64 rng(spec.seed);

  // Vowel-free words without 's' or 'y' are fixed points of the stemmer.
  const std::string letters = "bcdfghjklmnpqrtvwxz";
  std::vector<std::string> words;
  for (std::size_t i = 0; words.size() < topics * spec.anchors_per_topic + spec.background_terms; ++i) {
    std::string w;
    for (std::size_t v = i, len = 0; len < 4; ++len, v /= letters.size()) w += letters[v % letters.size()];
    words.push_back(w);
  }
  std::shuffle(words.begin(), words.end(), rng);
  std::vector<std::vector<std::string>> anchors(topics);
  for (std::size_t t = 0; t < topics; ++t) {
    anchors[t].assign(words.begin() + static_cast<std::ptrdiff_t>(t * spec.anchors_per_topic),
                      words.begin() + static_cast<std::ptrdiff_t>((t + 1) * spec.anchors_per_topic));
    anchors[t][0] = class_names[t];
  }
  const std::vector<std::string> background(
      words.begin() + static_cast<std::ptrdiff_t>(topics * spec.anchors_per_topic), words.end());
  for (const auto& name : class_names) {
    if (porter_stem(name) != name) throw std::logic_error("class name is not a stem: " + name);
  }

  // Zipf-like weights over each topic's anchors.
  std::vector<double> anchor_weights(spec.anchors_per_topic);
  for (std::size_t r = 0; r < spec.anchors_per_topic; ++r) anchor_weights[r] = 1.0 / static_cast<double>(r + 1);
  std::discrete_distribution<std::size_t> pick_anchor(anchor_weights.begin(), anchor_weights.end());
  std::uniform_int_distribution<std::size_t> pick_background(0, background.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_class(0, topics - 1);
  std::uniform_int_distribution<std::size_t> pick_length(spec.min_length, spec.max_length);
  std::bernoulli_distribution own(spec.own_topic_share), on_anchor(spec.anchor_mass);

  std::vector<Document> documents;
  std::vector<std::size_t> true_class;
  for (std::size_t j = 0; j < spec.documents; ++j) {
    const std::size_t c = pick_class(rng);
    std::string text;
    for (std::size_t len = pick_length(rng); len > 0; --len) {
      std::size_t topic = c;
      if (!own(rng)) topic = (c + 1 + rng() % (topics - 1)) % topics;
      text += on_anchor(rng) ? anchors[topic][pick_anchor(rng)] : background[pick_background(rng)];
      text += ' ';
    }
    char id[16];
    std::snprintf(id, sizeof id, "doc%03zu.txt", j);
    documents.push_back({id, text});
    true_class.push_back(c);
  }

  std::vector<std::size_t> order(spec.documents);
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::shuffle(order.begin(), order.end(), rng);
  const auto flipped = static_cast<std::size_t>(spec.label_noise * static_cast<double>(spec.documents) + 0.5);
  std::vector<std::size_t> noisy = true_class;
  for (std::size_t i = 0; i < flipped; ++i) {
    const std::size_t j = order[i];
    noisy[j] = (noisy[j] + 1 + rng() % (topics - 1)) % topics;
  }
  LabelAssignments labels;
  for (std::size_t j = 0; j < spec.documents; ++j) labels[documents[j].id] = {class_names[noisy[j]]};

  PipelineParams params;
  params.min_df = 0.0;
  params.max_df = 1.0;
  params.max_features = 100000;
  params.stopwords = {};
  CorpusMatrix corpus = build_corpus(documents, params);
  LabelMatrix label_matrix = build_label_matrix(labels, corpus.doc_ids);
  SeedMatrix seeds = build_seed_matrix(class_names, corpus.vocab);
  return PlantedCorpus{std::move(documents), std::move(true_class), std::move(labels), class_names,
                       std::move(corpus), std::move(label_matrix), std::move(seeds)};
}

}  // namespace gssnmf::testing

#endif  // GSSNMF_TESTS_SUPPORT_PLANTED_HPP_
