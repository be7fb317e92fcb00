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
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gssnmf/error.hpp"
#include "gssnmf/porter_stemmer.hpp"
#include "gssnmf/textpipe.hpp"

using namespace gssnmf;
namespace fs = std::filesystem;

namespace {

PipelineParams unfiltered() {
  PipelineParams p;
  p.min_df = 0.0;
  p.max_df = 1.0;
  p.max_features = 1000;
  p.stopwords = {};
  return p;
}

// Words that are their own Porter stem and not stopwords.
const std::vector<std::string> kBank{"cat", "dog", "fox", "emu", "owl", "yak", "ant", "bee",
                                     "cow", "elk", "gnu", "hen", "jot", "kid", "pig", "ram"};

std::vector<Document> random_docs(std::mt19937_64& rng, std::size_t n) {
  std::vector<Document> docs;
  std::uniform_int_distribution<std::size_t> len(1, 12), word(0, kBank.size() - 1);
  for (std::size_t j = 0; j < n; ++j) {
    std::string text;
    for (std::size_t t = len(rng); t > 0; --t) text += kBank[word(rng)] + " ";
    docs.push_back({"d" + std::to_string(j), text});
  }
  return docs;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("gssnmf_textpipe_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("tokenize") {
  CHECK(tokenize("The Court, in 1999, ruled.") == std::vector<std::string>{"the", "court", "in", "ruled"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("ABC abc") == std::vector<std::string>{"abc", "abc"});
  CHECK(tokenize("abc123 x9 don't") == std::vector<std::string>{"don", "t"});
  CHECK(tokenize("caf\xc3\xa9 bar") == std::vector<std::string>{"caf", "bar"});
}

TEST_CASE("porter stem examples") {
  CHECK(porter_stem("robbery") == "robberi");
  CHECK(porter_stem("a") == "a");
  CHECK(porter_stem("running") == "run");
  CHECK(porter_stem("burglary") == "burglari");
  CHECK(porter_stem("manslaughter") == "manslaught");
}

TEST_CASE("porter stem agrees with the reference table") {
  std::ifstream in(GSSNMF_PORTER_ORACLE);
  REQUIRE(in.good());
  std::string line;
  std::size_t rows = 0, mismatches = 0;
  while (std::getline(in, line)) {
    const auto tab = line.find('\t');
    REQUIRE(tab != std::string::npos);
    const std::string word = line.substr(0, tab), stem = line.substr(tab + 1);
    ++rows;
    if (porter_stem(word) != stem) {
      ++mismatches;
      if (mismatches <= 10) MESSAGE(word << ": got " << porter_stem(word) << ", want " << stem);
    }
  }
  CHECK(rows > 5000);
  CHECK(mismatches == 0);
}

TEST_CASE("stopwords") {
  const auto& english = english_stopwords();
  CHECK(english.size() == 179);
  CHECK(english.contains("the"));
  CHECK(english.contains("wouldn't"));
  CHECK_FALSE(english.contains("court"));
  std::istringstream in("# header\nfoo\n\n  bar  \n# baz\n");
  CHECK(parse_stopwords(in) == StopwordSet{"bar", "foo"});
  CHECK(preprocess("The courts were running", english) == std::vector<std::string>{"court", "run"});
}

TEST_CASE("vocabulary validation") {
  const Vocabulary v({"alpha", "beta"});
  CHECK(v.index_of("beta") == 1);
  CHECK_FALSE(v.index_of("gamma").has_value());
  CHECK_THROWS_AS(Vocabulary({"a", "a"}), InputError);
  CHECK_THROWS_AS(Vocabulary({"Abc"}), InputError);
  CHECK_THROWS_AS(Vocabulary({"ab1"}), InputError);
  CHECK_THROWS_AS(Vocabulary({""}), InputError);
}

TEST_CASE("tf-idf on three tiny documents") {
  const std::vector<Document> docs{{"1", "a b"}, {"2", "a c"}, {"3", "a"}};
  const CorpusMatrix c = build_corpus(docs, unfiltered());
  REQUIRE(c.vocab.terms() == std::vector<std::string>{"a", "b", "c"});
  const double idf_rare = std::log(4.0 / 2.0) + 1.0;
  const double norm = std::sqrt(1.0 + idf_rare * idf_rare);
  CHECK(std::abs(c.x(0, 0) - 1.0 / norm) < 1e-9);
  CHECK(std::abs(c.x(1, 0) - idf_rare / norm) < 1e-9);
  CHECK(c.x(2, 0) == 0.0);
  CHECK(std::abs(c.x(0, 0) - 0.5085) < 1e-4);
  CHECK(std::abs(c.x(1, 0) - 0.8611) < 1e-4);
  CHECK(c.x(0, 2) == 1.0);
  CHECK(c.doc_ids == std::vector<std::string>{"1", "2", "3"});
}

TEST_CASE("single shared term gives unit columns") {
  const std::vector<Document> docs{{"1", "dog"}, {"2", "dog"}};
  const CorpusMatrix c = build_corpus(docs, unfiltered());
  CHECK(c.x == Matrix(1, 2, 1.0));
}

TEST_CASE("build_corpus errors") {
  PipelineParams p = unfiltered();
  p.min_df = 1.0;
  const std::vector<Document> docs{{"1", "cat dog"}, {"2", "fox"}};
  CHECK_THROWS_WITH_AS(build_corpus(docs, p), "no terms survive df filters", InputError);

  const std::vector<Document> one{{"1", "cat"}};
  CHECK_THROWS_AS(build_corpus(one, unfiltered()), InputError);

  p = unfiltered();
  p.max_df = 0.5;
  const std::vector<Document> emptied{{"1", "cat"}, {"2", "cat dog"}, {"3", "dog fox"}};
  // df(cat) = df(dog) = 2 > 1.5, leaving doc 1 empty.
  CHECK_THROWS_WITH_AS(build_corpus(emptied, p), "document '1' has no terms left after filtering",
                       InputError);

  p = unfiltered();
  p.min_df = 0.9;
  p.max_df = 0.5;
  CHECK_THROWS_AS(build_corpus(docs, p), ConfigError);
}

TEST_CASE("max_features keeps the most frequent terms, ties lexicographic") {
  PipelineParams p = unfiltered();
  p.max_features = 2;
  const std::vector<Document> docs{{"1", "cat dog"}, {"2", "cat fox"}, {"3", "cat fox dog emu"}};
  CHECK(build_corpus(docs, p).vocab.terms() == std::vector<std::string>{"cat", "dog"});
}

TEST_CASE("corpus invariants on random corpora") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  std::size_t built = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 15;
    const auto docs = random_docs(rng, n);
    PipelineParams p = unfiltered();
    p.min_df = 0.3 * frac(rng);
    p.max_df = 0.5 + 0.5 * frac(rng);
    p.max_features = 1 + rng() % 12;
    std::optional<CorpusMatrix> built_corpus;
    try {
      built_corpus = build_corpus(docs, p);
    } catch (const InputError&) {
      continue;
    }
    const CorpusMatrix& c = *built_corpus;
    ++built;

    CHECK(c.vocab.size() <= p.max_features);
    CHECK(c.x.rows() == c.vocab.size());
    CHECK(c.x.cols() == n);
    std::map<std::string, std::size_t> df;
    for (const auto& doc : docs) {
      std::set<std::string> seen;
      for (const auto& t : tokenize(doc.text)) seen.insert(t);
      for (const auto& t : seen) ++df[t];
    }
    for (const auto& term : c.vocab.terms()) {
      CHECK(static_cast<double>(df[term]) >= p.min_df * static_cast<double>(n));
      CHECK(static_cast<double>(df[term]) <= p.max_df * static_cast<double>(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      double norm = 0.0;
      for (std::size_t t = 0; t < c.x.rows(); ++t) {
        CHECK(c.x(t, j) >= 0.0);
        norm += c.x(t, j) * c.x(t, j);
      }
      CHECK(std::abs(std::sqrt(norm) - 1.0) < 1e-9);
    }
    for (std::size_t t = 0; t < c.x.rows(); ++t) {
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += c.x(t, j);
      CHECK(row > 0.0);
    }
    CHECK(build_corpus(docs, p) == c);
  }
  CHECK(built > 50);
}

TEST_CASE("params json round trip") {
  PipelineParams p;
  p.max_df = 0.75;
  p.min_df = 0.1;
  p.max_features = 12;
  p.stopwords = {"foo", "bar"};
  CHECK(params_from_json(params_to_json(p)) == p);
  const auto partial = params_from_json(nlohmann::json{{"max_features", 5}});
  CHECK(partial.max_features == 5);
  CHECK(partial.max_df == 0.8);
  CHECK(partial.stopwords == english_stopwords());
  CHECK_THROWS_AS(params_from_json(nlohmann::json{{"max_df", "high"}}), ConfigError);
}

TEST_CASE("documents are loaded recursively in path order") {
  TempDir dir("load");
  write_file(dir.path / "b.txt", "second");
  write_file(dir.path / "a" / "z.txt", "first");
  write_file(dir.path / "c.md", "ignored");
  const auto docs = load_documents(dir.path);
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].id == "a/z.txt");
  CHECK(docs[0].text == "first");
  CHECK(docs[1].id == "b.txt");

  TempDir empty("empty");
  CHECK_THROWS_AS(load_documents(empty.path), InputError);
}

TEST_CASE("corpus file round trip") {
  std::mt19937_64 rng(43);
  const auto docs = random_docs(rng, 8);
  const CorpusMatrix c = build_corpus(docs, unfiltered());
  std::stringstream buf;
  write_corpus(buf, c);
  const CorpusMatrix back = read_corpus(buf, "mem");
  CHECK(back == c);
  CHECK(back.doc_ids == c.doc_ids);

  TempDir dir("corpus");
  save_corpus(dir.path / "c.corpus", c);
  CHECK(load_corpus(dir.path / "c.corpus") == c);
}

TEST_CASE("truncated or damaged corpus files are parse errors") {
  std::mt19937_64 rng(47);
  const CorpusMatrix c = build_corpus(random_docs(rng, 5), unfiltered());
  std::stringstream buf;
  write_corpus(buf, c);
  const std::string text = buf.str();

  std::istringstream truncated(text.substr(0, text.rfind('\n', text.size() - 2) + 1));
  try {
    read_corpus(truncated, "c.corpus");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.file() == "c.corpus");
    CHECK(e.line() > 1);
  }
  std::istringstream empty("");
  CHECK_THROWS_AS(read_corpus(empty, "c.corpus"), ParseError);
  std::istringstream not_json("hello\n1,2\n");
  CHECK_THROWS_AS(read_corpus(not_json, "c.corpus"), ParseError);
}

TEST_CASE("document term sets follow the nonzero pattern") {
  const std::vector<Document> docs{{"1", "cat dog"}, {"2", "cat"}};
  const auto sets = document_term_sets(build_corpus(docs, unfiltered()));
  REQUIRE(sets.size() == 2);
  CHECK(sets[0] == TermSet{"cat", "dog"});
  CHECK(sets[1] == TermSet{"cat"});
}
