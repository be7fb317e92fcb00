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
// Scratch directories, file helpers and a subprocess runner for CLI tests.
#ifndef GSSNMF_TESTS_SUPPORT_WORKSPACE_HPP_
#define GSSNMF_TESTS_SUPPORT_WORKSPACE_HPP_

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "support/planted.hpp"

namespace gssnmf::testing {

namespace fs = std::filesystem;

class TempDir {
 public:
  explicit TempDir(const std::string& tag)
      : path_(fs::temp_directory_path() / ("gssnmf_" + tag + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  fs::path path_;
};

inline void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

// Runs `binary args...` with stdout and stderr captured under `scratch`.
inline CommandResult run_command(const std::string& binary, const std::vector<std::string>& args,
                                 const fs::path& scratch) {
  std::string cmd = shell_quote(binary);
  for (const auto& a : args) cmd += " " + shell_quote(a);
  const fs::path out = scratch / ".stdout", err = scratch / ".stderr";
  cmd += " > " + shell_quote(out.string()) + " 2> " + shell_quote(err.string());
  const int status = std::system(cmd.c_str());
  CommandResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_file(out);
  r.err = read_file(err);
  return r;
}

// docs/<id>, labels.csv and seeds.txt for a planted corpus.
inline void write_planted_files(const PlantedCorpus& pc, const fs::path& dir) {
  for (const auto& doc : pc.documents) write_file(dir / "docs" / doc.id, doc.text);
  std::string labels = "# doc_id,classes\n";
  for (const auto& [doc, classes] : pc.labels) {
    labels += doc + ",";
    bool first = true;
    for (const auto& c : classes) {
      labels += (first ? "" : ";") + c;
      first = false;
    }
    labels += "\n";
  }
  write_file(dir / "labels.csv", labels);
  std::string seeds;
  for (const auto& name : pc.class_names) seeds += name + "\n";
  write_file(dir / "seeds.txt", seeds);
  write_file(dir / "params.json",
             R"({"max_df": 1.0, "min_df": 0.0, "max_features": 100000, "stopwords": []})" "\n");
}

}  // namespace gssnmf::testing

#endif  // GSSNMF_TESTS_SUPPORT_WORKSPACE_HPP_
