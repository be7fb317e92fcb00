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
#ifndef GSSNMF_TOOLS_JSON_CONFIG_HPP_
#define GSSNMF_TOOLS_JSON_CONFIG_HPP_

#include <istream>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace gssnmf::cli {

// CLI11 config reader for JSON files of the form
//   {"factorize": {"rank": 7, "lambda": 0.3}, "sweep": {"lambdas": [0.1, 0.2]}}
// Each top-level object is the section for the subcommand of that name.
// Arrays become comma-joined values, booleans become flag values.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool write_description,
                        std::string prefix) const override;
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;
};

}  // namespace gssnmf::cli

#endif  // GSSNMF_TOOLS_JSON_CONFIG_HPP_
