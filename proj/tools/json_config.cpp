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
#include "json_config.hpp"

#include <nlohmann/json.hpp>

#include "gssnmf/matrix_io.hpp"

namespace gssnmf::cli {
namespace {

std::string scalar_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) return format_shortest(v.get<double>());
  throw CLI::ConversionError("unsupported JSON config value: " + v.dump());
}

std::string value_text(const nlohmann::json& v) {
  if (!v.is_array()) return scalar_text(v);
  std::string out;
  for (const auto& item : v) {
    if (!out.empty()) out += ',';
    out += scalar_text(item);
  }
  return out;
}

void collect(const nlohmann::json& object, std::vector<std::string>& parents,
             std::vector<CLI::ConfigItem>& items) {
  for (const auto& [key, value] : object.items()) {
    if (value.is_object()) {
      parents.push_back(key);
      collect(value, parents, items);
      parents.pop_back();
      continue;
    }
    CLI::ConfigItem item;
    item.parents = parents;
    item.name = key;
    item.inputs = {value_text(value)};
    items.push_back(std::move(item));
  }
}

}  // namespace

std::string JsonConfig::to_config(const CLI::App* app, bool default_also, bool /*write_description*/,
                                  std::string /*prefix*/) const {
  nlohmann::json out = nlohmann::json::object();
  for (const CLI::App* sub : app->get_subcommands({})) {
    nlohmann::json section = nlohmann::json::object();
    for (const CLI::Option* opt : sub->get_options({})) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const auto& name = opt->get_lnames().front();
      if (opt->count() > 0) {
        section[name] = opt->as<std::string>();
      } else if (default_also && !opt->get_default_str().empty()) {
        section[name] = opt->get_default_str();
      }
    }
    if (!section.empty()) out[sub->get_name()] = section;
  }
  return out.dump(2) + "\n";
}

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(input);
  } catch (const nlohmann::json::exception& e) {
    throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
  std::vector<CLI::ConfigItem> items;
  std::vector<std::string> parents;
  collect(doc, parents, items);
  return items;
}

}  // namespace gssnmf::cli
