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
#include "gssnmf/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include <fmt/format.h>

#include "gssnmf/error.hpp"

namespace gssnmf {

std::string format_real(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_real(std::string_view field, const std::string& source, std::size_t line) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
    field.remove_suffix(1);
  }
  double v = 0.0;
  auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw ParseError(source, line, fmt::format("not a number: '{}'", field));
  }
  return v;
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
  std::string line;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    line.clear();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) line += ',';
      line += format_real(m(i, j));
    }
    line += '\n';
    out << line;
  }
}

Matrix read_matrix_csv(std::istream& in, const std::string& source, std::size_t rows,
                       std::size_t first_line) {
  std::vector<double> data;
  std::size_t cols = 0;
  std::size_t read = 0;
  std::string line;
  std::size_t lineno = first_line;
  while ((rows == 0 || read < rows) && std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (rows == 0) {
        ++lineno;
        continue;
      }
      throw ParseError(source, lineno, "empty matrix row");
    }
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      const auto field = std::string_view(line).substr(
          start, comma == std::string::npos ? std::string::npos : comma - start);
      data.push_back(parse_real(field, source, lineno));
      ++count;
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (read == 0) {
      cols = count;
    } else if (count != cols) {
      throw ParseError(source, lineno, fmt::format("expected {} fields, got {}", cols, count));
    }
    ++read;
    ++lineno;
  }
  if (rows != 0 && read < rows) {
    throw ParseError(source, lineno, fmt::format("truncated matrix: expected {} rows, got {}",
                                                 rows, read));
  }
  if (read == 0) throw ParseError(source, lineno, "no matrix rows");
  return Matrix(read, cols, std::move(data));
}

void save_matrix_csv(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  write_matrix_csv(out, m);
  if (!out) throw Error("write failed: " + path.string());
}

Matrix load_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return read_matrix_csv(in, path.string());
}

nlohmann::json matrix_to_json(const Matrix& m) {
  return {{"rows", m.rows()},
          {"cols", m.cols()},
          {"data", std::vector<double>(m.data().begin(), m.data().end())}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  try {
    return Matrix(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(),
                  j.at("data").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid matrix json: ") + e.what());
  } catch (const DimensionError& e) {
    throw InputError(std::string("invalid matrix json: ") + e.what());
  }
}

}  // namespace gssnmf
