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
#ifndef GSSNMF_MATRIX_IO_HPP_
#define GSSNMF_MATRIX_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "gssnmf/matrix.hpp"

namespace gssnmf {

// 17 significant digits, which round-trips any double through strtod.
std::string format_real(double v);

// Shortest text that parses back to exactly v.
std::string format_shortest(double v);

// Strict parse of a whole field; throws ParseError with the given context.
double parse_real(std::string_view field, const std::string& source, std::size_t line);

// Dense CSV: one matrix row per line, comma separated.
void write_matrix_csv(std::ostream& out, const Matrix& m);
// Reads exactly `rows` lines when rows > 0, otherwise until EOF. `first_line`
// is the 1-based line number of the first row for error messages.
Matrix read_matrix_csv(std::istream& in, const std::string& source, std::size_t rows = 0,
                       std::size_t first_line = 1);

void save_matrix_csv(const std::filesystem::path& path, const Matrix& m);
Matrix load_matrix_csv(const std::filesystem::path& path);

// {"rows": r, "cols": c, "data": [row-major values]}
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

}  // namespace gssnmf

#endif  // GSSNMF_MATRIX_IO_HPP_
