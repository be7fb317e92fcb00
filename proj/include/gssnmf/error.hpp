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
#ifndef GSSNMF_ERROR_HPP_
#define GSSNMF_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gssnmf {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes do not conform.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Caller supplied invalid data, flags or configuration. The CLI maps this
// family to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

// Malformed file content; the message carries file and line.
class ParseError : public InputError {
 public:
  ParseError(const std::string& file, std::size_t line, const std::string& what)
      : InputError(file + ":" + std::to_string(line) + ": " + what),
        file_(file),
        line_(line) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

// NaN/Inf produced during iteration.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace gssnmf

#endif  // GSSNMF_ERROR_HPP_
