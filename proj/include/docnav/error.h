// Copyright 2026 The docnav Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DOCNAV_ERROR_H_
#define DOCNAV_ERROR_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace docnav {

// Fatal condition: bad resource file, broken precondition, unknown id.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Resource file row that failed validation. Line numbers are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string &path, size_t line, const std::string &what)
      : Error(path + ":" + std::to_string(line) + ": " + what),
        path_(path),
        line_(line) {}

  const std::string &path() const { return path_; }
  size_t line() const { return line_; }

 private:
  std::string path_;
  size_t line_;
};

// Lookup of an id that does not exist (maps to HTTP 404).
class NotFound : public Error {
 public:
  using Error::Error;
};

// Non-fatal problems collected while processing: skipped items, dropped
// matches, excluded documents.
struct Diagnostics {
  std::vector<std::string> warnings;

  void warn(std::string message) { warnings.push_back(std::move(message)); }
  bool empty() const { return warnings.empty(); }
  size_t size() const { return warnings.size(); }
};

}  // namespace docnav

#endif  // DOCNAV_ERROR_H_
