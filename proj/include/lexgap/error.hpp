// Copyright 2026 The lexgap Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexgap {

/// Input that violates a data contract (bad record, unknown id, ...).
/// The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A ValidationError raised while reading a line- or record-oriented source.
/// `line` is 1-based; `field` names the offending key when there is one.
class RecordError : public ValidationError {
  public:
    RecordError(std::string source, std::size_t line, std::string field, const std::string& what)
        : ValidationError(format(source, line, field, what)),
          source_(std::move(source)),
          line_(line),
          field_(std::move(field))
    {}

    [[nodiscard]] const std::string& source() const noexcept { return source_; }
    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] const std::string& field() const noexcept { return field_; }

  private:
    static std::string format(const std::string& source, std::size_t line, const std::string& field,
                              const std::string& what)
    {
        std::string msg = source + ":" + std::to_string(line) + ": ";
        if (!field.empty()) {
            msg += "field '" + field + "': ";
        }
        return msg + what;
    }

    std::string source_;
    std::size_t line_;
    std::string field_;
};

}  // namespace lexgap
