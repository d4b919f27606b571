// Copyright 2026 The qid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qid {

/// Base of every error raised by the engine. `kind()` is a stable short name
/// used in reports ("PoleError", "DomainError", ...).
class QidError : public std::runtime_error {
 public:
  QidError(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define QID_DEFINE_ERROR(Name)                                                \
  class Name : public QidError {                                              \
   public:                                                                    \
    explicit Name(const std::string& what) : QidError(#Name, what) {}         \
  }

QID_DEFINE_ERROR(DomainError);
QID_DEFINE_ERROR(PoleError);
QID_DEFINE_ERROR(TruncationError);
QID_DEFINE_ERROR(NotInvertible);
QID_DEFINE_ERROR(NonFormalUnit);
QID_DEFINE_ERROR(PrecondError);
QID_DEFINE_ERROR(NotFound);
QID_DEFINE_ERROR(SamplingExhausted);
QID_DEFINE_ERROR(UsageError);

#undef QID_DEFINE_ERROR

/// Syntax error in the term DSL. Columns and lines are 1-based.
class ParseError : public QidError {
 public:
  ParseError(int line, int column, std::string expected, const std::string& what)
      : QidError("ParseError", "line " + std::to_string(line) + ", column " +
                                   std::to_string(column) + ": " + what +
                                   (expected.empty() ? "" : " (expected " + expected + ")")),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  int line_;
  int column_;
  std::string expected_;
};

/// Wraps an evaluation failure with the identity id it happened in.
class RecordError : public QidError {
 public:
  RecordError(const std::string& id, const QidError& cause)
      : QidError(cause.kind(), id + ": " + cause.what()), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

}  // namespace qid
