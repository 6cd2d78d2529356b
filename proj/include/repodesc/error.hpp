// Copyright 2026 The repodesc Authors.
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
#include <cstdint>
#include <stdexcept>
#include <string>

namespace repodesc {

// Base of every error thrown by the library. Data errors (bad input files,
// degenerate statistics) and network errors are distinguished so the CLI
// can map them onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public DataError {
 public:
  explicit EmptyInput(const std::string& what = "empty input") : DataError(what) {}
};

class EmptyDescription : public DataError {
 public:
  EmptyDescription() : DataError("description is empty") {}
};

class EmptyDocument : public DataError {
 public:
  EmptyDocument() : DataError("document has no tokens") {}
};

class EmptyCorpus : public DataError {
 public:
  EmptyCorpus() : DataError("corpus is empty") {}
};

class EmptyAfterFiltering : public DataError {
 public:
  EmptyAfterFiltering() : DataError("no record survived the curation filters") {}
};

class UnsupportedMethod : public DataError {
 public:
  explicit UnsupportedMethod(const std::string& name)
      : DataError("unsupported summarization method: " + name) {}
};

class InvalidN : public DataError {
 public:
  explicit InvalidN(int n) : DataError("ROUGE-N requires n >= 1, got " + std::to_string(n)) {}
};

// Fleiss' kappa is undefined when expected agreement is exactly one.
class Degenerate : public DataError {
 public:
  Degenerate() : DataError("kappa undefined: expected agreement equals 1") {}
};

class LengthExceeded : public DataError {
 public:
  LengthExceeded(std::size_t got, std::size_t limit)
      : DataError("sequence length " + std::to_string(got) + " exceeds limit " +
                  std::to_string(limit)) {}
};

class NonfiniteLoss : public DataError {
 public:
  using DataError::DataError;
};

class IoError : public DataError {
 public:
  using DataError::DataError;
};

class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& detail)
      : DataError("line " + std::to_string(line) + ": " + detail), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class SchemaError : public DataError {
 public:
  SchemaError(std::size_t line, const std::string& detail)
      : DataError("line " + std::to_string(line) + ": " + detail), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class NetworkError : public Error {
 public:
  using Error::Error;
};

class NotFound : public NetworkError {
 public:
  explicit NotFound(const std::string& what) : NetworkError(what) {}
};

class RateLimited : public NetworkError {
 public:
  RateLimited(const std::string& what, std::int64_t reset_epoch)
      : NetworkError(what), reset_epoch_(reset_epoch) {}
  // Unix time at which the server-side quota resets (0 when unknown).
  std::int64_t reset_epoch() const noexcept { return reset_epoch_; }

 private:
  std::int64_t reset_epoch_;
};

}  // namespace repodesc
