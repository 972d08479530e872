// Copyright 2026 The Accord Authors.
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

#ifndef ACCORD_ERROR_H_
#define ACCORD_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace accord {

// Base class for all pipeline errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file content. Carries the 1-based line number when known.
class InputError : public Error {
 public:
  InputError(const std::string &path, std::size_t line, const std::string &what)
      : Error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}
  explicit InputError(const std::string &what) : Error(what) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;
};

// Invalid configuration, e.g. an underfilled exemplar bank.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Violated operation precondition on in-memory values.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A remote endpoint could not be reached or timed out. Retryable.
class TransportError : public Error {
 public:
  TransportError(std::string key, const std::string &what)
      : Error(what), key_(std::move(key)) {}
  const std::string &key() const { return key_; }

 private:
  std::string key_;
};

// A remote endpoint answered with a payload that violates the wire protocol.
class ProtocolError : public Error {
 public:
  ProtocolError(std::string key, const std::string &what)
      : Error(what), key_(std::move(key)) {}
  const std::string &key() const { return key_; }

 private:
  std::string key_;
};

// Text that does not fit any description template, or an empty generation.
class UnparseableError : public Error {
 public:
  using Error::Error;
};

// Lookup of an unknown key (e.g. a concept missing from the index).
class NotFound : public Error {
 public:
  using Error::Error;
};

}  // namespace accord

#endif  // ACCORD_ERROR_H_
