// Copyright 2026 The riverdtn Authors
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
#include <vector>

namespace riverdtn {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class MalformedSdnv : public Error {
public:
  MalformedSdnv(std::size_t position, const std::string& reason)
      : Error("malformed SDNV at byte " + std::to_string(position) + ": " + reason),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// Raised by the bundle parser; position is the byte offset where decoding failed.
class MalformedBundle : public Error {
public:
  MalformedBundle(std::size_t position, std::string reason)
      : Error("malformed bundle at byte " + std::to_string(position) + ": " + reason),
        position_(position), reason_(std::move(reason)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& reason() const noexcept { return reason_; }

private:
  std::size_t position_;
  std::string reason_;
};

class InvalidEid : public Error {
public:
  using Error::Error;
};

class AlreadyCompressed : public Error {
public:
  AlreadyCompressed() : Error("payload is already deflate-compressed") {}
};

class CorruptPayload : public Error {
public:
  using Error::Error;
};

class EmptyInput : public Error {
public:
  using Error::Error;
};

class UnknownPeer : public Error {
public:
  using Error::Error;
};

class NoRoute : public Error {
public:
  using Error::Error;
};

class CalibrationFailed : public Error {
public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
public:
  using Error::Error;
};

/// One problem found while validating a scenario document.
struct Diagnostic {
  std::string field;   // JSON pointer, e.g. "/ttl_s"
  int line = 0;        // 1-based line in the source document, 0 when unknown
  std::string message;

  std::string to_string() const;
};

class ConfigInvalid : public Error {
public:
  explicit ConfigInvalid(std::vector<Diagnostic> diagnostics);

  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

private:
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace riverdtn
