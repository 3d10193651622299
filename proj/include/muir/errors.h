// Copyright 2026 The MUIR Authors
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

#ifndef MUIR_ERRORS_H_
#define MUIR_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace muir {

// Base class for all errors raised by the MUIR library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Short form text does not follow the 3..5 segment grammar.
class MalformedShortForm : public Error {
 public:
  using Error::Error;
};

// Canonical form text does not have exactly seven valid segments.
class MalformedCanonical : public Error {
 public:
  using Error::Error;
};

// Platform resource-type label outside the known vocabulary.
class UnknownLabel : public Error {
 public:
  using Error::Error;
};

// Two ingested resources share a platform URL.
class DuplicateUrl : public Error {
 public:
  using Error::Error;
};

// Two ingested resources map to the same opaque identifier.
class OpaqueCollision : public Error {
 public:
  using Error::Error;
};

// A resource or post record failed to parse; carries the 1-based line number.
class MalformedRecord : public Error {
 public:
  MalformedRecord(std::size_t line, const std::string &what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Lookup key not present in the catalog.
class NotFound : public Error {
 public:
  using Error::Error;
};

// Resolution found no resource in the course context.
class NoCandidates : public Error {
 public:
  using Error::Error;
};

// Resolution found candidates but none above the acceptance threshold.
class NoPlausibleMatch : public Error {
 public:
  using Error::Error;
};

// Gold annotations reference a post id absent from the post dump.
class MissingPost : public Error {
 public:
  using Error::Error;
};

}  // namespace muir

#endif  // MUIR_ERRORS_H_
