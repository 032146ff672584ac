/*
   Copyright 2026 The fuzzyprok Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace fuzzyprok {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A real-valued argument lies outside its mathematical domain
/// (radius outside (0, 1), nonpositive scale, weight sums, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A point index is out of range, or a label does not resolve.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input (JSON space / measure / assignment files).
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// A configured size cap was exceeded (brute-force support cap).
class LimitError : public Error {
 public:
  using Error::Error;
};

/// Two objects that must share a carrier space do not.
class SpaceMismatchError : public Error {
 public:
  using Error::Error;
};

/// A constructed fuzzy metric failed axiom validation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace fuzzyprok
