//
// Copyright 2026 The srlgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef SRLGEN_ERROR_H_
#define SRLGEN_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace srlgen {

// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text that does not conform to one of the documented grammars. `offset` is
// a character offset for the prompt/tagged/DSL grammars and a 1-based line
// number for JSON Lines input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// A documented precondition was violated by the caller.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// A role-scoped request named a role that is not available.
class UnknownRoleError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class FeatureDetectionError : public Error {
 public:
  using Error::Error;
};

class RecipeInapplicable : public Error {
 public:
  using Error::Error;
};

class RecipeParameterError : public Error {
 public:
  using Error::Error;
};

class TransportError : public Error {
 public:
  TransportError(const std::string& what, std::string request_id)
      : Error(what + " [request " + request_id + "]"),
        request_id_(std::move(request_id)) {}
  const std::string& request_id() const { return request_id_; }

 private:
  std::string request_id_;
};

// A backend answered, but not in the documented response schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace srlgen

#endif  // SRLGEN_ERROR_H_
