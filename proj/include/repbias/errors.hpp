// Copyright 2026 The repbias Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace repbias {

// Exit codes used by the CLI. Exceptions map onto them 1:1.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 2,
  kExitBackendError = 3,
  kExitDataError = 4,
};

// Bad configuration: missing files, invalid schedule parameters, malformed
// templates. Exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Model backend failures that cannot be retried away (capability missing,
// exhausted retries, unusable responses). Exit code 3.
class BackendError : public std::runtime_error {
 public:
  explicit BackendError(const std::string& msg) : std::runtime_error(msg) {}
};

// Transient transport failure (timeout, connection reset, 429/5xx). Callers
// are expected to retry; after the retry budget it becomes a BackendError.
class TransportError : public BackendError {
 public:
  explicit TransportError(const std::string& msg) : BackendError(msg) {}
};

// Invalid or inconsistent input data: universe/panel/store validation
// failures, malformed result lines. Exit code 4.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite values where finite reals are required.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace repbias
