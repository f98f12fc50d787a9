// Copyright 2026 The channel-forge Authors
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

#include <stdexcept>
#include <string>

namespace channelforge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix or tensor dimensions do not fit the requested operation.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A Kraus set fails sum_i K_i^dagger K_i = 1.
class CompletenessError : public Error {
 public:
  CompletenessError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A matrix that should describe a channel or a state is not CP/PSD/TP.
class InvalidChannelError : public Error {
 public:
  using Error::Error;
};

/// User supplied configuration is inconsistent (missing noise entry,
/// malformed file, dangling classical condition...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace channelforge
