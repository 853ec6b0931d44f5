/*
 * Copyright 2026 The fogmatch Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FOGMATCH_ERRORS_HPP
#define FOGMATCH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fogmatch {

enum class ErrorCode {
  NonPositiveCapacity,
  VFScenarioWithZeroVehicles,
  UnknownDeviceName,
  InvalidScenario,
  InvalidRange,
  KOutOfRange,
  OverCapacity,
  UnassignedRequest,
  PackageMismatch,
  Infeasible,
  InstanceTooLarge,
  ConfigError,
  IoError,
};

const char* to_string(ErrorCode code);

/// Exception carrying a machine-checkable error code next to the message.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

} // namespace fogmatch

#endif // FOGMATCH_ERRORS_HPP
