// Copyright 2026 The mtjrng Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace mtjrng {

// Error taxonomy. The CLI maps ValidationError (and subclasses) to exit
// code 1 and FormatError / IoError to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InputSizeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidSeedError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class CalibrationError : public ValidationError {
 public:
  CalibrationError(int device_id, const std::string& what)
      : ValidationError("device " + std::to_string(device_id) + ": " + what),
        device_id_(device_id) {}
  int device_id() const noexcept { return device_id_; }

 private:
  int device_id_;
};

class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// FFT rounding residue exceeded the exactness guard.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mtjrng
