// Copyright 2026 The APECS Authors
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

#ifndef APECS_COMMON_ERROR_H_
#define APECS_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace apecs {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInputError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidConfigError : public Error {
 public:
  using Error::Error;
};

class LoadError : public Error {
 public:
  using Error::Error;
};

// Raised when a loss or gradient becomes non-finite. `epoch()` is -1 when the
// failure happened outside an epoch loop.
class TrainingDivergedError : public Error {
 public:
  TrainingDivergedError(const std::string& what, int epoch = -1)
      : Error(what), epoch_(epoch) {}
  int epoch() const { return epoch_; }

 private:
  int epoch_;
};

}  // namespace apecs

#endif  // APECS_COMMON_ERROR_H_
