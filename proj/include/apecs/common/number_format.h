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

#ifndef APECS_COMMON_NUMBER_FORMAT_H_
#define APECS_COMMON_NUMBER_FORMAT_H_

#include <string>

namespace apecs {

// Locale-independent decimal rendering with the given number of significant
// digits ("%.*g" semantics). Non-finite values render as "nan"/"inf"/"-inf".
std::string FormatSignificant(double value, int digits);

// Fixed-point rendering with `decimals` digits after the dot.
std::string FormatFixed(double value, int decimals);

// Round-trip exact (17 significant digits).
inline std::string FormatExact(double value) {
  return FormatSignificant(value, 17);
}

}  // namespace apecs

#endif  // APECS_COMMON_NUMBER_FORMAT_H_
