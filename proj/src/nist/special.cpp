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

#include "mtjrng/nist/special.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mtjrng/errors.hpp"

namespace mtjrng::nist {

double erfc(double x) { return std::erfc(x); }

double igamc(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0) || !std::isfinite(a)) {
    throw DomainError("igamc(" + std::to_string(a) + ", " + std::to_string(x) +
                      ") requires a > 0 and x >= 0");
  }
  if (std::isinf(x)) return 0.0;
  try {
    return boost::math::gamma_q(a, x);
  } catch (const std::exception& e) {
    throw DomainError(std::string("igamc: ") + e.what());
  }
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace mtjrng::nist
