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

namespace mtjrng::nist {

// Complementary error function.
double erfc(double x);

// Upper regularized incomplete gamma Q(a, x). Throws DomainError unless
// a > 0 and x >= 0.
double igamc(double a, double x);

// Standard normal CDF.
double normal_cdf(double x);

}  // namespace mtjrng::nist
