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

#include "mtjrng/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <vector>

#include "mtjrng/errors.hpp"

namespace mtjrng {
namespace {

// FFTW's planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct RealFft::Plans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (inverse) fftw_destroy_plan(inverse);
  }
};

RealFft::RealFft(std::size_t n) : n_(n), plans_(std::make_unique<Plans>()) {
  if (n < 2) throw ValidationError("FFT length must be >= 2");
  std::vector<double> real(n);
  std::vector<std::complex<double>> spec(n / 2 + 1);
  auto* c = reinterpret_cast<fftw_complex*>(spec.data());
  const int len = static_cast<int>(n);
  {
    std::lock_guard lock(planner_mutex());
    plans_->forward = fftw_plan_dft_r2c_1d(len, real.data(), c, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_->inverse = fftw_plan_dft_c2r_1d(len, c, real.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  if (!plans_->forward || !plans_->inverse) throw Error("FFTW planning failed");
}

RealFft::~RealFft() = default;

RealFft::RealFft(RealFft&&) noexcept = default;
RealFft& RealFft::operator=(RealFft&&) noexcept = default;

void RealFft::forward(std::span<double> in, std::span<std::complex<double>> out) const {
  if (in.size() != n_ || out.size() != spectrum_size()) throw ValidationError("FFT buffer size mismatch");
  fftw_execute_dft_r2c(plans_->forward, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
}

void RealFft::inverse(std::span<std::complex<double>> in, std::span<double> out) const {
  if (out.size() != n_ || in.size() != spectrum_size()) throw ValidationError("FFT buffer size mismatch");
  fftw_execute_dft_c2r(plans_->inverse, reinterpret_cast<fftw_complex*>(in.data()), out.data());
}

}  // namespace mtjrng
