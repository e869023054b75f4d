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

#include <cstdint>
#include <random>
#include <vector>

#include "mtjrng/bitstream.hpp"

namespace mtjrng {

// One stochastic STT-MTJ. Voltages in volts; drift parameters per cycle.
struct DeviceParams {
  int device_id = 0;
  double v50 = 0.40;     // perturb amplitude giving 50% AP->P switching
  double slope_w = 0.02; // logistic width
  double r_p = 2.5e3;    // metadata only
  double r_ap = 5.0e3;   // metadata only
  double drift_sigma = 0.0;
  double drift_reversion = 0.0;
  double corr_rho = 0.0;  // probability the readout repeats the previous bit

  // Throws ValidationError naming the violated invariant.
  void validate() const;

  friend bool operator==(const DeviceParams&, const DeviceParams&) = default;
};

struct CycleConfig {
  double v_reset = -0.6;
  // Per-device perturb amplitude. Empty means "use the array's calibration".
  std::vector<double> v_perturb;
  double pulse_width = 5e-6;
  double v_th = 0.12;  // readout threshold, metadata only
  double cycle_hz = 1e5;
  int n_devices = 16;

  void validate() const;
};

struct ArrayState {
  std::vector<DeviceParams> devices;
  std::vector<double> v_perturb;  // calibrated amplitude per device
  std::uint64_t master_seed = 0;
};

// Logistic switching curve 1 / (1 + exp(-(v - v50) / w)).
double switching_probability(double v, const DeviceParams& params);

// Entropy substreams. Every device owns an engine derived from
// (master_seed, device_id, purpose), so results never depend on scheduling.
enum class Substream : std::uint32_t { kGeneration = 1, kCalibration = 2, kSpread = 3 };
using DeviceEngine = std::mt19937_64;
DeviceEngine make_device_engine(std::uint64_t master_seed, int device_id, Substream purpose);

// Uniform double in [0, 1) with 53 random bits.
inline double unit_uniform(DeviceEngine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

// Mutable per-device state: wandering midpoint and read-circuit memory.
struct DeviceState {
  explicit DeviceState(const DeviceParams& params) : v50(params.v50) {}

  double v50;
  int prev_bit = -1;  // -1 before the first readout
  double spare_gaussian = 0.0;
  bool has_spare = false;
};

// One reset-perturb-readout cycle. Emits 1 with the drifted switching
// probability; with probability corr_rho the previous readout is repeated
// instead; then the midpoint takes one Ornstein-Uhlenbeck step.
bool sample_switch(DeviceState& state, const DeviceParams& params, double v, DeviceEngine& engine);

struct CalibrationOptions {
  double target_p = 0.5;
  int pulses_per_estimate = 1000;
  double tolerance = 0.02;
  int max_iterations = 60;
  double v_min = 0.0;
  double v_max = 2.0;
};

// Bisection on the perturb amplitude using Monte Carlo switching estimates
// with drift disabled. Throws CalibrationError naming the device when the
// target is unreachable or the estimate never lands within tolerance.
double calibrate(const DeviceParams& params, const CalibrationOptions& options,
                 std::uint64_t master_seed);

// Calibrates every device (device-parallel) and stores the voltages.
void calibrate_array(ArrayState& array, const CalibrationOptions& options);

// Runs ceil(n_bits / n_devices) cycles and interleaves cycle-major:
// cycle 0 devices 0..N-1, cycle 1 devices 0..N-1, ... Device-parallel.
RawBitstream generate(const ArrayState& array, const CycleConfig& config, std::uint64_t n_bits);

// Single-threaded reference with the same contract, kept for tests and benchmarks.
RawBitstream generate_serial(const ArrayState& array, const CycleConfig& config,
                             std::uint64_t n_bits);

}  // namespace mtjrng
