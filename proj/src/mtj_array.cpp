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

#include "mtjrng/mtj_array.hpp"

#include <cmath>
#include <exception>
#include <numbers>
#include <optional>
#include <string>

#include "mtjrng/errors.hpp"

namespace mtjrng {
namespace {

double gaussian(DeviceState& state, DeviceEngine& engine) {
  if (state.has_spare) {
    state.has_spare = false;
    return state.spare_gaussian;
  }
  // Box-Muller; 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - unit_uniform(engine);
  const double u2 = unit_uniform(engine);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  state.spare_gaussian = r * std::sin(theta);
  state.has_spare = true;
  return r * std::cos(theta);
}

std::vector<double> resolve_voltages(const ArrayState& array, const CycleConfig& config) {
  config.validate();
  if (array.devices.size() != static_cast<std::size_t>(config.n_devices)) {
    throw ValidationError("array has " + std::to_string(array.devices.size()) +
                          " devices but cycle config expects " + std::to_string(config.n_devices));
  }
  const auto& v = config.v_perturb.empty() ? array.v_perturb : config.v_perturb;
  if (v.size() != array.devices.size()) {
    throw ValidationError("no perturb voltage for every device; calibrate the array first");
  }
  for (std::size_t d = 0; d < v.size(); ++d) {
    if (!(v[d] > 0.0)) {
      throw ValidationError("perturb voltage of device " + std::to_string(d) + " must be positive");
    }
    array.devices[d].validate();
  }
  return v;
}

}  // namespace

void DeviceParams::validate() const {
  const std::string who = "device " + std::to_string(device_id) + ": ";
  if (!(slope_w > 0.0)) throw ValidationError(who + "slope_w must be > 0");
  if (!(corr_rho >= 0.0 && corr_rho < 1.0)) throw ValidationError(who + "corr_rho must be in [0, 1)");
  if (!(drift_sigma >= 0.0)) throw ValidationError(who + "drift_sigma must be >= 0");
  if (!(drift_reversion >= 0.0 && drift_reversion <= 1.0)) {
    throw ValidationError(who + "drift_reversion must be in [0, 1]");
  }
  if (!(r_p > 0.0 && r_ap > r_p)) throw ValidationError(who + "requires r_ap > r_p > 0");
}

void CycleConfig::validate() const {
  if (!(v_reset < 0.0)) throw ValidationError("v_reset must be negative");
  if (!(cycle_hz > 0.0)) throw ValidationError("cycle_hz must be positive");
  if (!(pulse_width > 0.0)) throw ValidationError("pulse_width must be positive");
  if (n_devices < 1 || n_devices > 255) throw ValidationError("n_devices must be in [1, 255]");
  if (!v_perturb.empty() && v_perturb.size() != static_cast<std::size_t>(n_devices)) {
    throw ValidationError("v_perturb must list one voltage per device");
  }
  for (double v : v_perturb) {
    if (!(v > 0.0)) throw ValidationError("every perturb voltage must be positive");
  }
}

double switching_probability(double v, const DeviceParams& params) {
  return 1.0 / (1.0 + std::exp(-(v - params.v50) / params.slope_w));
}

DeviceEngine make_device_engine(std::uint64_t master_seed, int device_id, Substream purpose) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(device_id), static_cast<std::uint32_t>(purpose)};
  return DeviceEngine(seq);
}

bool sample_switch(DeviceState& state, const DeviceParams& params, double v, DeviceEngine& engine) {
  const double p = 1.0 / (1.0 + std::exp(-(v - state.v50) / params.slope_w));
  bool bit = unit_uniform(engine) < p;
  if (params.corr_rho > 0.0 && state.prev_bit >= 0 && unit_uniform(engine) < params.corr_rho) {
    bit = state.prev_bit != 0;
  }
  state.prev_bit = bit ? 1 : 0;
  if (params.drift_sigma > 0.0 || params.drift_reversion > 0.0) {
    double step = params.drift_reversion * (params.v50 - state.v50);
    if (params.drift_sigma > 0.0) step += params.drift_sigma * gaussian(state, engine);
    state.v50 += step;
  }
  return bit;
}

double calibrate(const DeviceParams& params, const CalibrationOptions& options,
                 std::uint64_t master_seed) {
  const int id = params.device_id;
  params.validate();
  if (!(options.target_p > 0.0 && options.target_p < 1.0)) {
    throw CalibrationError(id, "target probability " + std::to_string(options.target_p) +
                                   " is unreachable with a finite perturb voltage");
  }
  if (options.pulses_per_estimate < 1) throw ValidationError("pulses_per_estimate must be >= 1");
  if (!(options.v_min < options.v_max)) throw ValidationError("calibration needs v_min < v_max");

  DeviceParams still = params;
  still.drift_sigma = 0.0;
  still.drift_reversion = 0.0;
  auto engine = make_device_engine(master_seed, id, Substream::kCalibration);
  auto estimate = [&](double v) {
    DeviceState state(still);
    long ones = 0;
    for (int i = 0; i < options.pulses_per_estimate; ++i) ones += sample_switch(state, still, v, engine);
    return static_cast<double>(ones) / options.pulses_per_estimate;
  };

  double lo = options.v_min;
  double hi = options.v_max;
  if (estimate(hi) < options.target_p - options.tolerance ||
      estimate(lo) > options.target_p + options.tolerance) {
    throw CalibrationError(id, "target probability outside the reachable voltage range");
  }
  // Keep bisecting after the first hit: later midpoints sit closer to the
  // crossing, and each accepted one met the tolerance on its own estimate.
  std::optional<double> accepted;
  for (int iter = 0; iter < options.max_iterations && hi - lo >= 1e-6 * params.slope_w; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double p = estimate(mid);
    if (std::abs(p - options.target_p) <= options.tolerance) accepted = mid;
    if (p < options.target_p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (accepted) return *accepted;
  throw CalibrationError(id, "no estimate within tolerance after " + std::to_string(options.max_iterations) +
                                 " bisection steps");
}

void calibrate_array(ArrayState& array, const CalibrationOptions& options) {
  const auto n = static_cast<long>(array.devices.size());
  std::vector<double> volts(array.devices.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (long d = 0; d < n; ++d) {
    try {
      volts[d] = calibrate(array.devices[d], options, array.master_seed);
    } catch (...) {
#pragma omp critical(mtjrng_calibrate)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  array.v_perturb = std::move(volts);
}

RawBitstream generate(const ArrayState& array, const CycleConfig& config, std::uint64_t n_bits) {
  if (n_bits == 0) throw ValidationError("n_bits must be positive");
  const auto volts = resolve_voltages(array, config);
  const auto n_dev = static_cast<std::uint64_t>(config.n_devices);
  const std::uint64_t cycles = (n_bits + n_dev - 1) / n_dev;

  // Each device fills its own packed column; no shared writes.
  std::vector<RawBitstream> columns(n_dev);
#pragma omp parallel for schedule(static)
  for (long d = 0; d < static_cast<long>(n_dev); ++d) {
    const auto& params = array.devices[d];
    auto engine = make_device_engine(array.master_seed, params.device_id, Substream::kGeneration);
    DeviceState state(params);
    RawBitstream column(cycles);
    for (std::uint64_t c = 0; c < cycles; ++c) {
      if (sample_switch(state, params, volts[d], engine)) column.set(c, true);
    }
    columns[d] = std::move(column);
  }

  RawBitstream out(n_bits, SourceTag::kMtjRaw);
  // Blocks of 8 cycles start on byte boundaries, so blocks never share bytes.
  const std::uint64_t blocks = (cycles + 7) / 8;
#pragma omp parallel for schedule(static)
  for (long b = 0; b < static_cast<long>(blocks); ++b) {
    const std::uint64_t c_end = std::min<std::uint64_t>(cycles, (b + 1) * 8);
    for (std::uint64_t c = static_cast<std::uint64_t>(b) * 8; c < c_end; ++c) {
      for (std::uint64_t d = 0; d < n_dev; ++d) {
        const std::uint64_t k = c * n_dev + d;
        if (k < n_bits && columns[d].get(c)) out.set(k, true);
      }
    }
  }
  out.n_devices = static_cast<std::uint8_t>(n_dev);
  out.master_seed = array.master_seed;
  out.cycles = cycles;
  return out;
}

RawBitstream generate_serial(const ArrayState& array, const CycleConfig& config,
                             std::uint64_t n_bits) {
  if (n_bits == 0) throw ValidationError("n_bits must be positive");
  const auto volts = resolve_voltages(array, config);
  const auto n_dev = static_cast<std::size_t>(config.n_devices);
  std::vector<DeviceEngine> engines;
  std::vector<DeviceState> states;
  for (std::size_t d = 0; d < n_dev; ++d) {
    engines.push_back(
        make_device_engine(array.master_seed, array.devices[d].device_id, Substream::kGeneration));
    states.emplace_back(array.devices[d]);
  }
  RawBitstream out(0, SourceTag::kMtjRaw);
  std::uint64_t cycles = 0;
  while (out.size() < n_bits) {
    for (std::size_t d = 0; d < n_dev; ++d) {
      const bool bit = sample_switch(states[d], array.devices[d], volts[d], engines[d]);
      if (out.size() < n_bits) out.push_back(bit);
    }
    ++cycles;
  }
  out.n_devices = static_cast<std::uint8_t>(n_dev);
  out.master_seed = array.master_seed;
  out.cycles = cycles;
  return out;
}

}  // namespace mtjrng
