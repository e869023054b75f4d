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

// mtjrng: command-line front end. Exit codes: 0 success, 1 validation
// error, 2 I/O or format error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mtjrng/analysis.hpp"
#include "mtjrng/bitstream.hpp"
#include "mtjrng/conditioning.hpp"
#include "mtjrng/config.hpp"
#include "mtjrng/errors.hpp"
#include "mtjrng/latent.hpp"
#include "mtjrng/mtj_array.hpp"
#include "mtjrng/nist/report.hpp"
#include "mtjrng/nist/suite.hpp"
#include "mtjrng/prng.hpp"

namespace {

using nlohmann::json;
using namespace mtjrng;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

void write_text(const std::string& path, const std::string& text) {
  write_file_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

// Text goes to `path`, or stdout when path is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text(path, text);
  }
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string config;
  std::optional<int> devices;
  std::optional<std::uint64_t> cycles;
  std::optional<std::uint64_t> bits;
  std::uint64_t seed = 0;
  std::string out;
};

ArrayConfig array_config_for(const std::string& path, std::optional<int> devices, std::uint64_t seed) {
  ArrayConfig cfg = path.empty() ? default_array_config() : load_array_config(path);
  cfg.master_seed = seed;
  if (devices) {
    if (!cfg.devices.empty() && static_cast<std::size_t>(*devices) != cfg.devices.size()) {
      throw ConfigError("--devices conflicts with the explicit device list in the config");
    }
    cfg.cycle.n_devices = *devices;
    if (!cfg.cycle.v_perturb.empty() && cfg.cycle.v_perturb.size() != static_cast<std::size_t>(*devices)) {
      throw ConfigError("--devices conflicts with cycle.v_perturb in the config");
    }
  }
  cfg.validate();
  return cfg;
}

int run_simulate(const SimulateArgs& a) {
  const ArrayConfig cfg = array_config_for(a.config, a.devices, a.seed);
  const auto n_dev = static_cast<std::uint64_t>(cfg.cycle.n_devices);
  std::uint64_t n_bits = 0;
  if (a.cycles && a.bits) throw ValidationError("give --cycles or --bits, not both");
  if (a.cycles) n_bits = *a.cycles * n_dev;
  else if (a.bits) n_bits = *a.bits;
  else throw ValidationError("one of --cycles or --bits is required");
  if (n_bits == 0) throw ValidationError("nothing to generate");
  const ArrayState array = build_array(cfg);
  const RawBitstream stream = generate(array, cfg.cycle, n_bits);
  write_mtjb(a.out, stream);
  std::cout << "wrote " << stream.size() << " bits (" << stream.cycles << " cycles, " << n_dev
            << " devices) to " << a.out << "\n";
  return kExitOk;
}

// --------------------------------------------------------------- condition

struct ConditionArgs {
  std::string in, out, scheme = "xor3", grouping = "temporal", toeplitz_config;
  std::size_t stride = 16;
  std::optional<std::uint64_t> seed;
  std::size_t n = 8192, m = 4096;
};

int run_condition(const ConditionArgs& a) {
  const RawBitstream input = read_mtjb(a.in);
  RawBitstream output;
  if (a.scheme == "xor3") {
    const auto grouping = a.grouping == "strided" ? Xor3Grouping::kStrided : Xor3Grouping::kTemporal;
    output = xor3(input, grouping, a.stride);
  } else {
    ToeplitzConfig cfg;
    if (!a.toeplitz_config.empty()) {
      cfg = load_toeplitz_config(a.toeplitz_config);
    } else if (a.seed) {
      cfg = ToeplitzConfig::from_stream(a.n, a.m, xoroshiro128p_stream(*a.seed, a.n + a.m - 1));
    } else {
      throw ValidationError("toeplitz needs --toeplitz-config or --seed");
    }
    output = toeplitz_extract(input, cfg);
  }
  write_mtjb(a.out, output);
  std::cout << "wrote " << output.size() << " " << to_string(output.source) << " bits from " << input.size()
            << " input bits to " << a.out << "\n";
  return kExitOk;
}

// -------------------------------------------------------------------- prng

struct PrngArgs {
  std::string kind = "xoroshiro128p", out;
  std::uint64_t seed = 0, bits = 0;
};

int run_prng(const PrngArgs& a) {
  RawBitstream stream;
  if (a.kind == "lfsr32") {
    if (a.seed > 0xFFFFFFFFull) throw InvalidSeedError("lfsr32 seed must fit in 32 bits");
    stream = lfsr32_stream(static_cast<std::uint32_t>(a.seed), a.bits);
  } else {
    stream = xoroshiro128p_stream(a.seed, a.bits);
  }
  write_mtjb(a.out, stream);
  std::cout << "wrote " << stream.size() << " " << to_string(stream.source) << " bits to " << a.out << "\n";
  return kExitOk;
}

// --------------------------------------------------------------- calibrate

struct CalibrateArgs {
  std::string config, out;
  std::optional<int> devices;
  std::uint64_t seed = 0;
  std::optional<double> target_p;
  std::optional<int> pulses;
};

int run_calibrate(const CalibrateArgs& a) {
  ArrayConfig cfg = array_config_for(a.config, a.devices, a.seed);
  if (a.target_p) cfg.calibration.target_p = *a.target_p;
  if (a.pulses) cfg.calibration.pulses_per_estimate = *a.pulses;
  cfg.cycle.v_perturb.clear();
  cfg.validate();
  const ArrayState array = build_array(cfg);
  json devices = json::array();
  for (std::size_t d = 0; d < array.devices.size(); ++d) {
    const auto& p = array.devices[d];
    devices.push_back({{"device_id", p.device_id},
                       {"v50", p.v50},
                       {"v_perturb", array.v_perturb[d]},
                       {"model_p", switching_probability(array.v_perturb[d], p)}});
  }
  json out = {{"master_seed", cfg.master_seed},
              {"target_p", cfg.calibration.target_p},
              {"pulses_per_estimate", cfg.calibration.pulses_per_estimate},
              {"tolerance", cfg.calibration.tolerance},
              {"devices", devices}};
  emit(a.out, out.dump(2) + "\n");
  return kExitOk;
}

// -------------------------------------------------------------------- nist

struct NistArgs {
  std::vector<std::string> in, labels;
  std::string config, json_path, csv_path;
  std::optional<std::size_t> sequences, length;
};

int run_nist(const NistArgs& a) {
  nist::SuiteConfig cfg;
  if (!a.config.empty()) cfg = nist::suite_config_from_json(read_json_file(a.config));
  if (a.sequences) cfg.n_sequences = *a.sequences;
  if (a.length) cfg.sequence_length = *a.length;
  cfg.validate();
  if (!a.labels.empty() && a.labels.size() != a.in.size()) {
    throw ValidationError("--label must be given once per --in");
  }
  std::vector<nist::SuiteReport> reports;
  for (std::size_t i = 0; i < a.in.size(); ++i) {
    const RawBitstream stream = read_mtjb(a.in[i]);
    reports.push_back(nist::run_suite(stream, cfg));
    if (!a.labels.empty()) reports.back().source = a.labels[i];
  }
  // Console table: one verdict per test and source.
  std::ostringstream table;
  table << "test";
  for (const auto& r : reports) table << "\t" << r.source;
  table << "\n";
  for (std::size_t t = 0; t < nist::kAllTests.size(); ++t) {
    table << nist::test_display_name(nist::kAllTests[t]);
    for (const auto& r : reports) table << "\t" << nist::to_string(r.tests[t].verdict);
    table << "\n";
  }
  std::cout << table.str();
  if (!a.json_path.empty()) {
    json j = json::array();
    for (const auto& r : reports) j.push_back(nist::to_json(r));
    write_text(a.json_path, (reports.size() == 1 ? j[0] : j).dump(2) + "\n");
  }
  if (!a.csv_path.empty()) write_text(a.csv_path, nist::to_csv(reports));
  return kExitOk;
}

// ------------------------------------------------------------------ latent

struct LatentArgs {
  std::string in, labels = "cycle", out;
  std::size_t images = 0;
};

// "cycle" gives 1, 2, ..., 10, 1, ...; anything else is a file of integers.
std::vector<int> load_labels(const std::string& choice, std::size_t n) {
  std::vector<int> labels;
  if (choice == "cycle") {
    for (std::size_t i = 0; i < n; ++i) labels.push_back(static_cast<int>(i % kClassCount) + 1);
    return labels;
  }
  std::ifstream f(choice);
  if (!f) throw IoError("cannot open labels file " + choice);
  std::string token;
  while (f >> token) {
    for (char& c : token) if (c == ',') c = ' ';
    std::istringstream parts(token);
    std::string part;
    while (parts >> part) {
      try {
        std::size_t used = 0;
        labels.push_back(std::stoi(part, &used));
        if (used != part.size()) throw std::invalid_argument(part);
      } catch (const std::logic_error&) {
        throw FormatError("labels file " + choice + ": not an integer '" + part + "'");
      }
    }
  }
  return labels;
}

int run_latent(const LatentArgs& a) {
  const RawBitstream stream = read_mtjb(a.in);
  const auto labels = load_labels(a.labels, a.images);
  const LatentMatrix m = build_latent_matrix(stream, a.images, labels);
  write_latent(a.out, m);
  std::cout << "wrote " << m.rows << " x " << kLatentDims << " latent codes (" << kBitsPerImage * m.rows
            << " bits consumed) to " << a.out << "\n";
  return kExitOk;
}

// ----------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string in, out;
  bool histogram = false, entropy = false;
  std::size_t bins = kDefaultHistogramBins;
  std::optional<std::size_t> autocorr;
};

int run_analyze(const AnalyzeArgs& a) {
  const RawBitstream stream = read_mtjb(a.in);
  json out = {{"source", to_string(stream.source)}, {"n_bits", stream.size()}};
  if (a.histogram) {
    const auto h = word_histogram(stream, a.bins);
    out["histogram"] = {{"bins", a.bins},
                        {"words", h.words},
                        {"counts", h.counts},
                        {"chi_square", h.chi_square},
                        {"p_value", h.p_value}};
  }
  if (a.autocorr) {
    const auto b = bias_and_autocorr(stream, *a.autocorr);
    out["mean"] = b.mean;
    out["autocorr"] = b.autocorr;
  }
  if (a.entropy) {
    const auto e = estimate_min_entropy(stream);
    out["min_entropy"] = {
        {"h_min_per_bit", e.h_min_per_bit}, {"p_max_upper", e.p_max_upper}, {"sample_size", e.sample_size}};
  }
  if (!a.histogram && !a.autocorr && !a.entropy) {
    out["mean"] = bias_and_autocorr(stream, 0).mean;
  }
  emit(a.out, out.dump(2) + "\n");
  return kExitOk;
}

// ------------------------------------------------------------------- model

struct ModelArgs {
  std::vector<double> cells = {16, 1e6};
  double cycle_hz = 1e5;
  std::string scheme = "all";
  std::size_t toeplitz_n = 8192, toeplitz_m = 4096;
  EnergyModel energy;
  std::string json_path;
};

int run_model(const ModelArgs& a) {
  std::vector<std::pair<std::string, double>> schemes;
  const double toeplitz_factor = static_cast<double>(a.toeplitz_n) / static_cast<double>(a.toeplitz_m);
  if (a.toeplitz_m == 0 || a.toeplitz_m >= a.toeplitz_n) throw ValidationError("Toeplitz needs 0 < m < n");
  if (a.scheme == "raw" || a.scheme == "all") schemes.emplace_back("raw", 1.0);
  if (a.scheme == "xor3" || a.scheme == "all") schemes.emplace_back("xor3", 3.0);
  if (a.scheme == "toeplitz" || a.scheme == "all") schemes.emplace_back("toeplitz", toeplitz_factor);
  json rows = json::array();
  std::printf("%-10s %12s %14s %16s %14s %12s\n", "scheme", "cells", "raw_bps", "conditioned_bps", "J_per_bit",
              "csprng_ratio");
  for (double cells : a.cells) {
    for (const auto& [name, factor] : schemes) {
      const auto t = throughput({cells, a.cycle_hz, factor});
      const auto e = energy_per_bit(a.energy, cells, a.cycle_hz, factor);
      std::printf("%-10s %12.6g %14.6g %16.6g %14.6g %12.6g\n", name.c_str(), cells, t.raw_bps, t.conditioned_bps,
                  e.e_bit, e.ratio_nominal);
      rows.push_back({{"scheme", name},
                      {"cells", cells},
                      {"cycle_hz", a.cycle_hz},
                      {"conditioning_factor", factor},
                      {"raw_bps", t.raw_bps},
                      {"conditioned_bps", t.conditioned_bps},
                      {"e_bit", e.e_bit},
                      {"csprng_ratio", {{"low", e.ratio_low}, {"nominal", e.ratio_nominal}, {"high", e.ratio_high}}}});
    }
  }
  if (!a.json_path.empty()) write_text(a.json_path, rows.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MTJ true-random-number pipeline: simulate, condition, test, model"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Simulate the MTJ array and write raw bits (MTJB)");
  c_sim->add_option("--config", sim.config, "Array config JSON");
  c_sim->add_option("--devices", sim.devices, "Number of devices (overrides config)");
  c_sim->add_option("--cycles", sim.cycles, "Reset-perturb cycles");
  c_sim->add_option("--bits", sim.bits, "Bits to emit (alternative to --cycles)");
  c_sim->add_option("--seed", sim.seed, "Master seed")->required();
  c_sim->add_option("-o,--out", sim.out, "Output MTJB file")->required();

  ConditionArgs cond;
  auto* c_cond = app.add_subcommand("condition", "Apply XOR-3 or Toeplitz extraction");
  c_cond->add_option("-i,--in", cond.in, "Input MTJB file")->required();
  c_cond->add_option("-o,--out", cond.out, "Output MTJB file")->required();
  c_cond->add_option("--scheme", cond.scheme)->check(CLI::IsMember({"xor3", "toeplitz"}));
  c_cond->add_option("--grouping", cond.grouping, "XOR-3 grouping")->check(CLI::IsMember({"temporal", "strided"}));
  c_cond->add_option("--stride", cond.stride, "Strided grouping distance");
  c_cond->add_option("--toeplitz-config", cond.toeplitz_config, "Toeplitz config JSON");
  c_cond->add_option("--seed", cond.seed, "Draw the Toeplitz seed from xoroshiro128+ with this seed");
  c_cond->add_option("--n", cond.n, "Toeplitz input block (with --seed)");
  c_cond->add_option("--m", cond.m, "Toeplitz output block (with --seed)");

  PrngArgs prng;
  auto* c_prng = app.add_subcommand("prng", "Write a baseline PRNG stream");
  c_prng->add_option("--kind", prng.kind)->check(CLI::IsMember({"lfsr32", "xoroshiro128p"}));
  c_prng->add_option("--seed", prng.seed)->required();
  c_prng->add_option("--bits", prng.bits)->required();
  c_prng->add_option("-o,--out", prng.out)->required();

  CalibrateArgs cal;
  auto* c_cal = app.add_subcommand("calibrate", "Calibrate every device to a target switching probability");
  c_cal->add_option("--config", cal.config, "Array config JSON");
  c_cal->add_option("--devices", cal.devices);
  c_cal->add_option("--seed", cal.seed)->required();
  c_cal->add_option("--target-p", cal.target_p);
  c_cal->add_option("--pulses", cal.pulses, "Pulses per estimate");
  c_cal->add_option("-o,--out", cal.out, "Output JSON (default stdout)");

  NistArgs nst;
  auto* c_nist = app.add_subcommand("nist", "Run the 15-test statistical suite");
  c_nist->add_option("-i,--in", nst.in, "Input MTJB file(s)")->required();
  c_nist->add_option("--label", nst.labels, "Column label per input");
  c_nist->add_option("--config", nst.config, "Suite config JSON");
  c_nist->add_option("--sequences", nst.sequences);
  c_nist->add_option("--length", nst.length);
  c_nist->add_option("--json", nst.json_path, "Full JSON report");
  c_nist->add_option("--csv", nst.csv_path, "Summary CSV");

  LatentArgs lat;
  auto* c_lat = app.add_subcommand("latent", "Pack random bits into 110-dim latent codes (LATF)");
  c_lat->add_option("-i,--in", lat.in)->required();
  c_lat->add_option("--images", lat.images)->required();
  c_lat->add_option("--labels", lat.labels, "'cycle' or a file of integers 1..10");
  c_lat->add_option("-o,--out", lat.out)->required();

  AnalyzeArgs an;
  auto* c_an = app.add_subcommand("analyze", "Histogram, bias, autocorrelation and min-entropy");
  c_an->add_option("-i,--in", an.in)->required();
  c_an->add_flag("--histogram", an.histogram);
  c_an->add_option("--bins", an.bins);
  c_an->add_option("--autocorr", an.autocorr, "Maximum lag");
  c_an->add_flag("--entropy", an.entropy);
  c_an->add_option("-o,--out", an.out, "Output JSON (default stdout)");

  ModelArgs mod;
  auto* c_mod = app.add_subcommand("model", "Throughput and energy table");
  c_mod->add_option("--cells", mod.cells);
  c_mod->add_option("--cycle-hz", mod.cycle_hz);
  c_mod->add_option("--scheme", mod.scheme)->check(CLI::IsMember({"raw", "xor3", "toeplitz", "all"}));
  c_mod->add_option("--toeplitz-n", mod.toeplitz_n);
  c_mod->add_option("--toeplitz-m", mod.toeplitz_m);
  c_mod->add_option("--e-device", mod.energy.e_device, "J per raw bit per cell");
  c_mod->add_option("--e-shared", mod.energy.e_shared, "Shared peripheral power, W");
  c_mod->add_option("--csprng-nominal", mod.energy.csprng_nominal, "Reference CSPRNG cost, J/bit");
  c_mod->add_option("--json", mod.json_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*c_sim) return run_simulate(sim);
    if (*c_cond) return run_condition(cond);
    if (*c_prng) return run_prng(prng);
    if (*c_cal) return run_calibrate(cal);
    if (*c_nist) return run_nist(nst);
    if (*c_lat) return run_latent(lat);
    if (*c_an) return run_analyze(an);
    if (*c_mod) return run_model(mod);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
