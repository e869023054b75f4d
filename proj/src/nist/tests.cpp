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

#include "mtjrng/nist/tests.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>

#include "mtjrng/errors.hpp"
#include "mtjrng/fft.hpp"
#include "mtjrng/nist/special.hpp"

namespace mtjrng::nist {
namespace {

constexpr std::array<std::string_view, 15> kKeys = {
    "frequency",         "block_frequency",       "runs",
    "longest_run",       "rank",                  "fft",
    "non_overlapping_template", "overlapping_template", "universal",
    "linear_complexity", "serial",                "approximate_entropy",
    "cumulative_sums",   "random_excursions",     "random_excursions_variant",
};

constexpr std::array<std::string_view, 15> kDisplayNames = {
    "Frequency",         "Block frequency",       "Runs",
    "Longest run",       "Rank",                  "FFT",
    "Non-overlapping template", "Overlapping template", "Universal",
    "Linear complexity", "Serial",                "Approximate entropy",
    "Cumulative sum",    "Random excursions",     "Random excursions variant",
};

double clamp_p(double p) {
  if (std::isnan(p)) return 0.0;
  return std::clamp(p, 0.0, 1.0);
}

TestOutcome single(double p) { return std::vector<double>{clamp_p(p)}; }

double chi_square(std::span<const double> observed, std::span<const double> probs, double total) {
  double chi2 = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = total * probs[i];
    chi2 += (observed[i] - expected) * (observed[i] - expected) / expected;
  }
  return chi2;
}

std::size_t floor_log2(std::size_t n) { return std::bit_width(n) - 1; }

// Count of each k-bit window value over the sequence with wraparound.
std::vector<std::uint32_t> wrapped_window_counts(BitSpan bits, std::size_t k) {
  std::vector<std::uint32_t> counts(std::size_t{1} << k, 0);
  if (k == 0) {
    counts[0] = static_cast<std::uint32_t>(bits.size());
    return counts;
  }
  const std::size_t n = bits.size();
  const std::uint32_t mask = (k == 32) ? ~0u : ((1u << k) - 1);
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < k - 1; ++i) v = (v << 1) | bits[i];
  for (std::size_t i = 0; i < n; ++i) {
    v = ((v << 1) | bits[(i + k - 1) % n]) & mask;
    ++counts[v];
  }
  return counts;
}

const RealFft& fft_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<RealFft>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<RealFft>(n);
  return *slot;
}

const std::vector<std::uint32_t>& embedded_template9() {
  static const std::vector<std::uint32_t> table = [] {
    static constexpr const char* kRows[] = {
#include "template9.inc"
    };
    std::vector<std::uint32_t> out;
    for (const char* row : kRows) {
      std::uint32_t v = 0;
      for (const char* c = row; *c; ++c) v = (v << 1) | static_cast<std::uint32_t>(*c - '0');
      out.push_back(v);
    }
    return out;
  }();
  return table;
}

constexpr std::array<double, 17> kUniversalExpected = {
    0,         0.73264948, 1.5374383, 2.40160681, 3.31122472, 4.25342659,
    5.2177052, 6.1962507,  7.1836656, 8.1764248,  9.1723243,  10.170032,
    11.168765, 12.168070,  13.167693, 14.167488,  15.167379};
constexpr std::array<double, 17> kUniversalVariance = {
    0,     0.690, 1.338, 1.901, 2.358, 2.705, 2.954, 3.125, 3.238,
    3.311, 3.356, 3.384, 3.401, 3.410, 3.416, 3.419, 3.421};
constexpr std::array<std::uint64_t, 17> kUniversalMinLength = {
    0, 0, 0, 0, 0, 0, 387'840, 904'960, 2'068'480, 4'654'080, 10'342'400,
    22'753'280, 49'643'520, 107'560'960, 231'669'760, 496'435'200, 1'059'061'760};

// Visit-count probabilities for state x of the random excursions test.
std::array<double, 6> excursion_probabilities(int x) {
  const double ax = std::abs(x);
  const double stay = 1.0 - 1.0 / (2.0 * ax);
  std::array<double, 6> pi{};
  pi[0] = stay;
  for (int k = 1; k <= 4; ++k) pi[k] = 1.0 / (4.0 * ax * ax) * std::pow(stay, k - 1);
  pi[5] = 1.0 / (2.0 * ax) * std::pow(stay, 4);
  return pi;
}

struct Walk {
  std::vector<int> sums;          // S_1 .. S_n
  std::vector<std::size_t> ends;  // exclusive end index (into sums) of each cycle
};

Walk random_walk(BitSpan bits) {
  Walk w;
  w.sums.resize(bits.size());
  int s = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    s += bits[i] ? 1 : -1;
    w.sums[i] = s;
    if (s == 0) w.ends.push_back(i + 1);
  }
  if (s != 0) w.ends.push_back(bits.size());
  return w;
}

bool excursions_applicable(const Walk& w, std::size_t n) {
  const double required = std::max(0.005 * std::sqrt(static_cast<double>(n)), 500.0);
  return static_cast<double>(w.ends.size()) >= required;
}

// Packed bitset helpers for Berlekamp-Massey.
void shift_up_one(std::vector<std::uint64_t>& v) {
  for (std::size_t w = v.size(); w-- > 0;) {
    v[w] = (v[w] << 1) | (w > 0 ? v[w - 1] >> 63 : 0);
  }
}

void xor_shifted(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src, std::size_t shift) {
  const std::size_t ws = shift >> 6;
  const unsigned bs = shift & 63;
  for (std::size_t w = 0; w + ws < dst.size(); ++w) {
    std::uint64_t v = src[w] << bs;
    if (bs && w > 0) v |= src[w - 1] >> (64 - bs);
    dst[w + ws] ^= v;
  }
}

}  // namespace

std::string_view test_key(TestId id) { return kKeys.at(static_cast<std::size_t>(id)); }
std::string_view test_display_name(TestId id) { return kDisplayNames.at(static_cast<std::size_t>(id)); }

TestId test_from_key(std::string_view key) {
  for (std::size_t i = 0; i < kKeys.size(); ++i) {
    if (kKeys[i] == key) return static_cast<TestId>(i);
  }
  throw ValidationError("unknown NIST test '" + std::string(key) + "'");
}

void SuiteConfig::validate() const {
  if (sequence_length == 0) throw ConfigError("sequence_length must be positive");
  if (n_sequences == 0) throw ConfigError("n_sequences must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must be in (0, 1)");
  if (block_frequency_m < 2) throw ConfigError("block_frequency M must be >= 2");
  if (non_overlapping_m < 2 || non_overlapping_m > 21) throw ConfigError("non-overlapping m must be in [2, 21]");
  if (overlapping_m < 2 || overlapping_m >= overlapping_block) {
    throw ConfigError("overlapping template needs 2 <= m < block");
  }
  if (universal_l < 6 || universal_l > 16) throw ConfigError("universal L must be in [6, 16]");
  if (universal_q < 1) throw ConfigError("universal Q must be positive");
  if (linear_complexity_m < 500 || linear_complexity_m > 5000) {
    throw ConfigError("linear complexity M must be in [500, 5000]");
  }
  if (serial_m < 2 || serial_m > 24) throw ConfigError("serial m must be in [2, 24]");
  if (approximate_entropy_m < 1 || approximate_entropy_m > 23) {
    throw ConfigError("approximate entropy m must be in [1, 23]");
  }
}

TestOutcome frequency(BitSpan bits) {
  const auto n = static_cast<double>(bits.size());
  if (bits.empty()) return std::nullopt;
  const double ones = static_cast<double>(std::count(bits.begin(), bits.end(), 1));
  const double s = 2.0 * ones - n;
  return single(erfc(std::abs(s) / std::sqrt(2.0 * n)));
}

TestOutcome block_frequency(BitSpan bits, std::size_t block) {
  const std::size_t blocks = bits.size() / block;
  if (blocks == 0 || bits.size() < 100) return std::nullopt;
  double sum = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    const auto first = bits.begin() + static_cast<std::ptrdiff_t>(b * block);
    const double pi = static_cast<double>(std::count(first, first + static_cast<std::ptrdiff_t>(block), 1)) /
                      static_cast<double>(block);
    sum += (pi - 0.5) * (pi - 0.5);
  }
  const double chi2 = 4.0 * static_cast<double>(block) * sum;
  return single(igamc(static_cast<double>(blocks) / 2.0, chi2 / 2.0));
}

TestOutcome runs(BitSpan bits) {
  if (bits.empty()) return std::nullopt;
  const auto n = static_cast<double>(bits.size());
  const double pi = static_cast<double>(std::count(bits.begin(), bits.end(), 1)) / n;
  // Frequency prerequisite.
  if (std::abs(pi - 0.5) >= 2.0 / std::sqrt(n)) return single(0.0);
  double v = 1.0;
  for (std::size_t k = 0; k + 1 < bits.size(); ++k) v += bits[k] != bits[k + 1];
  const double num = std::abs(v - 2.0 * n * pi * (1.0 - pi));
  const double den = 2.0 * std::sqrt(2.0 * n) * pi * (1.0 - pi);
  return single(erfc(num / den));
}

TestOutcome longest_run(BitSpan bits) {
  const std::size_t n = bits.size();
  if (n < 128) return std::nullopt;
  std::size_t block = 0;
  int v_min = 0;
  std::vector<double> pi;
  if (n < 6272) {
    block = 8;
    v_min = 1;
    pi = {0.21484375, 0.3671875, 0.23046875, 0.1875};
  } else if (n < 750000) {
    block = 128;
    v_min = 4;
    pi = {0.1174035788, 0.242955959, 0.249363483, 0.17517706, 0.102701071, 0.112398847};
  } else {
    block = 10000;
    v_min = 10;
    pi = {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727};
  }
  const int k = static_cast<int>(pi.size()) - 1;
  const std::size_t blocks = n / block;
  std::vector<double> nu(pi.size(), 0.0);
  for (std::size_t b = 0; b < blocks; ++b) {
    int run = 0;
    int longest = 0;
    for (std::size_t i = b * block; i < (b + 1) * block; ++i) {
      run = bits[i] ? run + 1 : 0;
      longest = std::max(longest, run);
    }
    const int cls = std::clamp(longest - v_min, 0, k);
    nu[static_cast<std::size_t>(cls)] += 1.0;
  }
  const double chi2 = chi_square(nu, pi, static_cast<double>(blocks));
  return single(igamc(k / 2.0, chi2 / 2.0));
}

int matrix_rank_gf2(std::span<const std::uint64_t> rows) {
  std::vector<std::uint64_t> m(rows.begin(), rows.end());
  int rank = 0;
  for (int col = 63; col >= 0 && rank < static_cast<int>(m.size()); --col) {
    const std::uint64_t bit = 1ull << col;
    auto pivot = std::find_if(m.begin() + rank, m.end(), [bit](std::uint64_t r) { return r & bit; });
    if (pivot == m.end()) continue;
    std::iter_swap(m.begin() + rank, pivot);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r != static_cast<std::size_t>(rank) && (m[r] & bit)) m[r] ^= m[rank];
    }
    ++rank;
  }
  return rank;
}

double gf2_rank_probability(int r, int rows, int cols) {
  if (r < 0 || r > std::min(rows, cols)) return 0.0;
  double log2p = static_cast<double>(r) * (rows + cols - r) - static_cast<double>(rows) * cols;
  double product = 1.0;
  for (int i = 0; i < r; ++i) {
    product *= (1.0 - std::ldexp(1.0, i - rows)) * (1.0 - std::ldexp(1.0, i - cols)) /
               (1.0 - std::ldexp(1.0, i - r));
  }
  return std::exp2(log2p) * product;
}

TestOutcome rank(BitSpan bits) {
  constexpr std::size_t kSide = 32;
  const std::size_t matrices = bits.size() / (kSide * kSide);
  if (matrices < 38) return std::nullopt;
  const double p32 = gf2_rank_probability(32, 32, 32);
  const double p31 = gf2_rank_probability(31, 32, 32);
  const std::array<double, 3> pi = {p32, p31, 1.0 - p32 - p31};
  std::array<double, 3> f = {0, 0, 0};
  std::array<std::uint64_t, kSide> rows{};
  for (std::size_t k = 0; k < matrices; ++k) {
    for (std::size_t r = 0; r < kSide; ++r) {
      std::uint64_t row = 0;
      const std::size_t base = k * kSide * kSide + r * kSide;
      for (std::size_t c = 0; c < kSide; ++c) row = (row << 1) | bits[base + c];
      rows[r] = row;
    }
    const int rk = matrix_rank_gf2(rows);
    f[rk == 32 ? 0 : (rk == 31 ? 1 : 2)] += 1.0;
  }
  const double chi2 = chi_square(f, pi, static_cast<double>(matrices));
  return single(std::exp(-chi2 / 2.0));
}

TestOutcome spectral(BitSpan bits) {
  const std::size_t n = bits.size();
  if (n < 1000) return std::nullopt;
  const RealFft& fft = fft_for(n);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = bits[i] ? 1.0 : -1.0;
  std::vector<std::complex<double>> spec(fft.spectrum_size());
  fft.forward(x, spec);
  const double nd = static_cast<double>(n);
  const double threshold = std::sqrt(std::log(1.0 / 0.05) * nd);
  const double n0 = 0.95 * nd / 2.0;
  double n1 = 0.0;
  for (std::size_t k = 0; k < n / 2; ++k) n1 += std::abs(spec[k]) < threshold;
  const double d = (n1 - n0) / std::sqrt(nd * 0.95 * 0.05 / 4.0);
  return single(erfc(std::abs(d) / std::numbers::sqrt2));
}

const std::vector<std::uint32_t>& aperiodic_templates(std::size_t m) {
  if (m == 9) return embedded_template9();
  static std::mutex mutex;
  static std::map<std::size_t, std::vector<std::uint32_t>> cache;
  std::lock_guard lock(mutex);
  auto [it, fresh] = cache.try_emplace(m);
  if (fresh) {
    for (std::uint32_t v = 0; v < (1u << m); ++v) {
      bool aperiodic = true;
      // Shift k overlaps when the top m-k bits equal the bottom m-k bits.
      for (std::size_t k = 1; k < m && aperiodic; ++k) {
        const std::uint32_t mask = (1u << (m - k)) - 1;
        if ((v >> k) == (v & mask)) aperiodic = false;
      }
      if (aperiodic) it->second.push_back(v);
    }
  }
  return it->second;
}

TestOutcome non_overlapping_template(BitSpan bits, std::size_t m) {
  constexpr std::size_t kBlocks = 8;
  const std::size_t block = bits.size() / kBlocks;
  if (block <= m || bits.size() < 100) return std::nullopt;
  const auto& templates = aperiodic_templates(m);
  const double md = static_cast<double>(block);
  const double two_m = std::ldexp(1.0, static_cast<int>(m));
  const double mu = (md - static_cast<double>(m) + 1.0) / two_m;
  const double var = md * (1.0 / two_m - (2.0 * static_cast<double>(m) - 1.0) / (two_m * two_m));

  const std::size_t windows = block - m + 1;
  const std::size_t values = std::size_t{1} << m;
  const std::uint32_t mask = static_cast<std::uint32_t>(values - 1);
  std::vector<std::vector<double>> hits(templates.size(), std::vector<double>(kBlocks, 0.0));
  std::vector<std::uint32_t> window(windows);
  std::vector<std::uint32_t> offset(values + 1);
  std::vector<std::uint32_t> positions(windows);
  for (std::size_t b = 0; b < kBlocks; ++b) {
    const std::size_t base = b * block;
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < m - 1; ++i) v = (v << 1) | bits[base + i];
    std::fill(offset.begin(), offset.end(), 0);
    for (std::size_t i = 0; i < windows; ++i) {
      v = ((v << 1) | bits[base + i + m - 1]) & mask;
      window[i] = v;
      ++offset[v + 1];
    }
    std::partial_sum(offset.begin(), offset.end(), offset.begin());
    // Bucket window start positions by value, ascending within each bucket.
    std::vector<std::uint32_t> fill(offset.begin(), offset.end() - 1);
    for (std::size_t i = 0; i < windows; ++i) positions[fill[window[i]]++] = static_cast<std::uint32_t>(i);
    for (std::size_t t = 0; t < templates.size(); ++t) {
      const std::uint32_t tv = templates[t];
      std::size_t next_free = 0;
      double count = 0.0;
      for (std::uint32_t p = offset[tv]; p < offset[tv + 1]; ++p) {
        if (positions[p] >= next_free) {
          count += 1.0;
          next_free = positions[p] + m;
        }
      }
      hits[t][b] = count;
    }
  }
  std::vector<double> p(templates.size());
  for (std::size_t t = 0; t < templates.size(); ++t) {
    double chi2 = 0.0;
    for (double w : hits[t]) chi2 += (w - mu) * (w - mu) / var;
    p[t] = clamp_p(igamc(kBlocks / 2.0, chi2 / 2.0));
  }
  return p;
}

std::vector<double> overlapping_match_probabilities(std::size_t m, std::size_t block, std::size_t k) {
  // State: trailing-ones run (capped at m) x matches so far (capped at k).
  std::vector<double> cur((m + 1) * (k + 1), 0.0);
  std::vector<double> nxt(cur.size());
  auto at = [k](std::size_t run, std::size_t c) { return run * (k + 1) + c; };
  cur[at(0, 0)] = 1.0;
  for (std::size_t step = 0; step < block; ++step) {
    std::fill(nxt.begin(), nxt.end(), 0.0);
    for (std::size_t run = 0; run <= m; ++run) {
      for (std::size_t c = 0; c <= k; ++c) {
        const double p = cur[at(run, c)];
        if (p == 0.0) continue;
        nxt[at(0, c)] += 0.5 * p;
        const std::size_t grown = std::min(run + 1, m);
        const std::size_t counted = run + 1 >= m ? std::min(c + 1, k) : c;
        nxt[at(grown, counted)] += 0.5 * p;
      }
    }
    cur.swap(nxt);
  }
  std::vector<double> pi(k + 1, 0.0);
  for (std::size_t run = 0; run <= m; ++run) {
    for (std::size_t c = 0; c <= k; ++c) pi[c] += cur[at(run, c)];
  }
  return pi;
}

TestOutcome overlapping_template(BitSpan bits, std::size_t m, std::size_t block) {
  constexpr std::size_t kClasses = 5;
  const std::size_t blocks = bits.size() / block;
  if (blocks < 1 || bits.size() < 10000) return std::nullopt;
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> cache;
  std::vector<double> pi;
  {
    std::lock_guard lock(mutex);
    auto& slot = cache[{m, block}];
    if (slot.empty()) slot = overlapping_match_probabilities(m, block, kClasses);
    pi = slot;
  }
  std::vector<double> nu(kClasses + 1, 0.0);
  for (std::size_t b = 0; b < blocks; ++b) {
    std::size_t run = 0;
    std::size_t matches = 0;
    for (std::size_t i = b * block; i < (b + 1) * block; ++i) {
      run = bits[i] ? run + 1 : 0;
      if (run >= m) ++matches;
    }
    nu[std::min(matches, kClasses)] += 1.0;
  }
  const double chi2 = chi_square(nu, pi, static_cast<double>(blocks));
  return single(igamc(kClasses / 2.0, chi2 / 2.0));
}

TestOutcome universal(BitSpan bits, std::size_t l, std::size_t q) {
  const std::size_t n = bits.size();
  if (n < kUniversalMinLength[6]) return std::nullopt;
  if (n < kUniversalMinLength[l]) {
    // Fall back to the largest block length this sequence supports.
    while (n < kUniversalMinLength[l]) --l;
    q = 10 * (std::size_t{1} << l);
  }
  const std::size_t total_blocks = n / l;
  if (total_blocks <= q) return std::nullopt;
  const std::size_t k = total_blocks - q;
  std::vector<std::size_t> last(std::size_t{1} << l, 0);
  auto block_value = [&](std::size_t i) {
    std::size_t v = 0;
    for (std::size_t j = 0; j < l; ++j) v = (v << 1) | bits[i * l + j];
    return v;
  };
  for (std::size_t i = 1; i <= q; ++i) last[block_value(i - 1)] = i;
  double sum = 0.0;
  for (std::size_t i = q + 1; i <= q + k; ++i) {
    const std::size_t v = block_value(i - 1);
    sum += std::log2(static_cast<double>(i - last[v]));
    last[v] = i;
  }
  const double kd = static_cast<double>(k);
  const double ld = static_cast<double>(l);
  const double fn = sum / kd;
  const double c = 0.7 - 0.8 / ld + (4.0 + 32.0 / ld) * std::pow(kd, -3.0 / ld) / 15.0;
  const double sigma = c * std::sqrt(kUniversalVariance[l] / kd);
  return single(erfc(std::abs(fn - kUniversalExpected[l]) / (std::numbers::sqrt2 * sigma)));
}

std::size_t berlekamp_massey(BitSpan bits) {
  const std::size_t n = bits.size();
  const std::size_t words = n / 64 + 2;
  // c, b: connection polynomials; window[i] = s[N - i] for the current N.
  std::vector<std::uint64_t> c(words, 0), b(words, 0), window(words, 0), tmp;
  c[0] = b[0] = 1;
  std::size_t length = 0;
  std::ptrdiff_t last = -1;
  for (std::size_t pos = 0; pos < n; ++pos) {
    shift_up_one(window);
    window[0] |= bits[pos];
    std::uint64_t acc = 0;
    const std::size_t used = std::min(words, pos / 64 + 1);
    for (std::size_t w = 0; w < used; ++w) acc ^= c[w] & window[w];
    if (!(std::popcount(acc) & 1)) continue;
    tmp = c;
    xor_shifted(c, b, static_cast<std::size_t>(static_cast<std::ptrdiff_t>(pos) - last));
    if (2 * length <= pos) {
      length = pos + 1 - length;
      last = static_cast<std::ptrdiff_t>(pos);
      b.swap(tmp);
    }
  }
  return length;
}

TestOutcome linear_complexity(BitSpan bits, std::size_t block) {
  constexpr std::size_t kClasses = 6;
  const std::size_t blocks = bits.size() / block;
  if (blocks < 200) return std::nullopt;
  static constexpr std::array<double, kClasses + 1> kPi = {0.010417, 0.03125, 0.125, 0.5,
                                                          0.25,     0.0625,  0.020833};
  const double md = static_cast<double>(block);
  const double sign = (block % 2 == 0) ? 1.0 : -1.0;  // (-1)^M
  const double mu = md / 2.0 + (9.0 - sign) / 36.0 - (md / 3.0 + 2.0 / 9.0) / std::pow(2.0, md);
  std::array<double, kClasses + 1> nu{};
  for (std::size_t b = 0; b < blocks; ++b) {
    const auto l = static_cast<double>(berlekamp_massey(bits.subspan(b * block, block)));
    const double t = sign * (l - mu) + 2.0 / 9.0;
    std::size_t cls;
    if (t <= -2.5) cls = 0;
    else if (t <= -1.5) cls = 1;
    else if (t <= -0.5) cls = 2;
    else if (t <= 0.5) cls = 3;
    else if (t <= 1.5) cls = 4;
    else if (t <= 2.5) cls = 5;
    else cls = 6;
    nu[cls] += 1.0;
  }
  const double chi2 = chi_square(nu, kPi, static_cast<double>(blocks));
  return single(igamc(kClasses / 2.0, chi2 / 2.0));
}

namespace {

double psi_squared(BitSpan bits, std::size_t m) {
  if (m == 0) return 0.0;
  const auto counts = wrapped_window_counts(bits, m);
  double sum = 0.0;
  for (std::uint32_t c : counts) sum += static_cast<double>(c) * c;
  const double n = static_cast<double>(bits.size());
  return std::ldexp(1.0, static_cast<int>(m)) / n * sum - n;
}

double phi(BitSpan bits, std::size_t m) {
  if (m == 0) return 0.0;
  const auto counts = wrapped_window_counts(bits, m);
  const double n = static_cast<double>(bits.size());
  double sum = 0.0;
  for (std::uint32_t c : counts) {
    if (c) sum += (c / n) * std::log(c / n);
  }
  return sum;
}

}  // namespace

TestOutcome serial(BitSpan bits, std::size_t m) {
  const std::size_t n = bits.size();
  if (n < 16 || m + 2 >= floor_log2(n)) return std::nullopt;
  const double p0 = psi_squared(bits, m);
  const double p1 = psi_squared(bits, m - 1);
  const double p2 = psi_squared(bits, m - 2);
  const double del1 = p0 - p1;
  const double del2 = p0 - 2.0 * p1 + p2;
  const double a1 = std::ldexp(1.0, static_cast<int>(m) - 2);
  const double a2 = std::ldexp(1.0, static_cast<int>(m) - 3);
  return std::vector<double>{clamp_p(igamc(a1, std::max(0.0, del1) / 2.0)),
                             clamp_p(igamc(a2, std::max(0.0, del2) / 2.0))};
}

TestOutcome approximate_entropy(BitSpan bits, std::size_t m) {
  const std::size_t n = bits.size();
  if (n < 64 || m + 5 >= floor_log2(n)) return std::nullopt;
  const double ap_en = phi(bits, m) - phi(bits, m + 1);
  const double chi2 = 2.0 * static_cast<double>(n) * (std::log(2.0) - ap_en);
  return single(igamc(std::ldexp(1.0, static_cast<int>(m) - 1), std::max(0.0, chi2) / 2.0));
}

namespace {

double cusum_p(long n, long z) {
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double zd = static_cast<double>(z);
  double sum1 = 0.0;
  for (long k = (-n / z + 1) / 4; k <= (n / z - 1) / 4; ++k) {
    sum1 += normal_cdf((4.0 * k + 1.0) * zd / sqrt_n) - normal_cdf((4.0 * k - 1.0) * zd / sqrt_n);
  }
  double sum2 = 0.0;
  for (long k = (-n / z - 3) / 4; k <= (n / z - 1) / 4; ++k) {
    sum2 += normal_cdf((4.0 * k + 3.0) * zd / sqrt_n) - normal_cdf((4.0 * k + 1.0) * zd / sqrt_n);
  }
  return clamp_p(1.0 - sum1 + sum2);
}

}  // namespace

TestOutcome cumulative_sums(BitSpan bits) {
  const auto n = static_cast<long>(bits.size());
  if (n == 0) return std::nullopt;
  long s = 0;
  long forward = 0;
  for (std::uint8_t b : bits) {
    s += b ? 1 : -1;
    forward = std::max(forward, std::abs(s));
  }
  long backward = 0;
  s = 0;
  for (auto it = bits.rbegin(); it != bits.rend(); ++it) {
    s += *it ? 1 : -1;
    backward = std::max(backward, std::abs(s));
  }
  return std::vector<double>{cusum_p(n, forward), cusum_p(n, backward)};
}

TestOutcome random_excursions(BitSpan bits) {
  const Walk walk = random_walk(bits);
  if (!excursions_applicable(walk, bits.size())) return std::nullopt;
  constexpr std::array<int, 8> kStates = {-4, -3, -2, -1, 1, 2, 3, 4};
  // nu[state][visits capped at 5]
  std::array<std::array<double, 6>, 8> nu{};
  std::size_t begin = 0;
  for (std::size_t end : walk.ends) {
    std::array<int, 9> visits{};
    for (std::size_t i = begin; i < end; ++i) {
      const int v = walk.sums[i];
      if (v != 0 && std::abs(v) <= 4) ++visits[static_cast<std::size_t>(v + 4)];
    }
    for (std::size_t s = 0; s < kStates.size(); ++s) {
      const int v = visits[static_cast<std::size_t>(kStates[s] + 4)];
      nu[s][static_cast<std::size_t>(std::min(v, 5))] += 1.0;
    }
    begin = end;
  }
  const double j = static_cast<double>(walk.ends.size());
  std::vector<double> p(kStates.size());
  for (std::size_t s = 0; s < kStates.size(); ++s) {
    const auto pi = excursion_probabilities(kStates[s]);
    const double chi2 = chi_square(nu[s], pi, j);
    p[s] = clamp_p(igamc(2.5, chi2 / 2.0));
  }
  return p;
}

TestOutcome random_excursions_variant(BitSpan bits) {
  const Walk walk = random_walk(bits);
  if (!excursions_applicable(walk, bits.size())) return std::nullopt;
  std::array<double, 19> xi{};
  for (int v : walk.sums) {
    if (v != 0 && std::abs(v) <= 9) xi[static_cast<std::size_t>(v + 9)] += 1.0;
  }
  const double j = static_cast<double>(walk.ends.size());
  std::vector<double> p;
  for (int x = -9; x <= 9; ++x) {
    if (x == 0) continue;
    const double denom = std::sqrt(2.0 * j * (4.0 * std::abs(x) - 2.0));
    p.push_back(clamp_p(erfc(std::abs(xi[static_cast<std::size_t>(x + 9)] - j) / denom)));
  }
  return p;
}

TestOutcome run_single_test(TestId id, BitSpan bits, const SuiteConfig& cfg) {
  switch (id) {
    case TestId::kFrequency: return frequency(bits);
    case TestId::kBlockFrequency: return block_frequency(bits, cfg.block_frequency_m);
    case TestId::kRuns: return runs(bits);
    case TestId::kLongestRun: return longest_run(bits);
    case TestId::kRank: return rank(bits);
    case TestId::kFft: return spectral(bits);
    case TestId::kNonOverlappingTemplate: return non_overlapping_template(bits, cfg.non_overlapping_m);
    case TestId::kOverlappingTemplate:
      return overlapping_template(bits, cfg.overlapping_m, cfg.overlapping_block);
    case TestId::kUniversal: return universal(bits, cfg.universal_l, cfg.universal_q);
    case TestId::kLinearComplexity: return linear_complexity(bits, cfg.linear_complexity_m);
    case TestId::kSerial: return serial(bits, cfg.serial_m);
    case TestId::kApproximateEntropy: return approximate_entropy(bits, cfg.approximate_entropy_m);
    case TestId::kCumulativeSums: return cumulative_sums(bits);
    case TestId::kRandomExcursions: return random_excursions(bits);
    case TestId::kRandomExcursionsVariant: return random_excursions_variant(bits);
  }
  throw ValidationError("unknown test id");
}

std::vector<std::string> subtest_labels(TestId id, const SuiteConfig& cfg) {
  switch (id) {
    case TestId::kNonOverlappingTemplate: {
      std::vector<std::string> out;
      const std::size_t m = cfg.non_overlapping_m;
      for (std::uint32_t t : aperiodic_templates(m)) {
        std::string label;
        for (std::size_t b = m; b-- > 0;) label.push_back(((t >> b) & 1) ? '1' : '0');
        out.push_back(std::move(label));
      }
      return out;
    }
    case TestId::kSerial: return {"1", "2"};
    case TestId::kCumulativeSums: return {"forward", "backward"};
    case TestId::kRandomExcursions: return {"-4", "-3", "-2", "-1", "+1", "+2", "+3", "+4"};
    case TestId::kRandomExcursionsVariant: {
      std::vector<std::string> out;
      for (int x = -9; x <= 9; ++x) {
        if (x != 0) out.push_back((x > 0 ? "+" : "") + std::to_string(x));
      }
      return out;
    }
    default: return {std::string(test_key(id))};
  }
}

}  // namespace mtjrng::nist
