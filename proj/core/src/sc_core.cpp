// Copyright 2026 The ARSC Simulator Authors
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

#include "arsc/sc_core.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>
#include <string>
#include <utility>

namespace arsc {
namespace {

// Maximal-length Fibonacci taps, indexed by width - kMinLfsrWidth.
constexpr std::array<std::array<int, 4>, 14> kTapTable = {{
    {3, 2, 0, 0},      // 3
    {4, 3, 0, 0},      // 4
    {5, 3, 0, 0},      // 5
    {6, 5, 0, 0},      // 6
    {7, 6, 0, 0},      // 7
    {8, 6, 5, 4},      // 8
    {9, 5, 0, 0},      // 9
    {10, 7, 0, 0},     // 10
    {11, 9, 0, 0},     // 11
    {12, 6, 4, 1},     // 12
    {13, 4, 3, 1},     // 13
    {14, 5, 3, 1},     // 14
    {15, 14, 0, 0},    // 15
    {16, 15, 13, 4},   // 16
}};

constexpr std::array<std::size_t, 14> kTapCount = {2, 2, 2, 2, 2, 4, 2,
                                                   2, 2, 4, 4, 4, 2, 4};

void require_same_length(const BitStream& a, const BitStream& b,
                         const char* op) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(op) + ": stream length mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
}

void require_power_of_two(std::size_t length, const char* op) {
  if (length < 2 || !std::has_single_bit(length)) {
    throw std::invalid_argument(std::string(op) +
                                ": stream length must be a power of two >= 2, got " +
                                std::to_string(length));
  }
}

}  // namespace

BitStream::BitStream(std::vector<std::uint8_t> bits, Polarity polarity)
    : bits_(std::move(bits)), polarity_(polarity) {
  require_power_of_two(bits_.size(), "BitStream");
  for (auto& b : bits_) {
    if (b > 1) throw std::invalid_argument("BitStream: bits must be 0 or 1");
  }
}

BitStream BitStream::zeros(std::size_t length, Polarity polarity) {
  return BitStream(std::vector<std::uint8_t>(length, 0), polarity);
}

BitStream BitStream::ones(std::size_t length, Polarity polarity) {
  return BitStream(std::vector<std::uint8_t>(length, 1), polarity);
}

std::size_t BitStream::popcount() const noexcept {
  std::size_t n = 0;
  for (auto b : bits_) n += b;
  return n;
}

double BitStream::value() const noexcept {
  const double len = static_cast<double>(bits_.size());
  const double ones = static_cast<double>(popcount());
  return polarity_ == Polarity::kUnipolar ? ones / len : (2.0 * ones - len) / len;
}

BitStream BitStream::as(Polarity polarity) const {
  return BitStream(bits_, polarity);
}

UnsignedFixed::UnsignedFixed(int width, std::uint32_t raw) : width_(width), raw_(raw) {
  if (width < 1 || width > kMaxWidth) {
    throw std::invalid_argument("UnsignedFixed: width out of range: " +
                                std::to_string(width));
  }
  if (raw > scale()) {
    throw std::invalid_argument("UnsignedFixed: raw " + std::to_string(raw) +
                                " exceeds 2^" + std::to_string(width));
  }
}

std::span<const int> maximal_taps(int width) {
  if (width < kMinLfsrWidth || width > kMaxLfsrWidth) {
    throw std::invalid_argument("no bundled LFSR taps for width " +
                                std::to_string(width));
  }
  const auto idx = static_cast<std::size_t>(width - kMinLfsrWidth);
  return {kTapTable[idx].data(), kTapCount[idx]};
}

LfsrConfig LfsrConfig::maximal(int width, std::uint32_t seed) {
  auto taps = maximal_taps(width);
  return LfsrConfig{width, std::vector<int>(taps.begin(), taps.end()), seed};
}

std::uint32_t lfsr_step(std::uint32_t state, const LfsrConfig& cfg) {
  if (cfg.width < 2 || cfg.width > 31) {
    throw std::invalid_argument("lfsr_step: unsupported width");
  }
  const std::uint32_t mask = (std::uint32_t{1} << cfg.width) - 1;
  if (state == 0) throw std::invalid_argument("lfsr_step: zero state locks the LFSR");
  if (state > mask) throw std::invalid_argument("lfsr_step: state wider than the register");

  std::uint32_t feedback = 0;
  for (int t : cfg.taps) feedback ^= (state >> (t - 1)) & 1u;
  return ((state << 1) | feedback) & mask;
}

BitStream sng_conventional(const UnsignedFixed& x, std::size_t length,
                           const LfsrConfig& cfg) {
  require_power_of_two(length, "sng_conventional");
  if (x.width() != cfg.width) {
    throw std::invalid_argument("sng_conventional: operand width " +
                                std::to_string(x.width()) + " != LFSR width " +
                                std::to_string(cfg.width));
  }
  std::vector<std::uint8_t> bits(length);
  std::uint32_t state = cfg.seed;
  for (std::size_t i = 0; i < length; ++i) {
    bits[i] = state < x.raw() ? 1 : 0;
    state = lfsr_step(state, cfg);
  }
  return BitStream(std::move(bits));
}

int deterministic_bit(const UnsignedFixed& x, std::uint64_t cycle) {
  const int tz = std::countr_zero(cycle);
  if (tz >= x.width()) return 0;
  return x.bit(x.width() - 1 - tz);
}

BitStream sng_deterministic(const UnsignedFixed& x) {
  if (!x.is_proper()) {
    throw std::invalid_argument("sng_deterministic: operand must be below 1.0");
  }
  const std::size_t length = x.scale();
  std::vector<std::uint8_t> bits(length);
  for (std::size_t c = 1; c <= length; ++c) {
    bits[c - 1] = static_cast<std::uint8_t>(deterministic_bit(x, c));
  }
  return BitStream(std::move(bits));
}

BitStream unary_gen(std::uint64_t w_s, std::size_t length) {
  if (w_s > length) {
    throw std::invalid_argument("unary_gen: w_s " + std::to_string(w_s) +
                                " exceeds length " + std::to_string(length));
  }
  std::vector<std::uint8_t> bits(length, 0);
  std::fill_n(bits.begin(), w_s, std::uint8_t{1});
  return BitStream(std::move(bits));
}

BitStream and_multiply(const BitStream& a, const BitStream& b) {
  require_same_length(a, b, "and_multiply");
  if (a.polarity() != Polarity::kUnipolar || b.polarity() != Polarity::kUnipolar) {
    throw std::invalid_argument("and_multiply: operands must be unipolar");
  }
  std::vector<std::uint8_t> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.bits()[i] & b.bits()[i];
  return BitStream(std::move(out));
}

BitStream xnor_multiply(const BitStream& a, const BitStream& b) {
  require_same_length(a, b, "xnor_multiply");
  if (a.polarity() != Polarity::kBipolar || b.polarity() != Polarity::kBipolar) {
    throw std::invalid_argument("xnor_multiply: operands must be bipolar");
  }
  std::vector<std::uint8_t> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(1u ^ (a.bits()[i] ^ b.bits()[i]));
  }
  return BitStream(std::move(out), Polarity::kBipolar);
}

BitStream mux_add(const BitStream& a, const BitStream& b, const BitStream& select) {
  require_same_length(a, b, "mux_add");
  require_same_length(a, select, "mux_add");
  if (a.polarity() != b.polarity()) {
    throw std::invalid_argument("mux_add: operand polarity mismatch");
  }
  std::vector<std::uint8_t> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = select.bits()[i] ? b.bits()[i] : a.bits()[i];
  }
  return BitStream(std::move(out), a.polarity());
}

std::int64_t stream_to_binary(const BitStream& s) noexcept {
  const auto ones = static_cast<std::int64_t>(s.popcount());
  if (s.polarity() == Polarity::kUnipolar) return ones;
  return ones - (static_cast<std::int64_t>(s.size()) - ones);
}

CbscProduct cbsc_multiply(const UnsignedFixed& x, std::uint64_t w_s) {
  if (!x.is_proper()) {
    throw std::invalid_argument("cbsc_multiply: operand must be below 1.0");
  }
  if (w_s > x.scale()) {
    throw std::invalid_argument("cbsc_multiply: w_s " + std::to_string(w_s) +
                                " exceeds 2^" + std::to_string(x.width()));
  }
  // Bit x_{n-i} fires on cycles 2^{i-1} + k*2^i, so within the first w_s
  // cycles it fires floor((w_s + 2^{i-1}) / 2^i) times.
  const int n = x.width();
  std::uint64_t up = 0;
  for (int i = 1; i <= n; ++i) {
    if (x.bit(n - i) == 0) continue;
    up += (w_s + (std::uint64_t{1} << (i - 1))) >> i;
  }
  return {up, w_s};
}

std::uint64_t lfsr_multiply(const UnsignedFixed& x, const UnsignedFixed& w,
                            const LfsrConfig& x_cfg, const LfsrConfig& w_cfg) {
  if (x.width() != w.width()) {
    throw std::invalid_argument("lfsr_multiply: operand width mismatch");
  }
  const std::size_t length = x.scale();
  return static_cast<std::uint64_t>(stream_to_binary(
      and_multiply(sng_conventional(x, length, x_cfg),
                   sng_conventional(w, length, w_cfg))));
}

}  // namespace arsc
