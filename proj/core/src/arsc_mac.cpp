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

#include "arsc/arsc_mac.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace arsc {

SignMagnitude SignMagnitude::from_real(double v, int width) {
  const double mag = std::fabs(v);
  if (!(mag <= 1.0)) {
    throw std::invalid_argument("SignMagnitude::from_real: |v| > 1");
  }
  // std::round rounds halfway cases away from zero.
  const auto raw = static_cast<std::uint32_t>(std::round(std::ldexp(mag, width)));
  return SignMagnitude(v < 0.0, UnsignedFixed(width, raw));
}

SignMagnitude SignMagnitude::from_signed_raw(std::int64_t raw, int width) {
  const auto mag = static_cast<std::uint64_t>(raw < 0 ? -raw : raw);
  if (mag > (std::uint64_t{1} << width)) {
    throw std::invalid_argument("SignMagnitude::from_signed_raw: magnitude overflow");
  }
  return SignMagnitude(raw < 0, UnsignedFixed(width, static_cast<std::uint32_t>(mag)));
}

AccuracySelect::AccuracySelect(int code) : code_(code) {
  if (code < 0 || code >= kCodeCount) {
    throw std::invalid_argument("AccuracySelect: code must be in 0..4, got " +
                                std::to_string(code));
  }
}

AccuracySelect AccuracySelect::from_bitwidth(int bits) {
  if (bits < kMinBitwidth || bits > kMaxBitwidth) {
    throw std::invalid_argument("AccuracySelect: bit-width must be in 6..10, got " +
                                std::to_string(bits));
  }
  return AccuracySelect(kMaxBitwidth - bits);
}

SignMagnitude truncate(const SignMagnitude& x, int bits) {
  const int m = x.width();
  if (bits > m) {
    throw std::invalid_argument("truncate: target width " + std::to_string(bits) +
                                " exceeds operand width " + std::to_string(m));
  }
  return SignMagnitude(x.negative, UnsignedFixed(bits, x.mag.raw() >> (m - bits)));
}

SignMagnitude truncate(const SignMagnitude& x, AccuracySelect sel) {
  return truncate(x, sel.bitwidth());
}

SignMagnitude restore_width(const SignMagnitude& p, int width) {
  const int b = p.width();
  if (b > width) {
    throw std::invalid_argument("restore_width: operand width " + std::to_string(b) +
                                " exceeds target " + std::to_string(width));
  }
  return SignMagnitude(p.negative, UnsignedFixed(width, p.mag.raw() << (width - b)));
}

SignedProduct signed_product(const SignMagnitude& x, const SignMagnitude& c) {
  if (x.width() != c.width()) {
    throw std::invalid_argument("signed_product: width mismatch (" +
                                std::to_string(x.width()) + " vs " +
                                std::to_string(c.width()) + ")");
  }
  if (x.mag.raw() == 0 || c.mag.raw() == 0) return {};
  const auto p = cbsc_multiply(x.mag, c.mag.raw());
  const bool negative = x.negative != c.negative;
  const auto mag = static_cast<std::int64_t>(p.product);
  return {negative ? -mag : mag, p.cycles};
}

MacResult mac(std::span<const SignMagnitude> xs, std::span<const SignMagnitude> cs,
              AccuracySelect sel, MacScaling scaling) {
  if (xs.empty()) throw std::invalid_argument("mac: empty term list");
  if (xs.size() != cs.size()) {
    throw std::invalid_argument("mac: " + std::to_string(xs.size()) + " inputs vs " +
                                std::to_string(cs.size()) + " coefficients");
  }
  const int b = sel.bitwidth();
  const int m = xs.front().width();

  MacResult result;
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].width() != m) throw std::invalid_argument("mac: mixed input widths");
    if (cs[i].width() != b) {
      throw std::invalid_argument("mac: coefficient width " +
                                  std::to_string(cs[i].width()) +
                                  " does not match the active width " +
                                  std::to_string(b));
    }
    const auto p = signed_product(truncate(xs[i], b), cs[i]);
    acc += p.value;
    result.cycles_data += p.cycles;
  }
  result.cycles_fixed = static_cast<std::uint64_t>(xs.size()) << b;

  std::uint64_t mag = static_cast<std::uint64_t>(std::llabs(acc));
  if (scaling.shift > 0) {
    mag >>= scaling.shift;
  } else if (scaling.shift < 0) {
    mag <<= -scaling.shift;
  }
  const std::uint64_t limit = (std::uint64_t{1} << b) - 1;
  if (mag > limit) {
    mag = limit;
    result.clamped = true;
  }
  const SignMagnitude narrow(acc < 0 && mag != 0,
                             UnsignedFixed(b, static_cast<std::uint32_t>(mag)));
  result.value = restore_width(narrow, m);
  return result;
}

MacResult mac(std::span<const SignMagnitude> xs, std::span<const double> cs,
              AccuracySelect sel, MacScaling scaling) {
  std::vector<SignMagnitude> quantized;
  quantized.reserve(cs.size());
  for (double c : cs) quantized.push_back(SignMagnitude::from_real(c, sel.bitwidth()));
  return mac(xs, quantized, sel, scaling);
}

}  // namespace arsc
