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

#ifndef ARSC_ARSC_MAC_HPP
#define ARSC_ARSC_MAC_HPP

// Accuracy-reconfigurable multiply-accumulate.
//
// Data is sign-magnitude. A run-time select code picks the active
// magnitude width b in {10, 9, 8, 7, 6}; inputs are truncated to b bits,
// multiplied by a counter-based SC multiplier (sign = XOR of the operand
// signs), summed in an exact wide accumulator and finally restored to the
// m-bit interface width by appending zeros.

#include <cstdint>
#include <span>

#include "arsc/sc_core.hpp"

namespace arsc {

inline constexpr int kDefaultDataWidth = 10;

struct SignMagnitude {
  bool negative = false;
  UnsignedFixed mag{kDefaultDataWidth, 0};

  SignMagnitude() = default;
  SignMagnitude(bool negative_, UnsignedFixed mag_) : negative(negative_), mag(mag_) {}

  int width() const noexcept { return mag.width(); }
  double value() const noexcept { return negative ? -mag.value() : mag.value(); }
  /// Signed raw integer (scale 2^width).
  std::int64_t signed_raw() const noexcept {
    return negative ? -static_cast<std::int64_t>(mag.raw()) : mag.raw();
  }

  /// Round-to-nearest (ties away from zero) quantization of v. |v| must not
  /// exceed 1.0; the result may carry raw == 2^width when |v| rounds to 1.
  static SignMagnitude from_real(double v, int width);
  /// Sign-magnitude form of a signed raw integer with |raw| <= 2^width.
  static SignMagnitude from_signed_raw(std::int64_t raw, int width);

  /// -0 and +0 compare equal.
  friend bool operator==(const SignMagnitude& a, const SignMagnitude& b) noexcept {
    return a.mag == b.mag && (a.negative == b.negative || a.mag.raw() == 0);
  }
};

/// Run-time SEL code. Code 0 is 10 bits, code 4 is 6 bits.
class AccuracySelect {
 public:
  static constexpr int kMaxBitwidth = 10;
  static constexpr int kMinBitwidth = 6;
  static constexpr int kCodeCount = kMaxBitwidth - kMinBitwidth + 1;
  static constexpr int kSignalBits = 3;

  explicit AccuracySelect(int code);
  static AccuracySelect from_bitwidth(int bits);

  int code() const noexcept { return code_; }
  int bitwidth() const noexcept { return kMaxBitwidth - code_; }

  bool operator==(const AccuracySelect&) const = default;

 private:
  int code_;
};

struct MacResult {
  SignMagnitude value;
  std::uint64_t cycles_data = 0;   // sum of down-counter loads actually spent
  std::uint64_t cycles_fixed = 0;  // N_terms * 2^b
  bool clamped = false;
};

struct SignedProduct {
  std::int64_t value = 0;  // scale 2^b, in [-2^b, 2^b]
  std::uint64_t cycles = 0;
};

SignMagnitude truncate(const SignMagnitude& x, AccuracySelect sel);
SignMagnitude truncate(const SignMagnitude& x, int bits);
SignMagnitude restore_width(const SignMagnitude& p, int width);

/// Sign via XOR, magnitude via cbsc_multiply(x.mag, c.mag.raw). A zero
/// magnitude on either side costs no cycles.
SignedProduct signed_product(const SignMagnitude& x, const SignMagnitude& c);

/// Accumulator rescaling applied before clamping. Positive values divide
/// the sum by 2^shift (magnitude truncation), negative values multiply.
struct MacScaling {
  int shift = 0;
};

/// MAC with coefficients already quantized at the active width.
MacResult mac(std::span<const SignMagnitude> xs, std::span<const SignMagnitude> cs,
              AccuracySelect sel, MacScaling scaling = {});

/// MAC with real coefficients, quantized round-to-nearest at the active
/// width.
MacResult mac(std::span<const SignMagnitude> xs, std::span<const double> cs,
              AccuracySelect sel, MacScaling scaling = {});

}  // namespace arsc

#endif  // ARSC_ARSC_MAC_HPP
