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

#ifndef ARSC_SC_CORE_HPP
#define ARSC_SC_CORE_HPP

// Bit-exact stochastic computing primitives.
//
// Two families live here:
//   * conventional SC: LFSR + comparator number generation, AND/XNOR
//     multiplication, MUX addition and counter readout;
//   * counter-based SC: a deterministic stream generator whose popcount is
//     exact, gated by a unary (thermometer) weight stream and read out by an
//     up-counter.
//
// Streams are stored 0-indexed. Documentation talks about cycles 1..2^n
// because the bit placement rule is naturally stated that way: cycle c
// carries input bit x_{n-1-ctz(c)}, and the final cycle (ctz(c) == n)
// always carries 0.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace arsc {

enum class Polarity { kUnipolar, kBipolar };

/// Ordered binary sequence whose length is a power of two (>= 2).
class BitStream {
 public:
  explicit BitStream(std::vector<std::uint8_t> bits,
                     Polarity polarity = Polarity::kUnipolar);

  static BitStream zeros(std::size_t length,
                         Polarity polarity = Polarity::kUnipolar);
  static BitStream ones(std::size_t length,
                        Polarity polarity = Polarity::kUnipolar);

  std::size_t size() const noexcept { return bits_.size(); }
  Polarity polarity() const noexcept { return polarity_; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }

  std::size_t popcount() const noexcept;

  /// popcount/length (unipolar) or (2*popcount - length)/length (bipolar).
  double value() const noexcept;

  /// Same bits, reinterpreted under another encoding.
  BitStream as(Polarity polarity) const;

  bool operator==(const BitStream&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
  Polarity polarity_;
};

/// n-bit unsigned fixed-point magnitude, value raw / 2^n.
///
/// raw == 2^n is representable so that a scaled weight of exactly 1.0 can
/// be expressed; plain multiplier operands must satisfy raw < 2^n
/// (see is_proper()).
class UnsignedFixed {
 public:
  static constexpr int kMaxWidth = 30;

  UnsignedFixed(int width, std::uint32_t raw);

  int width() const noexcept { return width_; }
  std::uint32_t raw() const noexcept { return raw_; }
  std::uint32_t scale() const noexcept { return std::uint32_t{1} << width_; }
  bool is_proper() const noexcept { return raw_ < scale(); }
  double value() const noexcept {
    return static_cast<double>(raw_) / static_cast<double>(scale());
  }

  /// Bit x_k of the magnitude, k in [0, width).
  int bit(int k) const noexcept { return static_cast<int>((raw_ >> k) & 1u); }

  bool operator==(const UnsignedFixed&) const = default;

 private:
  int width_;
  std::uint32_t raw_;
};

/// Fibonacci LFSR description. Taps are 1-based positions in the
/// x^width + ... + 1 feedback polynomial; tap t reads state bit t-1.
struct LfsrConfig {
  int width = 0;
  std::vector<int> taps;
  std::uint32_t seed = 1;

  /// Maximal-length configuration from the bundled tap table (widths 3..16).
  static LfsrConfig maximal(int width, std::uint32_t seed = 1);

  std::uint32_t period() const noexcept { return (std::uint32_t{1} << width) - 1; }
};

inline constexpr int kMinLfsrWidth = 3;
inline constexpr int kMaxLfsrWidth = 16;

/// Feedback taps for the maximal-length polynomial of the given width.
std::span<const int> maximal_taps(int width);

/// One shift of the LFSR. Throws on the all-zero lock-up state.
std::uint32_t lfsr_step(std::uint32_t state, const LfsrConfig& cfg);

/// LFSR + comparator SNG: bit i is 1 iff the i-th LFSR state (state_0 is the
/// seed) is below x.raw.
BitStream sng_conventional(const UnsignedFixed& x, std::size_t length,
                           const LfsrConfig& cfg);

/// Deterministic SNG of length 2^n with popcount exactly x.raw.
BitStream sng_deterministic(const UnsignedFixed& x);

/// Output bit of the deterministic SNG at 1-indexed cycle c in [1, 2^n].
int deterministic_bit(const UnsignedFixed& x, std::uint64_t cycle);

/// Unary number generator: w_s ones followed by zeros.
BitStream unary_gen(std::uint64_t w_s, std::size_t length);

BitStream and_multiply(const BitStream& a, const BitStream& b);
BitStream xnor_multiply(const BitStream& a, const BitStream& b);

/// MUX scaled addition: picks a where select is 0 and b where it is 1.
BitStream mux_add(const BitStream& a, const BitStream& b,
                  const BitStream& select);

/// Counter readout: popcount (unipolar) or ones minus zeros (bipolar).
std::int64_t stream_to_binary(const BitStream& s) noexcept;

struct CbscProduct {
  std::uint64_t product = 0;  // scale 2^n
  std::uint64_t cycles = 0;   // down-counter steps, equal to w_s

  bool operator==(const CbscProduct&) const = default;
};

/// Counter-based SC multiply of x by w_s / 2^n.
///
/// The down-counter is loaded with w_s; while it is nonzero the up-counter
/// accumulates the deterministic stream of x. The result is therefore the
/// number of ones in the first w_s bits of sng_deterministic(x).
CbscProduct cbsc_multiply(const UnsignedFixed& x, std::uint64_t w_s);

/// Conventional LFSR-based unipolar multiply of two n-bit operands over a
/// 2^n stream. Returns the popcount of AND(sng(x), sng(w)).
std::uint64_t lfsr_multiply(const UnsignedFixed& x, const UnsignedFixed& w,
                            const LfsrConfig& x_cfg, const LfsrConfig& w_cfg);

}  // namespace arsc

#endif  // ARSC_SC_CORE_HPP
