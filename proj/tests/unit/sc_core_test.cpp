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


#include <gtest/gtest.h>

#include <random>
#include <set>

#include "arsc/sc_core.hpp"
#include "oracles.hpp"

namespace arsc {
namespace {

std::vector<std::uint8_t> bits(std::initializer_list<int> v) {
  return std::vector<std::uint8_t>(v.begin(), v.end());
}

TEST(Lfsr, Width3WalksTheHandEnumeratedCycle) {
  const LfsrConfig cfg{3, {3, 2}, 1};
  const std::vector<std::uint32_t> expected = {1, 2, 5, 3, 7, 6, 4, 1};
  std::uint32_t s = 1;
  for (std::size_t i = 1; i < expected.size(); ++i) {
    s = lfsr_step(s, cfg);
    EXPECT_EQ(s, expected[i]) << "step " << i;
  }
}

TEST(Lfsr, ZeroStateIsRejected) {
  EXPECT_THROW(lfsr_step(0, LfsrConfig::maximal(5)), std::invalid_argument);
}

TEST(Lfsr, BundledTapsAreMaximalForEveryWidth) {
  for (int w = kMinLfsrWidth; w <= kMaxLfsrWidth; ++w) {
    const auto cfg = LfsrConfig::maximal(w);
    std::vector<bool> seen(std::size_t{1} << w, false);
    std::uint32_t s = 1;
    std::uint32_t steps = 0;
    do {
      ASSERT_FALSE(seen[s]) << "width " << w << " revisits " << s;
      seen[s] = true;
      const auto next = lfsr_step(s, cfg);
      ASSERT_EQ(next, oracle::fibonacci_next(s, w, cfg.taps)) << "width " << w;
      s = next;
      ++steps;
    } while (s != 1);
    EXPECT_EQ(steps, cfg.period()) << "width " << w;
  }
}

TEST(Lfsr, UnsupportedWidthThrows) {
  EXPECT_THROW(LfsrConfig::maximal(2), std::invalid_argument);
  EXPECT_THROW(LfsrConfig::maximal(17), std::invalid_argument);
}

TEST(SngConventional, ZeroInputGivesZeroStream) {
  const auto s = sng_conventional(UnsignedFixed(4, 0), 16, LfsrConfig::maximal(4, 3));
  EXPECT_EQ(s.popcount(), 0u);
}

TEST(SngConventional, MaxInputMissesExactlyOncePerPeriod) {
  const auto cfg = LfsrConfig::maximal(3, 1);
  const auto full = sng_conventional(UnsignedFixed(3, 7), 8, cfg);
  // States 1..7 then the seed again; only state 7 is not below 7.
  EXPECT_EQ(full.popcount(), 7u);
}

TEST(SngConventional, FixedSeedValueIsWithinOneLsb) {
  const auto s = sng_conventional(UnsignedFixed(3, 4), 8, LfsrConfig::maximal(3, 1));
  EXPECT_NEAR(s.value(), 0.5, 1.0 / 8 + 1e-12);
}

TEST(SngConventional, IsAPureFunction) {
  const auto cfg = LfsrConfig::maximal(8, 77);
  EXPECT_EQ(sng_conventional(UnsignedFixed(8, 100), 256, cfg),
            sng_conventional(UnsignedFixed(8, 100), 256, cfg));
}

TEST(SngDeterministic, FrozenExamples) {
  EXPECT_EQ(sng_deterministic(UnsignedFixed(3, 5)), BitStream(bits({1, 0, 1, 1, 1, 0, 1, 0})));
  EXPECT_EQ(sng_deterministic(UnsignedFixed(2, 3)), BitStream(bits({1, 1, 1, 0})));
  EXPECT_EQ(sng_deterministic(UnsignedFixed(4, 0)).popcount(), 0u);
}

TEST(SngDeterministic, MatchesPlacementRuleExhaustively) {
  for (int n = 1; n <= 10; ++n) {
    for (std::uint32_t x = 0; x < (1u << n); ++x) {
      const auto s = sng_deterministic(UnsignedFixed(n, x));
      const auto ref = oracle::placement_stream(x, n);
      ASSERT_EQ(s.popcount(), x);
      ASSERT_FALSE(s[s.size() - 1]);
      for (std::size_t c = 0; c < ref.size(); ++c) {
        ASSERT_EQ(static_cast<int>(s[c]), ref[c]) << "n=" << n << " x=" << x << " c=" << c + 1;
        ASSERT_EQ(deterministic_bit(UnsignedFixed(n, x), c + 1), ref[c]);
      }
    }
  }
}

TEST(SngDeterministic, RejectsUnitValue) {
  EXPECT_THROW(sng_deterministic(UnsignedFixed(3, 8)), std::invalid_argument);
}

TEST(UnaryGen, ThermometerCode) {
  EXPECT_EQ(unary_gen(3, 8), BitStream(bits({1, 1, 1, 0, 0, 0, 0, 0})));
  EXPECT_EQ(unary_gen(0, 8), BitStream::zeros(8));
  EXPECT_EQ(unary_gen(8, 8), BitStream::ones(8));
  EXPECT_THROW(unary_gen(9, 8), std::invalid_argument);
}

TEST(Gates, AndMultiply) {
  const BitStream a(bits({1, 0, 1, 0})), b(bits({1, 1, 0, 0}));
  EXPECT_EQ(and_multiply(a, b), BitStream(bits({1, 0, 0, 0})));
  EXPECT_EQ(and_multiply(a, BitStream::ones(4)), a);
  EXPECT_EQ(and_multiply(a, BitStream::zeros(4)), BitStream::zeros(4));
  EXPECT_THROW(and_multiply(a, BitStream::ones(8)), std::invalid_argument);
}

TEST(Gates, XnorMultiplyBipolar) {
  const BitStream a(bits({1, 1, 0, 0}), Polarity::kBipolar);
  const BitStream b(bits({1, 0, 1, 0}), Polarity::kBipolar);
  const auto p = xnor_multiply(a, b);
  EXPECT_EQ(p, BitStream(bits({1, 0, 0, 1}), Polarity::kBipolar));
  EXPECT_DOUBLE_EQ(p.value(), 0.0);
  EXPECT_DOUBLE_EQ(xnor_multiply(a, a).value(), 1.0);
  const BitStream na(bits({0, 0, 1, 1}), Polarity::kBipolar);
  EXPECT_DOUBLE_EQ(xnor_multiply(a, na).value(), -1.0);
}

TEST(Gates, MuxAdd) {
  const auto a = BitStream::ones(8), b = BitStream::zeros(8);
  EXPECT_EQ(mux_add(a, b, BitStream::zeros(8)), a);
  EXPECT_EQ(mux_add(a, b, BitStream::ones(8)), b);
  EXPECT_DOUBLE_EQ(mux_add(a, b, BitStream(bits({0, 1, 0, 1, 0, 1, 0, 1}))).value(), 0.5);
}

TEST(Gates, StreamToBinary) {
  EXPECT_EQ(stream_to_binary(BitStream(bits({1, 0, 1, 1}))), 3);
  EXPECT_EQ(stream_to_binary(BitStream(bits({1, 0, 1, 1}), Polarity::kBipolar)), 2);
  EXPECT_EQ(stream_to_binary(BitStream::zeros(4)), 0);
}

TEST(BitStream, RejectsNonPowerOfTwoLength) {
  EXPECT_THROW(BitStream(bits({1, 0, 1})), std::invalid_argument);
  EXPECT_THROW(BitStream(bits({1})), std::invalid_argument);
}

TEST(Cbsc, FrozenExamples) {
  EXPECT_EQ(cbsc_multiply(UnsignedFixed(3, 5), 4), (CbscProduct{3, 4}));
  EXPECT_EQ(cbsc_multiply(UnsignedFixed(3, 5), 0), (CbscProduct{0, 0}));
  EXPECT_EQ(cbsc_multiply(UnsignedFixed(3, 5), 8), (CbscProduct{5, 8}));
}

TEST(Cbsc, IdentityWithGateLevelOracleExhaustive) {
  for (int n = 1; n <= 8; ++n) {
    const std::uint32_t len = 1u << n;
    for (std::uint32_t x = 0; x < len; ++x) {
      for (std::uint64_t w = 0; w <= len; ++w) {
        const auto p = cbsc_multiply(UnsignedFixed(n, x), w);
        ASSERT_EQ(p.product, oracle::gate_level_product(x, n, w)) << n << " " << x << " " << w;
        ASSERT_EQ(p.cycles, w);
      }
    }
  }
}

TEST(Cbsc, MonotoneInBothOperands) {
  for (int n = 1; n <= 8; ++n) {
    const std::uint32_t len = 1u << n;
    for (std::uint32_t x = 0; x < len; ++x) {
      for (std::uint64_t w = 0; w <= len; ++w) {
        const auto p = cbsc_multiply(UnsignedFixed(n, x), w).product;
        if (w > 0) ASSERT_GE(p, cbsc_multiply(UnsignedFixed(n, x), w - 1).product);
        if (x > 0) ASSERT_GE(p, cbsc_multiply(UnsignedFixed(n, x - 1), w).product);
      }
    }
  }
}

TEST(Cbsc, ErrorBelowOneLsbPerBitOfInput) {
  // Each input bit contributes floor or ceil of its ideal share.
  for (int n = 1; n <= 8; ++n) {
    const std::uint32_t len = 1u << n;
    for (std::uint32_t x = 0; x < len; ++x) {
      for (std::uint64_t w = 0; w <= len; ++w) {
        const double exact = static_cast<double>(x) * static_cast<double>(w) / len;
        const double got = static_cast<double>(cbsc_multiply(UnsignedFixed(n, x), w).product);
        ASSERT_LE(std::fabs(got - exact), n * 0.5 + 1e-12);
      }
    }
  }
}

TEST(Cbsc, RejectsOverlongWeight) {
  EXPECT_THROW(cbsc_multiply(UnsignedFixed(3, 1), 9), std::invalid_argument);
}

TEST(LfsrMultiply, MatchesComparatorStreams) {
  std::mt19937 rng(11);
  const auto xc = LfsrConfig::maximal(6, 1), wc = LfsrConfig::maximal(6, 33);
  for (int t = 0; t < 200; ++t) {
    const std::uint32_t x = rng() % 64, w = rng() % 64;
    std::uint32_t sx = xc.seed, sw = wc.seed;
    std::uint64_t count = 0;
    for (int c = 0; c < 64; ++c) {
      count += (sx < x) && (sw < w);
      sx = oracle::fibonacci_next(sx, 6, xc.taps);
      sw = oracle::fibonacci_next(sw, 6, wc.taps);
    }
    ASSERT_EQ(lfsr_multiply(UnsignedFixed(6, x), UnsignedFixed(6, w), xc, wc), count);
  }
}

TEST(UnsignedFixed, RangeChecks) {
  EXPECT_NO_THROW(UnsignedFixed(3, 8));
  EXPECT_THROW(UnsignedFixed(3, 9), std::invalid_argument);
  EXPECT_THROW(UnsignedFixed(0, 0), std::invalid_argument);
  EXPECT_FALSE(UnsignedFixed(3, 8).is_proper());
}

}  // namespace
}  // namespace arsc
