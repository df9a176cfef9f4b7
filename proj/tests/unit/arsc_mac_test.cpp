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

#include "arsc/arsc_mac.hpp"
#include "oracles.hpp"

namespace arsc {
namespace {

SignMagnitude sm(bool neg, int width, std::uint32_t raw) {
  return SignMagnitude(neg, UnsignedFixed(width, raw));
}

std::vector<SignMagnitude> random_inputs(std::mt19937& rng, std::size_t n, int width) {
  std::vector<SignMagnitude> v;
  std::uniform_int_distribution<std::uint32_t> mag(0, (1u << width) - 1);
  for (std::size_t i = 0; i < n; ++i) v.push_back(sm(rng() & 1u, width, mag(rng)));
  return v;
}

std::vector<double> random_coefficients(std::mt19937& rng, std::size_t n) {
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  std::vector<double> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(c(rng));
  return v;
}

double exact_dot(const std::vector<SignMagnitude>& xs, const std::vector<double>& cs) {
  double s = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) s += xs[i].value() * cs[i];
  return s;
}

TEST(AccuracySelect, CodesMapToWidthsBijectively) {
  for (int code = 0; code < AccuracySelect::kCodeCount; ++code) {
    const AccuracySelect sel(code);
    EXPECT_EQ(sel.bitwidth(), 10 - code);
    EXPECT_EQ(AccuracySelect::from_bitwidth(sel.bitwidth()), sel);
    EXPECT_LT(code, 1 << AccuracySelect::kSignalBits);
  }
  EXPECT_THROW(AccuracySelect(5), std::invalid_argument);
  EXPECT_THROW(AccuracySelect(-1), std::invalid_argument);
  EXPECT_THROW(AccuracySelect::from_bitwidth(5), std::invalid_argument);
  EXPECT_THROW(AccuracySelect::from_bitwidth(11), std::invalid_argument);
}

TEST(SignMagnitude, NegativeZeroEqualsPositiveZero) {
  EXPECT_EQ(sm(true, 10, 0), sm(false, 10, 0));
  EXPECT_NE(sm(true, 10, 1), sm(false, 10, 1));
}

TEST(SignMagnitude, FromRealRoundsHalfAwayFromZero) {
  EXPECT_EQ(SignMagnitude::from_real(0.5 / 256, 8).mag.raw(), 1u);
  EXPECT_EQ(SignMagnitude::from_real(-1.5 / 256, 8), sm(true, 8, 2));
  EXPECT_EQ(SignMagnitude::from_real(1.0, 8).mag.raw(), 256u);
  EXPECT_THROW(SignMagnitude::from_real(1.01, 8), std::invalid_argument);
}

TEST(Truncate, FrozenExamples) {
  EXPECT_EQ(truncate(sm(true, 10, 0b1011001110), 8), sm(true, 8, 0b10110011));
  EXPECT_EQ(truncate(sm(false, 10, 0b0000000011), 6), sm(false, 6, 0));
  EXPECT_EQ(truncate(sm(false, 10, 777), 10), sm(false, 10, 777));
  EXPECT_EQ(truncate(sm(false, 10, 777), AccuracySelect(2)).width(), 8);
  EXPECT_THROW(truncate(sm(false, 8, 7), 10), std::invalid_argument);
}

TEST(RestoreWidth, FrozenExamples) {
  EXPECT_EQ(restore_width(sm(false, 8, 0b10110011), 10), sm(false, 10, 0b1011001100));
  EXPECT_EQ(restore_width(sm(false, 10, 5), 10), sm(false, 10, 5));
  EXPECT_EQ(restore_width(sm(true, 8, 0), 10).mag.raw(), 0u);
  EXPECT_THROW(restore_width(sm(false, 10, 1), 8), std::invalid_argument);
}

TEST(Truncate, RoundTripLosesLessThanOneDroppedUnit) {
  for (int b = 6; b <= 10; ++b) {
    for (std::uint32_t raw = 0; raw < 1024; ++raw) {
      for (bool neg : {false, true}) {
        const auto x = sm(neg, 10, raw);
        const auto y = restore_width(truncate(x, b), 10);
        ASSERT_LE(y.mag.raw(), raw);
        ASSERT_LT(raw - y.mag.raw(), 1u << (10 - b));
        ASSERT_TRUE(y.negative == neg || y.mag.raw() == 0);
      }
    }
  }
}

TEST(SignedProduct, FrozenExamples) {
  EXPECT_EQ(signed_product(sm(true, 3, 4), sm(false, 3, 8)).value, -4);
  EXPECT_EQ(signed_product(sm(false, 3, 5), sm(true, 3, 4)).value, -3);
  const auto z = signed_product(sm(false, 3, 0), sm(true, 3, 5));
  EXPECT_EQ(z.value, 0);
  EXPECT_EQ(z.cycles, 0u);
  EXPECT_EQ(signed_product(sm(true, 3, 5), sm(false, 3, 0)).cycles, 0u);
  EXPECT_THROW(signed_product(sm(false, 3, 1), sm(false, 4, 1)), std::invalid_argument);
}

TEST(SignedProduct, SignIsXorOfOperandSigns) {
  for (std::uint32_t x = 1; x < 16; ++x) {
    for (std::uint32_t c = 1; c <= 16; ++c) {
      const auto pp = signed_product(sm(false, 4, x), sm(false, 4, c)).value;
      EXPECT_EQ(signed_product(sm(true, 4, x), sm(false, 4, c)).value, -pp);
      EXPECT_EQ(signed_product(sm(false, 4, x), sm(true, 4, c)).value, -pp);
      EXPECT_EQ(signed_product(sm(true, 4, x), sm(true, 4, c)).value, pp);
      EXPECT_EQ(pp, static_cast<std::int64_t>(oracle::gate_level_product(x, 4, c)));
    }
  }
}

TEST(Mac, UnitCoefficientIsTruncateRestore) {
  for (std::uint32_t raw = 0; raw < 1024; raw += 7) {
    const std::vector<SignMagnitude> xs = {sm(true, 10, raw)};
    for (int b = 6; b <= 10; ++b) {
      const auto r = mac(xs, std::vector<double>{1.0}, AccuracySelect::from_bitwidth(b));
      const auto expect = restore_width(truncate(xs[0], b), 10);
      EXPECT_EQ(r.value, expect) << "raw " << raw << " b " << b;
    }
  }
}

TEST(Mac, ZeroCoefficientsCostNothing) {
  std::mt19937 rng(3);
  const auto xs = random_inputs(rng, 8, 10);
  const auto r = mac(xs, std::vector<double>(8, 0.0), AccuracySelect(0));
  EXPECT_EQ(r.value.mag.raw(), 0u);
  EXPECT_EQ(r.cycles_data, 0u);
  EXPECT_EQ(r.cycles_fixed, 8u * 1024u);
}

TEST(Mac, SymmetricTermsCancel) {
  const std::vector<SignMagnitude> xs = {sm(false, 10, 512), sm(false, 10, 512)};
  const auto sel = AccuracySelect::from_bitwidth(8);
  const std::vector<SignMagnitude> cs = {sm(false, 8, 128), sm(true, 8, 128)};
  EXPECT_EQ(signed_product(truncate(xs[0], 8), cs[0]).value, 64);
  const auto r = mac(xs, cs, sel);
  EXPECT_EQ(r.value.mag.raw(), 0u);
}

TEST(Mac, PowerOfTwoOperandsAreExact) {
  // Single-bit inputs against coefficients that are multiples of the bit's
  // firing period: every deterministic-stream prefix is exact.
  const std::vector<SignMagnitude> xs = {sm(false, 10, 512), sm(true, 10, 256),
                                         sm(false, 10, 128), sm(false, 10, 512)};
  const std::vector<SignMagnitude> cs = {sm(false, 10, 512), sm(false, 10, 256),
                                         sm(true, 10, 1024), sm(false, 10, 1024)};
  std::int64_t exact = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    exact += xs[i].signed_raw() * cs[i].signed_raw() / 1024;
  }
  const auto r = mac(xs, cs, AccuracySelect(0));
  EXPECT_EQ(r.value.signed_raw(), exact);
}

TEST(Mac, CycleAccountingInvariants) {
  std::mt19937 rng(5);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 16;
    const int b = 6 + static_cast<int>(rng() % 5);
    const auto xs = random_inputs(rng, n, 10);
    const auto cs = random_coefficients(rng, n);
    const auto r = mac(xs, cs, AccuracySelect::from_bitwidth(b));
    EXPECT_EQ(r.cycles_fixed, static_cast<std::uint64_t>(n) << b);
    EXPECT_LE(r.cycles_data, r.cycles_fixed);
  }
}

TEST(Mac, NegatingInputsNegatesResult) {
  std::mt19937 rng(7);
  for (int t = 0; t < 300; ++t) {
    const int b = 6 + static_cast<int>(rng() % 5);
    auto xs = random_inputs(rng, 8, 10);
    const auto cs = random_coefficients(rng, 8);
    const auto pos = mac(xs, cs, AccuracySelect::from_bitwidth(b), MacScaling{2});
    for (auto& x : xs) x.negative = !x.negative;
    const auto neg = mac(xs, cs, AccuracySelect::from_bitwidth(b), MacScaling{2});
    EXPECT_EQ(neg.value.signed_raw(), -pos.value.signed_raw());
  }
}

TEST(Mac, ErrorWithinOracleMeasuredBound) {
  for (int b = 6; b <= 8; ++b) {
    // Worst multiplier error at width b, from the gate-level oracle.
    const std::uint32_t len = 1u << b;
    double worst = 0.0;
    for (std::uint32_t x = 0; x < len; ++x) {
      for (std::uint32_t w = 0; w <= len; ++w) {
        const double got = static_cast<double>(oracle::gate_level_product(x, b, w)) / len;
        worst = std::max(worst, std::fabs(got - static_cast<double>(x) * w / (len * len)));
      }
    }
    std::mt19937 rng(100 + b);
    for (int t = 0; t < 500; ++t) {
      const std::size_t n = 1 + rng() % 8;
      auto xs = random_inputs(rng, n, 10);
      auto cs = random_coefficients(rng, n);
      for (auto& c : cs) c /= static_cast<double>(n);  // keep |sum| < 1, no clamp
      const auto r = mac(xs, cs, AccuracySelect::from_bitwidth(b));
      ASSERT_FALSE(r.clamped);
      const double bound = static_cast<double>(n) * (std::ldexp(1.0, -b + 1) + worst);
      ASSERT_LE(std::fabs(r.value.value() - exact_dot(xs, cs)), bound) << "b=" << b;
    }
  }
}

TEST(Mac, MeanErrorShrinksWithWidth) {
  std::mt19937 rng(17);
  std::vector<std::vector<SignMagnitude>> xs;
  std::vector<std::vector<double>> cs;
  for (int t = 0; t < 2000; ++t) {
    xs.push_back(random_inputs(rng, 8, 10));
    auto c = random_coefficients(rng, 8);
    for (auto& v : c) v /= 8.0;
    cs.push_back(c);
  }
  double previous = INFINITY;
  for (int b = 6; b <= 10; ++b) {
    double sum = 0.0;
    for (std::size_t t = 0; t < xs.size(); ++t) {
      sum += std::fabs(mac(xs[t], cs[t], AccuracySelect::from_bitwidth(b)).value.value() -
                       exact_dot(xs[t], cs[t]));
    }
    const double mean = sum / static_cast<double>(xs.size());
    EXPECT_LE(mean, previous) << "b=" << b;
    previous = mean;
  }
}

TEST(Mac, ClampsAtFullScale) {
  const std::vector<SignMagnitude> xs(4, sm(true, 10, 1000));
  const auto r = mac(xs, std::vector<double>(4, 1.0), AccuracySelect(0));
  EXPECT_TRUE(r.clamped);
  EXPECT_EQ(r.value, sm(true, 10, 1023));
}

TEST(Mac, ScalingShiftsBeforeClamp) {
  const std::vector<SignMagnitude> xs(4, sm(false, 10, 1000));
  const auto r = mac(xs, std::vector<double>(4, 1.0), AccuracySelect(0), MacScaling{2});
  EXPECT_FALSE(r.clamped);
  EXPECT_EQ(r.value.mag.raw(), 1000u);
  const auto up = mac({xs.data(), 1}, std::vector<double>{0.25}, AccuracySelect(0),
                      MacScaling{-2});
  EXPECT_EQ(up.value.mag.raw(), 1000u);
}

TEST(Mac, ValidatesShapes) {
  const std::vector<SignMagnitude> xs(2, sm(false, 10, 1));
  EXPECT_THROW(mac(xs, std::vector<double>(3, 0.5), AccuracySelect(0)), std::invalid_argument);
  EXPECT_THROW(mac(std::vector<SignMagnitude>{}, std::vector<double>{}, AccuracySelect(0)),
               std::invalid_argument);
  const std::vector<SignMagnitude> cs(2, sm(false, 9, 1));
  EXPECT_THROW(mac(xs, cs, AccuracySelect(0)), std::invalid_argument);
}

}  // namespace
}  // namespace arsc
