//
// Copyright 2026 The sgm-rdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "sgm_rdp/accountant.h"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "sgm_rdp/budget.h"

namespace sgm_rdp {
namespace {

SgmParams Params(double q, double sigma) {
  return *SgmParams::Create(q, sigma);
}

// ln(1 + q^2 (e^{1/sigma^2} - 1)): the three-term binomial sum at alpha = 2.
double LogA2(double q, double sigma) {
  return std::log1p(q * q * std::expm1(1.0 / (sigma * sigma)));
}

// ln A_alpha by direct mpmath quadrature (tests/oracles/mp_oracle.py).
struct MpLogA {
  double q;
  double sigma;
  double alpha;
  double log_a;
};
constexpr MpLogA kMpLogA[] = {
    {0.01, 1, 1.5, 0.000063626871663724919403},
    {0.01, 1, 2, 0.00017181342207454793814},
    {0.2, 4, 3, 0.0078107267512124504172},
    {0.1, 4, 4, 0.0039146863497729362269},
    {0.05, 1, 2.5, 0.0085088004559348429615},
    {0.2, 1, 1.5, 0.021985254725011812461},
    {0.5, 10, 1.25, 0.00039135696529715888992},
    {0.01, 10, 1.5, 3.7686226742517203594e-7},
    {0.2, 1, 16, 94.249012979099660245},
    {0.1, 1, 32, 422.31727702420045422},
};

TEST(SgmParamsTest, Validation) {
  EXPECT_TRUE(SgmParams::Create(0.0, 1.0).ok());
  EXPECT_TRUE(SgmParams::Create(1.0, 1e-3).ok());
  EXPECT_FALSE(SgmParams::Create(-0.1, 1.0).ok());
  EXPECT_FALSE(SgmParams::Create(1.1, 1.0).ok());
  EXPECT_FALSE(SgmParams::Create(0.5, 0.0).ok());
  EXPECT_FALSE(SgmParams::Create(0.5, -1.0).ok());
  EXPECT_FALSE(SgmParams::Create(std::nan(""), 1.0).ok());
  EXPECT_FALSE(SgmParams::Create(0.5, HUGE_VAL).ok());
}

TEST(ComputeLogAIntTest, Examples) {
  EXPECT_EQ(ComputeLogAInt(Params(0.0, 1.0), 5), 0.0);
  EXPECT_DOUBLE_EQ(ComputeLogAInt(Params(1.0, 2.0), 3), 0.75);
  EXPECT_NEAR(ComputeLogAInt(Params(0.01, 1.0), 2), LogA2(0.01, 1.0), 1e-18);
  EXPECT_NEAR(ComputeLogAInt(Params(0.01, 1.0), 2), 1.71813e-4, 1e-9);
}

TEST(ComputeLogAIntTest, AlphaTwoClosedForm) {
  for (double q : {0.001, 0.01, 0.1, 0.5, 0.9}) {
    for (double sigma : {0.3, 1.0, 4.0, 10.0}) {
      EXPECT_NEAR(ComputeLogAInt(Params(q, sigma), 2), LogA2(q, sigma),
                  1e-14 * LogA2(q, sigma) + 1e-20)
          << q << " " << sigma;
    }
  }
}

TEST(ComputeLogAIntTest, LargeValuesStayInLogSpace) {
  // ln A far beyond the double exponent range.
  const double log_a = ComputeLogAInt(Params(0.5, 0.1), 40);
  EXPECT_TRUE(std::isfinite(log_a));
  // Dominated by k = alpha: alpha ln q + (alpha^2 - alpha) / (2 sigma^2).
  EXPECT_NEAR(log_a, 40 * std::log(0.5) + 1560.0 / 0.02, 1e-6 * log_a);
}

TEST(ComputeLogAFracTest, MatchesQuadratureOracle) {
  for (const MpLogA& c : kMpLogA) {
    absl::StatusOr<double> v = ComputeLogAFrac(Params(c.q, c.sigma), c.alpha);
    ASSERT_TRUE(v.ok()) << v.status();
    EXPECT_NEAR(*v, c.log_a, 1e-9 * c.log_a)
        << "q=" << c.q << " sigma=" << c.sigma << " alpha=" << c.alpha;
  }
}

TEST(ComputeLogAFracTest, ForcedIntegerOrderMatchesBinomialPath) {
  const double via_series = *ComputeLogAFrac(Params(0.2, 4.0), 3.0);
  const double via_binomial = ComputeLogAInt(Params(0.2, 4.0), 3);
  EXPECT_NEAR(via_series, via_binomial, 1e-9 * via_binomial);
}

TEST(ComputeLogAFracTest, VanishesAsQGoesToZero) {
  double previous = HUGE_VAL;
  for (double q : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10}) {
    const double v = *ComputeLogAFrac(Params(q, 1.0), 2.5);
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, previous);
    previous = v;
  }
  EXPECT_LT(previous, 1e-18);
}

TEST(ComputeLogAFracTest, RejectsDegenerateRates) {
  EXPECT_EQ(ComputeLogAFrac(Params(0.0, 1.0), 2.5).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(ComputeLogAFrac(Params(1.0, 1.0), 2.5).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(ComputeLogAFrac(Params(0.5, 1.0), 1.0).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(ComputeRdpTest, Examples) {
  EXPECT_EQ(*ComputeRdp(Params(0.0, 3.0), 7), 0.0);
  EXPECT_DOUBLE_EQ(*ComputeRdp(Params(1.0, 2.0), 3), 0.375);
  EXPECT_NEAR(*ComputeRdp(Params(0.01, 1.0), 2), LogA2(0.01, 1.0), 1e-18);
}

TEST(ComputeRdpTest, InvalidOrders) {
  for (double alpha : {1.0, 0.5, -2.0, std::nan(""), HUGE_VAL}) {
    absl::StatusOr<double> r = ComputeRdp(Params(0.1, 1.0), alpha);
    ASSERT_FALSE(r.ok());
    EXPECT_EQ(r.status().code(), absl::StatusCode::kInvalidArgument);
    EXPECT_NE(r.status().message().find("InvalidOrder"), std::string::npos);
  }
}

TEST(ComputeRdpTest, NoIntegerSnapping) {
  const SgmParams p = Params(0.1, 2.0);
  const double at_two = *ComputeRdp(p, 2.0);
  const double near_two = *ComputeRdp(p, 2.0000001);
  EXPECT_NE(at_two, near_two);
  EXPECT_NEAR(at_two, near_two, 1e-6 * at_two);
}

TEST(ComputeRdpTest, PathsAgreeAtIntegerOrders) {
  for (double q : {0.01, 0.1, 0.5}) {
    for (double sigma : {1.0, 4.0, 10.0}) {
      const SgmParams p = Params(q, sigma);
      for (int alpha = 2; alpha <= 32; ++alpha) {
        const double binomial = ComputeLogAInt(p, alpha);
        const double series = *ComputeLogAFrac(p, alpha);
        EXPECT_NEAR(series, binomial, 1e-9 * binomial)
            << "q=" << q << " sigma=" << sigma << " alpha=" << alpha;
      }
    }
  }
}

TEST(ComputeRdpTest, LargeOrdersDoNotOverflow) {
  const double eps = *ComputeRdp(Params(0.3, 0.2), 300.5);
  EXPECT_TRUE(std::isfinite(eps));
  EXPECT_GT(eps, 1000.0);
}

TEST(ComputeRdpCurveTest, DefaultGrid) {
  const std::vector<double> orders = DefaultOrders();
  absl::StatusOr<RdpCurve> curve =
      ComputeRdpCurve(Params(0.01, 1.1), orders);
  ASSERT_TRUE(curve.ok()) << curve.status();
  ASSERT_EQ(curve->size(), orders.size());
  EXPECT_EQ(curve->steps(), 1);
  for (std::size_t i = 1; i < curve->size(); ++i) {
    EXPECT_GE(curve->eps(i), curve->eps(i - 1));
  }
}

}  // namespace
}  // namespace sgm_rdp
