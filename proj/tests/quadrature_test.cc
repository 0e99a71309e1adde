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

#include "sgm_rdp/quadrature.h"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

namespace sgm_rdp {
namespace {

TEST(KronrodRuleTest, ExactForPolynomialsUpToDegree22) {
  for (int degree = 0; degree <= 22; ++degree) {
    auto f = [degree](double x) { return std::pow(x, degree); };
    internal::Panel p = internal::EvaluatePanel(f, -1.0, 1.0, 0);
    const double exact = degree % 2 == 1 ? 0.0 : 2.0 / (degree + 1);
    EXPECT_NEAR(p.value, exact, 1e-14) << degree;
  }
}

TEST(KronrodRuleTest, ErrorEstimateVanishesOnLowDegree) {
  // The embedded 7-point Gauss rule is exact to degree 13.
  auto f = [](double x) { return 3 * x * x * x * x - x + 1; };
  internal::Panel p = internal::EvaluatePanel(f, 0.0, 2.0, 0);
  EXPECT_NEAR(p.value, 3 * 32.0 / 5 - 2 + 2, 1e-13);
  EXPECT_LT(p.error, 1e-13);
}

TEST(IntegrateAdaptiveTest, GaussianMass) {
  auto f = [](double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2 * std::numbers::pi);
  };
  absl::StatusOr<IntegrationResult> r = IntegrateAdaptive(f, -12.0, 12.0);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_NEAR(r->value, 1.0, 1e-13);
  EXPECT_LE(r->abs_error, 1e-10);
  EXPECT_GT(r->evaluations, 0);
}

TEST(IntegrateAdaptiveTest, PeakedIntegrand) {
  // int_0^1 1/(1e-4 + x^2) = 100 atan(100).
  auto f = [](double x) { return 1.0 / (1e-4 + x * x); };
  IntegrationOptions options;
  options.rel_tol = 1e-12;
  options.initial_panels = 4;
  absl::StatusOr<IntegrationResult> r = IntegrateAdaptive(f, 0.0, 1.0, options);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_NEAR(r->value, 100 * std::atan(100.0), 1e-9);
}

TEST(IntegrateAdaptiveTest, Deterministic) {
  auto f = [](double x) { return std::sin(x) * std::exp(-x / 10); };
  const double first = IntegrateAdaptive(f, 0.0, 50.0)->value;
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(IntegrateAdaptive(f, 0.0, 50.0)->value, first);
  }
}

TEST(IntegrateAdaptiveTest, ToleranceNotMet) {
  // A jump cannot be resolved to 1e-15 within three levels of bisection.
  auto f = [](double x) { return x < 0.3 ? 0.0 : 1.0; };
  IntegrationOptions options;
  options.rel_tol = 1e-15;
  options.initial_panels = 1;
  options.max_depth = 3;
  absl::StatusOr<IntegrationResult> r = IntegrateAdaptive(f, 0.0, 1.0, options);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.status().code(), absl::StatusCode::kResourceExhausted);
  EXPECT_NE(r.status().message().find("ToleranceNotMet"), std::string::npos);
}

TEST(IntegrateAdaptiveTest, InvalidInterval) {
  auto f = [](double x) { return x; };
  EXPECT_EQ(IntegrateAdaptive(f, 1.0, 1.0).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(IntegrateAdaptive(f, 2.0, 1.0).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(IntegrateAdaptive(f, 0.0, HUGE_VAL).status().code(),
            absl::StatusCode::kInvalidArgument);
}

}  // namespace
}  // namespace sgm_rdp
