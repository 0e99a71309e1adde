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

// Closed-form RDP bound for the Sampled Gaussian Mechanism.
//
// With L = ln(1 + 1/(q (alpha - 1))), if
//
//   q <= 1/5,  sigma >= 4,
//   alpha <= sigma^2 L / 2 - 2 ln sigma,                                  (1)
//   alpha <= (sigma^2 L^2 / 2 - ln 5 - 2 ln sigma)
//            / (L + ln(q alpha) + 1 / (2 sigma^2)),                       (2)
//
// then the mechanism is (alpha, 2 q^2 alpha / sigma^2)-RDP. The bound comes
// from splitting A_alpha at z0 = 1/2 + sigma^2 L into
//
//   A^(1) <= 1 + q^2 alpha (alpha - 1) (exp(1/sigma^2) - 1)   (always),
//   A^(2) <= 0.9 q^2 alpha (alpha - 1) / sigma^2               (under 1, 2).
//
// Conditions are checked pointwise at the given alpha, with non-strict
// comparisons.

#ifndef SGM_RDP_CLOSED_FORM_H_
#define SGM_RDP_CLOSED_FORM_H_

#include <cmath>
#include <limits>
#include <optional>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_format.h"
#include "sgm_rdp/types.h"

namespace sgm_rdp {

struct BoundReport {
  // Present exactly when all three conditions hold.
  std::optional<double> eps_bound;
  bool cond_range = false;   // q <= 1/5 and sigma >= 4
  bool cond_alpha1 = false;  // condition (1)
  bool cond_alpha2 = false;  // condition (2)
  double L = 0.0;            // +inf when q == 0
  double z0 = 0.0;           // 1/2 + sigma^2 L
};

namespace internal {

struct BoundConditions {
  bool range;
  bool alpha1;
  bool alpha2;
  double L;
  double z0;
};

inline absl::StatusOr<BoundConditions> EvaluateBoundConditions(
    const SgmParams& params, double alpha) {
  if (!IsValidOrder(alpha)) return InvalidOrderError(alpha);
  const double q = params.q();
  const double sigma = params.sigma();
  const double var = sigma * sigma;
  BoundConditions c;
  c.range = q <= 0.2 && sigma >= 4.0;
  if (q == 0.0) {
    // L and z0 are infinite; both right-hand sides grow without bound.
    c.L = std::numeric_limits<double>::infinity();
    c.z0 = c.L;
    c.alpha1 = true;
    c.alpha2 = true;
    return c;
  }
  c.L = std::log1p(1.0 / (q * (alpha - 1.0)));
  c.z0 = 0.5 + var * c.L;
  const double log_sigma = std::log(sigma);
  c.alpha1 = alpha <= 0.5 * var * c.L - 2.0 * log_sigma;
  // L + ln(q alpha) = ln(q alpha + alpha / (alpha - 1)) > 0, so the
  // denominator is positive.
  const double denom = c.L + std::log(q * alpha) + 1.0 / (2.0 * var);
  if (!(denom > 0.0)) {
    return absl::InternalError(absl::StrFormat(
        "closed-form bound: non-positive denominator %.17g (q=%.17g "
        "sigma=%.17g alpha=%.17g)",
        denom, q, sigma, alpha));
  }
  const double numer =
      0.5 * var * c.L * c.L - std::log(5.0) - 2.0 * log_sigma;
  c.alpha2 = alpha <= numer / denom;
  return c;
}

}  // namespace internal

// Evaluates the closed-form bound and reports which conditions hold.
inline absl::StatusOr<BoundReport> ClosedFormBound(const SgmParams& params,
                                                   double alpha) {
  absl::StatusOr<internal::BoundConditions> c =
      internal::EvaluateBoundConditions(params, alpha);
  if (!c.ok()) return c.status();
  BoundReport report;
  report.cond_range = c->range;
  report.cond_alpha1 = c->alpha1;
  report.cond_alpha2 = c->alpha2;
  report.L = c->L;
  report.z0 = c->z0;
  if (c->range && c->alpha1 && c->alpha2) {
    const double q = params.q();
    const double sigma = params.sigma();
    report.eps_bound = 2.0 * q * q * alpha / (sigma * sigma);
  }
  return report;
}

// Unconditional upper bound on the part of A_alpha left of z0.
inline double BoundA1(const SgmParams& params, double alpha) {
  const double q = params.q();
  const double sigma = params.sigma();
  return 1.0 + q * q * alpha * (alpha - 1.0) *
                   std::expm1(1.0 / (sigma * sigma));
}

// Upper bound on the part of A_alpha right of z0; absent when its hypotheses
// (the same as ClosedFormBound's) fail or alpha is not a valid order.
inline std::optional<double> BoundA2(const SgmParams& params, double alpha) {
  absl::StatusOr<internal::BoundConditions> c =
      internal::EvaluateBoundConditions(params, alpha);
  if (!c.ok() || !(c->range && c->alpha1 && c->alpha2)) return std::nullopt;
  const double q = params.q();
  const double sigma = params.sigma();
  return 0.9 * q * q * alpha * (alpha - 1.0) / (sigma * sigma);
}

}  // namespace sgm_rdp

#endif  // SGM_RDP_CLOSED_FORM_H_
