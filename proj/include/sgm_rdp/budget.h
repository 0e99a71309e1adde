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

// Composition, conversion to (epsilon, delta)-DP, and noise calibration.

#ifndef SGM_RDP_BUDGET_H_
#define SGM_RDP_BUDGET_H_

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_format.h"
#include "sgm_rdp/accountant.h"
#include "sgm_rdp/types.h"

namespace sgm_rdp {

struct DpTarget {
  double eps;
  double delta;
};

struct DpGuarantee {
  double eps;
  double delta;
  double best_order;
};

// Dense near 1, where subsampled mechanisms usually attain their optimum, and
// sparse at large orders.
inline std::vector<double> DefaultOrders() {
  std::vector<double> orders = {1.25, 1.5, 1.75, 2.0, 2.25,
                                2.5,  3.0, 3.5,  4.0, 4.5};
  for (int a = 5; a <= 64; ++a) orders.push_back(a);
  orders.push_back(128.0);
  orders.push_back(256.0);
  return orders;
}

// Runs the curve's mechanism `steps` more times: RDP adds up per order.
inline absl::StatusOr<RdpCurve> Compose(const RdpCurve& curve,
                                        std::int64_t steps) {
  if (steps < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("steps must be >= 1, got %d", steps));
  }
  std::int64_t total;
  if (__builtin_mul_overflow(curve.steps(), steps, &total)) {
    return absl::InvalidArgumentError("composed step count overflows int64");
  }
  return RdpCurve::Create(
      std::vector<RdpPoint>(curve.per_step().begin(), curve.per_step().end()),
      total);
}

// (eps, delta)-DP from an RDP curve: eps = min over orders of
// eps(alpha) + ln(1/delta) / (alpha - 1). Ties go to the smaller order.
inline absl::StatusOr<DpGuarantee> ToDp(const RdpCurve& curve, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) return InvalidDeltaError(delta);
  if (curve.empty()) {
    return absl::InvalidArgumentError("cannot convert an empty RDP curve");
  }
  const double log_inv_delta = -std::log(delta);
  DpGuarantee best{std::numeric_limits<double>::infinity(), delta, 0.0};
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double alpha = curve.order(i);
    const double eps = curve.eps(i) + log_inv_delta / (alpha - 1.0);
    if (eps < best.eps) {
      best.eps = eps;
      best.best_order = alpha;
    }
  }
  return best;
}

struct CalibrationOptions {
  double sigma_lo = 1e-2;
  double sigma_hi = 1e4;
  // The upper end is grown by x10 up to this value before giving up.
  double sigma_max = 1e8;
  double relative_width = 1e-4;
};

// Smallest noise multiplier (to within relative_width) for which `steps`
// invocations at sampling rate q meet `target`. Relies on epsilon being
// non-increasing in sigma.
inline absl::StatusOr<double> CalibrateSigma(
    double q, std::int64_t steps, const DpTarget& target,
    std::span<const double> orders, const CalibrationOptions& options = {}) {
  if (!(q >= 0.0 && q <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("sampling rate q must lie in [0, 1], got %.17g", q));
  }
  if (steps < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("steps must be >= 1, got %d", steps));
  }
  if (!(target.eps > 0.0) || !std::isfinite(target.eps)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "target epsilon must be finite and > 0, got %.17g", target.eps));
  }
  if (!(target.delta > 0.0 && target.delta < 1.0)) {
    return InvalidDeltaError(target.delta);
  }
  if (orders.empty()) {
    return absl::InvalidArgumentError("order list must not be empty");
  }
  for (double alpha : orders) {
    if (!IsValidOrder(alpha)) return InvalidOrderError(alpha);
  }
  if (q == 0.0) return options.sigma_lo;

  // Returns whether sigma meets the target.
  auto meets = [&](double sigma) -> absl::StatusOr<bool> {
    absl::StatusOr<SgmParams> params = SgmParams::Create(q, sigma);
    if (!params.ok()) return params.status();
    absl::StatusOr<RdpCurve> curve = ComputeRdpCurve(*params, orders);
    if (!curve.ok()) return curve.status();
    absl::StatusOr<RdpCurve> composed = Compose(*curve, steps);
    if (!composed.ok()) return composed.status();
    absl::StatusOr<DpGuarantee> dp = ToDp(*composed, target.delta);
    if (!dp.ok()) return dp.status();
    return dp->eps <= target.eps;
  };

  double lo = options.sigma_lo;
  double hi = options.sigma_hi;
  {
    absl::StatusOr<bool> ok_lo = meets(lo);
    if (!ok_lo.ok()) return ok_lo.status();
    if (*ok_lo) return lo;
  }
  while (true) {
    absl::StatusOr<bool> ok_hi = meets(hi);
    if (!ok_hi.ok()) return ok_hi.status();
    if (*ok_hi) break;
    if (hi >= options.sigma_max) {
      return InfeasibleError(absl::StrFormat(
          "target (eps=%.17g, delta=%.17g) not met even at sigma=%.17g",
          target.eps, target.delta, hi));
    }
    lo = hi;
    hi *= 10.0;
  }
  // Invariant: lo fails, hi meets. Bisect geometrically.
  while (hi - lo > options.relative_width * hi) {
    const double mid = std::sqrt(lo * hi);
    absl::StatusOr<bool> ok_mid = meets(mid);
    if (!ok_mid.ok()) return ok_mid.status();
    if (*ok_mid) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace sgm_rdp

#endif  // SGM_RDP_BUDGET_H_
