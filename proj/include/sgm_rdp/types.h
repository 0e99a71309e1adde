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

// Domain types shared by the accountant, the budget helpers and the oracle,
// plus the error constructors used across the library.
//
// Error codes:
//   kInvalidArgument    invalid order, delta, sampling rate or noise
//   kResourceExhausted  a series or quadrature did not converge in budget
//   kOutOfRange         a calibration target cannot be met
//   kInternal           a numerical invariant was violated (a bug)

#ifndef SGM_RDP_TYPES_H_
#define SGM_RDP_TYPES_H_

#include <cmath>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_format.h"

namespace sgm_rdp {

inline absl::Status InvalidOrderError(double alpha) {
  return absl::InvalidArgumentError(
      absl::StrFormat("InvalidOrder: order must be finite and > 1, got %.17g",
                      alpha));
}

inline absl::Status InvalidDeltaError(double delta) {
  return absl::InvalidArgumentError(
      absl::StrFormat("InvalidDelta: delta must lie in (0, 1), got %.17g",
                      delta));
}

inline absl::Status NonConvergenceError(std::string_view what) {
  return absl::ResourceExhaustedError(
      absl::StrFormat("NonConvergence: %s", std::string(what)));
}

inline absl::Status ToleranceNotMetError(std::string_view what) {
  return absl::ResourceExhaustedError(
      absl::StrFormat("ToleranceNotMet: %s", std::string(what)));
}

inline absl::Status InfeasibleError(std::string_view what) {
  return absl::OutOfRangeError(absl::StrFormat("Infeasible: %s", std::string(what)));
}

inline bool IsValidOrder(double alpha) {
  return std::isfinite(alpha) && alpha > 1.0;
}

// Parameters of one Sampled Gaussian Mechanism invocation on a function of
// l2-sensitivity 1: Poisson sampling rate q and noise multiplier sigma.
class SgmParams {
 public:
  static absl::StatusOr<SgmParams> Create(double q, double sigma) {
    if (!(q >= 0.0 && q <= 1.0)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "sampling rate q must lie in [0, 1], got %.17g", q));
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "noise multiplier sigma must be finite and > 0, got %.17g", sigma));
    }
    return SgmParams(q, sigma);
  }

  double q() const { return q_; }
  double sigma() const { return sigma_; }

 private:
  SgmParams(double q, double sigma) : q_(q), sigma_(sigma) {}

  double q_;
  double sigma_;
};

struct RdpPoint {
  double order;
  double eps;
};

// RDP guarantees at a set of orders for `steps` compositions of one
// mechanism. Per-step values are stored and the step count is kept
// separately, so that composing twice is exactly composing once with the
// product of the step counts.
class RdpCurve {
 public:
  // Orders must be strictly increasing and > 1; epsilons finite and >= 0.
  static absl::StatusOr<RdpCurve> Create(std::vector<RdpPoint> per_step,
                                         std::int64_t steps = 1) {
    if (steps < 1) {
      return absl::InvalidArgumentError(
          absl::StrFormat("steps must be >= 1, got %d", steps));
    }
    for (std::size_t i = 0; i < per_step.size(); ++i) {
      const RdpPoint& p = per_step[i];
      if (!IsValidOrder(p.order)) return InvalidOrderError(p.order);
      if (!(p.eps >= 0.0)) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "epsilon must be >= 0, got %.17g at order %.17g", p.eps, p.order));
      }
      if (i > 0 && !(per_step[i - 1].order < p.order)) {
        return absl::InvalidArgumentError(
            "orders must be strictly increasing");
      }
    }
    return RdpCurve(std::move(per_step), steps);
  }

  std::int64_t steps() const { return steps_; }
  std::size_t size() const { return per_step_.size(); }
  bool empty() const { return per_step_.empty(); }
  std::span<const RdpPoint> per_step() const { return per_step_; }

  double order(std::size_t i) const { return per_step_[i].order; }
  // Composed epsilon at point i.
  double eps(std::size_t i) const {
    return per_step_[i].eps * static_cast<double>(steps_);
  }

  std::vector<RdpPoint> points() const {
    std::vector<RdpPoint> out;
    out.reserve(per_step_.size());
    for (std::size_t i = 0; i < per_step_.size(); ++i) {
      out.push_back({order(i), eps(i)});
    }
    return out;
  }

 private:
  RdpCurve(std::vector<RdpPoint> per_step, std::int64_t steps)
      : per_step_(std::move(per_step)), steps_(steps) {}

  std::vector<RdpPoint> per_step_;
  std::int64_t steps_ = 1;
};

}  // namespace sgm_rdp

#endif  // SGM_RDP_TYPES_H_
