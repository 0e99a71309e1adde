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

// Exact Renyi DP of the Sampled Gaussian Mechanism.
//
// For a function of l2-sensitivity 1, the mechanism's RDP at order alpha is
// ln(A_alpha) / (alpha - 1), where
//
//   A_alpha = E_{z ~ mu0} [ ((1 - q) + q mu1(z) / mu0(z))^alpha ],
//   mu0 = N(0, sigma^2),  mu1 = N(1, sigma^2).
//
// The reverse divergence (B_alpha, with the mixture in the denominator) is
// never larger, so only A_alpha is computed here; the oracle checks that
// claim numerically.
//
// Integer alpha expands the power binomially. Every expectation
// E[(mu1/mu0)^k] = exp((k^2 - k) / (2 sigma^2)) is closed form and all terms
// are positive.
//
// Fractional alpha splits the real line at z1, the point where
// (1 - q) mu0 = q mu1, and expands the power as a generalized binomial series
// in whichever of the two summands is smaller on each half line. The
// half-line Gaussian integrals are erfc closed forms. The series terms change
// sign, so they go through SignedLogSum.

#ifndef SGM_RDP_ACCOUNTANT_H_
#define SGM_RDP_ACCOUNTANT_H_

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_format.h"
#include "sgm_rdp/log_math.h"
#include "sgm_rdp/types.h"

namespace sgm_rdp {

// Maximum number of terms taken from each fractional-order series.
inline constexpr std::int64_t kMaxSeriesTerms = 10'000'000;

// A term is negligible once it is this far (in nats) below the running sum.
inline constexpr long double kSeriesStopGap = 60 * std::numbers::ln2_v<long double>;

// ln A_alpha for integer alpha >= 0.
inline double ComputeLogAInt(const SgmParams& params, std::int64_t alpha) {
  using T = long double;
  const T q = params.q();
  const T sigma = params.sigma();
  if (params.q() == 0.0 || alpha == 0) return 0.0;
  const T two_var = T(2) * sigma * sigma;
  if (params.q() == 1.0) {
    const T a = static_cast<T>(alpha);
    return static_cast<double>((a * a - a) / two_var);
  }
  const T log_q = std::log(q);
  const T log_1mq = std::log1p(-q);

  T log_a = kNegInf<T>;
  T log_coef = 0;  // ln C(alpha, k)
  for (std::int64_t k = 0; k <= alpha; ++k) {
    const T kk = static_cast<T>(k);
    const T log_term = log_coef + static_cast<T>(alpha - k) * log_1mq +
                       kk * log_q + (kk * kk - kk) / two_var;
    log_a = LogAddExp(log_a, log_term);
    log_coef += std::log(static_cast<T>(alpha - k)) - std::log(kk + 1);
  }
  return static_cast<double>(log_a);
}

// Partial sums kept for the accelerated tail estimate.
inline constexpr int kTailAveragingDepth = 24;

// Consecutive agreeing accelerated estimates required before stopping.
inline constexpr int kTailAgreements = 3;

// ln A_alpha by the two half-line series. Valid for any alpha > 1, including
// integers (the series then terminate and reproduce the binomial sum).
// Requires 0 < q < 1.
//
// Past k = alpha + 1 both series alternate in sign with smoothly decaying
// magnitudes, O(k^-(alpha + 2)) when z1 is small. The tail is summed in
// long double relative to the head and accelerated by repeated averaging of
// the last kTailAveragingDepth + 1 partial sums.
inline absl::StatusOr<double> ComputeLogAFrac(const SgmParams& params,
                                              double alpha) {
  using T = long double;
  if (!IsValidOrder(alpha)) return InvalidOrderError(alpha);
  if (!(params.q() > 0.0 && params.q() < 1.0)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "ComputeLogAFrac requires 0 < q < 1, got %.17g", params.q()));
  }
  const T a = alpha;
  const T q = params.q();
  const T sigma = params.sigma();
  const T two_var = T(2) * sigma * sigma;
  const T log_q = std::log(q);
  const T log_1mq = std::log1p(-q);
  // z1 = 1/2 + sigma^2 ln(1/q - 1)
  const T z1 = T(0.5) + sigma * sigma * (log_1mq - log_q);
  const T inv_scale = T(1) / (std::numbers::sqrt2_v<T> * sigma);
  const T log_half = -std::numbers::ln2_v<T>;
  const T stop_ratio = std::exp(-kSeriesStopGap);

  constexpr int kWindow = kTailAveragingDepth + 1;
  T weights[kWindow];  // C(depth, i) / 2^depth
  weights[0] = std::ldexp(T(1), -kTailAveragingDepth);
  for (int i = 1; i < kWindow; ++i) {
    weights[i] = weights[i - 1] * (kTailAveragingDepth - i + 1) / i;
  }

  auto failure = [&](const char* what) {
    return absl::InternalError(absl::StrFormat(
        "A_alpha series %s (q=%.17g sigma=%.17g alpha=%.17g)", what,
        params.q(), params.sigma(), alpha));
  };

  SignedLogSum<T> head;
  bool in_tail = false;
  T scale = 0;      // ln of the head's positive part when the tail starts
  T head_rel = 0;   // head / e^scale
  T tail_rel = 0;   // tail partial sum / e^scale
  T window[kWindow];
  std::int64_t tail_terms = 0;
  T previous_estimate = 0;
  int agreements = 0;

  int coef_sign = 1;
  T log_coef = 0;  // ln |C(alpha, k)|
  for (std::int64_t k = 0; k < kMaxSeriesTerms; ++k) {
    const T kk = static_cast<T>(k);
    const T j = a - kk;
    T log_s0 = kNegInf<T>;
    T log_s1 = kNegInf<T>;
    if (coef_sign != 0) {
      // Left half line: expand in q mu1/mu0, integrate over (-inf, z1].
      log_s0 = log_coef + j * log_1mq + kk * log_q + (kk * kk - kk) / two_var +
               log_half + LogErfc((kk - z1) * inv_scale);
      // Right half line: expand in (1 - q), integrate over [z1, inf).
      log_s1 = log_coef + kk * log_1mq + j * log_q + (j * j - j) / two_var +
               log_half + LogErfc((z1 - j) * inv_scale);
    }
    if (!in_tail && kk > a + 1) {
      const BasicSignedLog<T> h = head.Result();
      if (h.sign() <= 0) return failure("head summed to a non-positive value");
      in_tail = true;
      scale = head.log_positive();
      head_rel = h.sign() * std::exp(h.log_magnitude() - scale);
    }
    if (!in_tail) {
      head.Add(coef_sign, log_s0);
      head.Add(coef_sign, log_s1);
    } else {
      const T log_term = std::max(log_s0, log_s1);
      if (coef_sign != 0 && log_term - scale > 10000) {
        return failure("tail term exceeds the head by more than e^10000");
      }
      tail_rel += coef_sign *
                  (std::exp(log_s0 - scale) + std::exp(log_s1 - scale));
      window[tail_terms % kWindow] = tail_rel;
      ++tail_terms;
      // Plain stop: the next term is negligible.
      const bool negligible = log_term < scale - kSeriesStopGap;
      // Accelerated stop: successive averaged estimates agree.
      bool settled = false;
      T estimate = tail_rel;
      if (!negligible && tail_terms >= kWindow) {
        estimate = 0;
        for (int i = 0; i < kWindow; ++i) {
          estimate += weights[i] * window[(tail_terms + i) % kWindow];
        }
        const T total = std::abs(head_rel + estimate);
        if (tail_terms > kWindow &&
            std::abs(estimate - previous_estimate) <= stop_ratio * total) {
          ++agreements;
        } else {
          agreements = 0;
        }
        previous_estimate = estimate;
        settled = agreements >= kTailAgreements;
      }
      if (negligible || settled) {
        const T total = head_rel + estimate;
        if (!(total > 0)) return failure("summed to a non-positive value");
        return static_cast<double>(scale + std::log(total));
      }
    }
    // C(alpha, k+1) = C(alpha, k) (alpha - k) / (k + 1)
    if (j == 0) {
      coef_sign = 0;
    } else if (coef_sign != 0) {
      if (j < 0) coef_sign = -coef_sign;
      log_coef += std::log(std::abs(j)) - std::log(kk + 1);
    }
  }
  return NonConvergenceError(absl::StrFormat(
      "A_alpha series did not converge within %d terms (q=%.17g sigma=%.17g "
      "alpha=%.17g)",
      kMaxSeriesTerms, params.q(), params.sigma(), alpha));
}

// True when alpha is exactly an integer representable as int64.
inline bool IsIntegralOrder(double alpha) {
  return std::isfinite(alpha) && std::floor(alpha) == alpha &&
         alpha < 9.0e18;
}

// RDP epsilon at order alpha > 1. Exactly integral orders take the binomial
// path; there is no snapping, so 2.0000001 goes through the series.
inline absl::StatusOr<double> ComputeRdp(const SgmParams& params,
                                         double alpha) {
  if (!IsValidOrder(alpha)) return InvalidOrderError(alpha);
  if (params.q() == 0.0) return 0.0;
  if (params.q() == 1.0) {
    return alpha / (2.0 * params.sigma() * params.sigma());
  }
  double log_a;
  if (IsIntegralOrder(alpha)) {
    log_a = ComputeLogAInt(params, static_cast<std::int64_t>(alpha));
  } else {
    absl::StatusOr<double> frac = ComputeLogAFrac(params, alpha);
    if (!frac.ok()) return frac.status();
    log_a = *frac;
  }
  // ln A_alpha >= 0 mathematically; clamp rounding noise on tiny values.
  return std::max(0.0, log_a) / (alpha - 1.0);
}

// Per-step RDP curve of one mechanism over the given orders. Orders must be
// strictly increasing.
inline absl::StatusOr<RdpCurve> ComputeRdpCurve(const SgmParams& params,
                                                std::span<const double> orders) {
  std::vector<RdpPoint> points;
  points.reserve(orders.size());
  for (double alpha : orders) {
    absl::StatusOr<double> eps = ComputeRdp(params, alpha);
    if (!eps.ok()) return eps.status();
    points.push_back({alpha, *eps});
  }
  return RdpCurve::Create(std::move(points));
}

}  // namespace sgm_rdp

#endif  // SGM_RDP_ACCOUNTANT_H_
