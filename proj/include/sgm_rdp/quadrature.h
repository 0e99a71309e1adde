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

// Globally adaptive 7/15-point Gauss-Kronrod quadrature on a finite interval.
// The panel with the largest error estimate is bisected until the summed
// estimate falls below rel_tol * |integral|.

#ifndef SGM_RDP_QUADRATURE_H_
#define SGM_RDP_QUADRATURE_H_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <queue>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_format.h"
#include "sgm_rdp/types.h"

namespace sgm_rdp {

struct IntegrationResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::int64_t evaluations = 0;
};

struct IntegrationOptions {
  double rel_tol = 1e-10;
  // Panels the interval is cut into before adapting.
  int initial_panels = 32;
  int max_depth = 60;
  std::int64_t max_evaluations = 20'000'000;
};

namespace internal {

// Kronrod abscissae (descending, last is the centre); odd indices are the
// embedded 7-point Gauss abscissae.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Weights of the Gauss nodes kKronrodNodes[1], [3], [5], [7].
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  int depth;
};

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;  // deterministic tie-break
  }
};

template <typename F>
Panel EvaluatePanel(const F& f, double a, double b, int depth) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(centre - dx) + f(centre + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return Panel{a, b, kronrod, std::abs(kronrod - gauss), depth};
}

}  // namespace internal

// Integrates f over [a, b]. f must be finite on the interval.
template <typename F>
absl::StatusOr<IntegrationResult> IntegrateAdaptive(
    const F& f, double a, double b, const IntegrationOptions& options = {}) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("invalid integration interval [%.17g, %.17g]", a, b));
  }
  std::priority_queue<internal::Panel, std::vector<internal::Panel>,
                      internal::ByError>
      heap;
  std::int64_t evaluations = 0;
  double total = 0.0;
  double total_error = 0.0;
  const int n0 = std::max(1, options.initial_panels);
  const double width = (b - a) / n0;
  for (int i = 0; i < n0; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == n0) ? b : a + (i + 1) * width;
    internal::Panel p = internal::EvaluatePanel(f, lo, hi, 0);
    evaluations += 15;
    total += p.value;
    total_error += p.error;
    heap.push(p);
  }

  auto converged = [&] {
    return total_error <= options.rel_tol * std::abs(total);
  };

  while (!converged()) {
    internal::Panel worst = heap.top();
    if (worst.depth >= options.max_depth ||
        evaluations + 30 > options.max_evaluations ||
        !std::isfinite(total)) {
      return ToleranceNotMetError(absl::StrFormat(
          "quadrature reached its refinement budget with estimated relative "
          "error %.3g (target %.3g, %d evaluations)",
          total_error / std::abs(total), options.rel_tol, evaluations));
    }
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    internal::Panel left =
        internal::EvaluatePanel(f, worst.a, mid, worst.depth + 1);
    internal::Panel right =
        internal::EvaluatePanel(f, mid, worst.b, worst.depth + 1);
    evaluations += 30;
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);

    if (converged()) {
      // Re-sum from scratch to drop drift in the running totals.
      std::vector<internal::Panel> panels;
      panels.reserve(heap.size());
      auto copy = heap;
      while (!copy.empty()) {
        panels.push_back(copy.top());
        copy.pop();
      }
      std::sort(panels.begin(), panels.end(),
                [](const auto& x, const auto& y) { return x.a < y.a; });
      total = 0.0;
      total_error = 0.0;
      for (const auto& p : panels) {
        total += p.value;
        total_error += p.error;
      }
    }
  }

  // Deterministic final sum in left-to-right panel order.
  std::vector<internal::Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const auto& x, const auto& y) { return x.a < y.a; });
  IntegrationResult result;
  for (const auto& p : panels) {
    result.value += p.value;
    result.abs_error += p.error;
  }
  result.evaluations = evaluations;
  return result;
}

}  // namespace sgm_rdp

#endif  // SGM_RDP_QUADRATURE_H_
