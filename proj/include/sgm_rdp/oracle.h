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

// Independent reference computations used to verify the accountant:
// direct quadrature of A_alpha and B_alpha, a Monte Carlo estimate of
// A_alpha, and pointwise checks of the inequalities behind A >= B and the
// closed-form bound. Nothing here shares code with the series in
// accountant.h.

#ifndef SGM_RDP_ORACLE_H_
#define SGM_RDP_ORACLE_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_format.h"
#include "sgm_rdp/format.h"
#include "sgm_rdp/log_math.h"
#include "sgm_rdp/quadrature.h"
#include "sgm_rdp/types.h"

namespace sgm_rdp {

struct QuadratureResult {
  double value = 1.0;       // A_alpha or B_alpha (may be +inf if huge)
  double log_value = 0.0;   // ln(value), always finite
  double excess = 0.0;      // value - 1, integrated directly
  double est_error = 0.0;   // absolute error estimate on excess and value
  std::int64_t evaluations = 0;
};

namespace internal {

// ln((1 + w)^e - 1 - e w) for w > -1 and e outside [0, 1], where the
// bracket is >= 0 by convexity. Returns -inf at w == 0.
inline long double LogPowerExcess(long double w, long double e) {
  using T = long double;
  if (w == 0) return kNegInf<T>;
  if (std::abs(w) <= T(0.1) && std::abs(e * w) <= T(1)) {
    // sum_{n >= 2} C(e, n) w^n
    T term = e * w;
    T sum = 0;
    for (int n = 2; n < 400; ++n) {
      term *= (e - T(n - 1)) / T(n) * w;
      sum += term;
      if (std::abs(term) <= T(1e-21) * std::abs(sum)) break;
    }
    if (sum <= 0) return kNegInf<T>;
    return std::log(sum);
  }
  const T v = e * std::log1p(w);
  if (v > 1) {
    const T rest = -std::exp(-v) * (1 + e * w);
    if (rest <= T(-1)) return kNegInf<T>;
    return v + std::log1p(rest);
  }
  const T g = std::expm1(v) - e * w;
  if (g <= 0) return kNegInf<T>;
  return std::log(g);
}

// Integrates mu0(z) [(1 + w(z))^e - 1 - e w(z)] with w = q (mu1/mu0 - 1),
// which is A_alpha - 1 for e = alpha and B_alpha - 1 for e = 1 - alpha.
inline absl::StatusOr<QuadratureResult> IntegrateExcess(const SgmParams& params,
                                                        double alpha,
                                                        double exponent,
                                                        double tol) {
  using T = long double;
  const T q = params.q();
  const T sigma = params.sigma();
  const T var = sigma * sigma;
  const T log_norm = std::log(sigma) + T(0.5) * std::log(2 * std::numbers::pi_v<T>);
  const T e = exponent;

  auto log_integrand = [&](double z) -> T {
    const T zz = z;
    const T w = q * std::expm1((2 * zz - 1) / (2 * var));
    return -zz * zz / (2 * var) - log_norm + LogPowerExcess(w, e);
  };

  // The A integrand is dominated by Gaussians centred between 0 and alpha
  // with standard deviation sigma; past K sigma beyond them the mass is
  // below ~tol/4 relative.
  double k_sigmas =
      std::sqrt(2.0 * std::log(4.0 / tol)) + alpha / params.sigma();
  for (int attempt = 0; attempt < 6; ++attempt, k_sigmas *= 1.5) {
    const double lo = std::min(0.0, alpha) - params.sigma() * k_sigmas;
    const double hi = std::max(1.0, alpha) + params.sigma() * k_sigmas;

    // Shift by the largest log-integrand on a coarse grid so that the
    // exponentiated integrand stays in range.
    constexpr int kScan = 4001;
    T shift = kNegInf<T>;
    for (int i = 0; i < kScan; ++i) {
      const double z = lo + (hi - lo) * i / (kScan - 1);
      shift = std::max(shift, log_integrand(z));
    }
    if (shift == kNegInf<T>) {
      QuadratureResult zero;
      return zero;
    }

    auto f = [&](double z) -> double {
      return static_cast<double>(std::exp(log_integrand(z) - shift));
    };
    IntegrationOptions options;
    options.rel_tol = tol;
    options.initial_panels = std::clamp(
        static_cast<int>(std::ceil((hi - lo) / (0.25 * params.sigma()))), 32,
        4000);
    absl::StatusOr<IntegrationResult> r = IntegrateAdaptive(f, lo, hi, options);
    if (!r.ok()) return r.status();
    if (!(r->value > 0.0)) {
      return absl::InternalError("quadrature of a positive integrand was <= 0");
    }

    // Tail check: the integrand at the cut points, times a few sigma, must
    // be negligible against the tolerance.
    const double tail = (f(lo) + f(hi)) * 4.0 * params.sigma();
    if (tail > 1e-3 * tol * r->value) continue;

    QuadratureResult out;
    const T log_excess = shift + std::log(static_cast<T>(r->value));
    const T log_error_scale = shift;
    out.evaluations = r->evaluations + kScan;
    out.excess = static_cast<double>(std::exp(log_excess));
    out.est_error =
        static_cast<double>(std::exp(log_error_scale) * r->abs_error);
    // ln(1 + excess)
    out.log_value = static_cast<double>(
        log_excess > 0 ? log_excess + std::log1p(std::exp(-log_excess))
                       : std::log1p(std::exp(log_excess)));
    out.value = std::exp(out.log_value);
    return out;
  }
  return ToleranceNotMetError(
      "integration domain could not be widened enough to capture the tails");
}

inline absl::Status CheckQuadArgs(double alpha, double tol) {
  if (!IsValidOrder(alpha)) return InvalidOrderError(alpha);
  if (!(tol > 0.0 && tol < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("tolerance must lie in (0, 1), got %.17g", tol));
  }
  return absl::OkStatus();
}

// A and B coincide at q = 1: both are exp((alpha^2 - alpha) / (2 sigma^2)).
inline QuadratureResult PlainGaussianResult(const SgmParams& params,
                                            double alpha) {
  QuadratureResult out;
  out.log_value =
      (alpha * alpha - alpha) / (2.0 * params.sigma() * params.sigma());
  out.value = std::exp(out.log_value);
  out.excess = std::expm1(out.log_value);
  return out;
}

}  // namespace internal

// A_alpha = int mu0(z) ((1 - q) + q mu1(z)/mu0(z))^alpha dz by adaptive
// quadrature. The integrand is evaluated in log space. q = 0 and q = 1 are
// answered analytically.
inline absl::StatusOr<QuadratureResult> QuadA(const SgmParams& params,
                                              double alpha, double tol) {
  if (absl::Status s = internal::CheckQuadArgs(alpha, tol); !s.ok()) return s;
  if (params.q() == 0.0) return QuadratureResult{};
  if (params.q() == 1.0) return internal::PlainGaussianResult(params, alpha);
  return internal::IntegrateExcess(params, alpha, alpha, tol);
}

// B_alpha = int mu(z) (mu0(z)/mu(z))^alpha dz
//         = int mu0(z) ((1 - q) + q mu1(z)/mu0(z))^(1 - alpha) dz.
inline absl::StatusOr<QuadratureResult> QuadB(const SgmParams& params,
                                              double alpha, double tol) {
  if (absl::Status s = internal::CheckQuadArgs(alpha, tol); !s.ok()) return s;
  if (params.q() == 0.0) return QuadratureResult{};
  if (params.q() == 1.0) return internal::PlainGaussianResult(params, alpha);
  return internal::IntegrateExcess(params, alpha, 1.0 - alpha, tol);
}

struct McEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

// Monte Carlo estimate of A_alpha from z ~ N(0, sigma^2). Deterministic for
// a given seed within one build (mt19937_64 with std::normal_distribution).
inline absl::StatusOr<McEstimate> McEstimateA(const SgmParams& params,
                                              double alpha,
                                              std::int64_t samples,
                                              std::uint64_t seed) {
  if (!IsValidOrder(alpha)) return InvalidOrderError(alpha);
  if (samples < 10'000) {
    return absl::InvalidArgumentError(
        absl::StrFormat("need at least 10^4 samples, got %d", samples));
  }
  const double q = params.q();
  const double sigma = params.sigma();
  const double var = sigma * sigma;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, sigma);
  // Welford running mean and variance.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::int64_t i = 0; i < samples; ++i) {
    const double z = normal(rng);
    const double x =
        std::pow((1.0 - q) + q * std::exp((2.0 * z - 1.0) / (2.0 * var)),
                 alpha);
    const double delta = x - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (x - mean);
  }
  const double n = static_cast<double>(samples);
  McEstimate out;
  out.mean = mean;
  out.standard_error = std::sqrt(m2 / (n - 1.0) / n);
  return out;
}

// Pointwise dominance behind A_alpha >= B_alpha. With P_q = (1-q) u + q v and
// Q_q = (1-q) v + q u, checks
//   v (P_q/v)^a + u (Q_q/u)^a >= P_q (v/P_q)^a + Q_q (u/Q_q)^a
// up to a relative rounding slack of 1e-12.
inline bool CheckPointwiseLemma(double u, double v, double q, double alpha) {
  using T = long double;
  const T lu = std::log(static_cast<T>(u));
  const T lv = std::log(static_cast<T>(v));
  const T a = alpha;
  const T lp = LogAddExp(std::log1p(-static_cast<T>(q)) + lu,
                         std::log(static_cast<T>(q)) + lv);
  const T lq = LogAddExp(std::log1p(-static_cast<T>(q)) + lv,
                         std::log(static_cast<T>(q)) + lu);
  const T lhs = LogAddExp(lv + a * (lp - lv), lu + a * (lq - lu));
  const T rhs = LogAddExp(lp + a * (lv - lp), lq + a * (lu - lq));
  return rhs - lhs <= std::log1p(T(1e-12));
}

// The symmetric two-point inequality used for A^(1): for 1/r0 <= u/v <= r0
// with r0 = 1 + 1/(q (alpha - 1)),
//   v y^a + u z^a <= (u + v) + q^2 a (a - 1) (u^2/v + v^2/u - (u + v)),
// y = (1 - q) + q u/v, z = (1 - q) + q v/u. Checked with relative slack
// 1e-12. Outside the ratio window the inequality is not claimed.
inline bool CheckSymmetricLemma(double u, double v, double q, double alpha) {
  using T = long double;
  const T uu = u;
  const T vv = v;
  const T qq = q;
  const T a = alpha;
  const T y = (1 - qq) + qq * uu / vv;
  const T z = (1 - qq) + qq * vv / uu;
  const T lhs = vv * std::pow(y, a) + uu * std::pow(z, a);
  const T spread = uu * uu / vv + vv * vv / uu - (uu + vv);
  const T rhs = (uu + vv) + qq * qq * a * (a - 1) * spread;
  return lhs <= rhs * (1 + T(1e-12));
}

// Regression fixture: one oracle value at (q, sigma, alpha) and the
// tolerance it was computed with.
struct FixtureRecord {
  double q;
  double sigma;
  double alpha;
  double value;
  double tol;
};

// Plain text, one record per line: "q sigma alpha value tol". Lines starting
// with '#' are comments.
inline void WriteFixtures(std::ostream& out,
                          const std::vector<FixtureRecord>& records) {
  out << "# q sigma alpha value tol\n";
  for (const FixtureRecord& r : records) {
    out << FormatDouble(r.q) << ' ' << FormatDouble(r.sigma) << ' '
        << FormatDouble(r.alpha) << ' ' << FormatDouble(r.value) << ' '
        << FormatDouble(r.tol) << '\n';
  }
}

inline absl::StatusOr<std::vector<FixtureRecord>> ReadFixtures(
    std::istream& in) {
  std::vector<FixtureRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string token;
    std::vector<double> values;
    while (fields >> token) {
      std::optional<double> v = ParseDouble(token);
      if (!v) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "fixture line %d: cannot parse '%s'", line_no, token));
      }
      values.push_back(*v);
    }
    if (values.size() != 5) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "fixture line %d: expected 5 fields, got %d", line_no,
          values.size()));
    }
    records.push_back(
        {values[0], values[1], values[2], values[3], values[4]});
  }
  return records;
}

}  // namespace sgm_rdp

#endif  // SGM_RDP_ORACLE_H_
