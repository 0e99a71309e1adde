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

// Signed log-space arithmetic and log-domain special functions. Every series
// in the accountant is accumulated through these helpers so that terms whose
// magnitudes span thousands of orders of magnitude never over- or underflow.
//
// All functions are templates over the floating point type. The accountant
// runs its series in long double; the public double overloads are what the
// rest of the library and the CLI use.

#ifndef SGM_RDP_LOG_MATH_H_
#define SGM_RDP_LOG_MATH_H_

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numbers>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_format.h"

namespace sgm_rdp {

template <std::floating_point T>
inline constexpr T kNegInf = -std::numeric_limits<T>::infinity();

// ln(e^a + e^b). Either argument may be -inf.
template <std::floating_point T>
T LogAddExp(T a, T b) {
  if (a < b) std::swap(a, b);
  if (b == kNegInf<T>) return a;
  return a + std::log1p(std::exp(b - a));
}

// ln(e^a - e^b) for a >= b. Returns -inf when a == b. A call with a < b
// means a sign was lost upstream and is reported as an error.
template <std::floating_point T>
absl::StatusOr<T> LogSubExp(T a, T b) {
  if (std::isnan(a) || std::isnan(b) || a < b) {
    return absl::InternalError(
        absl::StrFormat("LogSubExp: requires a >= b, got a=%.17g b=%.17g",
                        static_cast<double>(a), static_cast<double>(b)));
  }
  if (b == kNegInf<T>) return a;
  if (a == b) return kNegInf<T>;
  const T d = b - a;
  // log(-expm1(d)) is accurate near d = 0, log1p(-exp(d)) for d << 0.
  if (d > -std::numbers::ln2_v<T>) return a + std::log(-std::expm1(d));
  return a + std::log1p(-std::exp(d));
}

// A real number stored as a sign and the log of its magnitude.
//
// Invariant: sign == 0 exactly when log_magnitude == -inf.
template <std::floating_point T>
class BasicSignedLog {
 public:
  constexpr BasicSignedLog() = default;

  static BasicSignedLog FromReal(T x) {
    if (x == 0) return BasicSignedLog();
    return BasicSignedLog(x > 0 ? 1 : -1, std::log(std::abs(x)));
  }

  // Builds from parts, normalizing so that a -inf magnitude carries sign 0.
  static BasicSignedLog FromParts(int sign, T log_magnitude) {
    if (sign == 0 || log_magnitude == kNegInf<T>) return BasicSignedLog();
    return BasicSignedLog(sign > 0 ? 1 : -1, log_magnitude);
  }

  static constexpr BasicSignedLog Zero() { return BasicSignedLog(); }

  int sign() const { return sign_; }
  T log_magnitude() const { return log_magnitude_; }
  bool is_zero() const { return sign_ == 0; }

  template <std::floating_point U = double>
  U ToReal() const {
    if (sign_ == 0) return U{0};
    return static_cast<U>(sign_ * std::exp(log_magnitude_));
  }

  BasicSignedLog operator*(const BasicSignedLog& other) const {
    if (is_zero() || other.is_zero()) return BasicSignedLog();
    return BasicSignedLog(sign_ * other.sign_,
                          log_magnitude_ + other.log_magnitude_);
  }

  BasicSignedLog operator-() const {
    return BasicSignedLog(-sign_, log_magnitude_);
  }

 private:
  constexpr BasicSignedLog(int sign, T log_magnitude)
      : sign_(sign), log_magnitude_(log_magnitude) {}

  int sign_ = 0;
  T log_magnitude_ = kNegInf<T>;
};

// The magnitude is kept in extended precision: a double log-magnitude near
// ln(1e300) only resolves the value to ~1e-13 relative.
using SignedLog = BasicSignedLog<long double>;

// Sums a mixed-sign sequence as two positive log-sums that are combined once,
// in Result(), by a single subtraction.
template <std::floating_point T>
class SignedLogSum {
 public:
  void Add(int sign, T log_magnitude) {
    if (sign > 0) {
      positive_ = LogAddExp(positive_, log_magnitude);
    } else if (sign < 0) {
      negative_ = LogAddExp(negative_, log_magnitude);
    }
  }

  void Add(const BasicSignedLog<T>& x) { Add(x.sign(), x.log_magnitude()); }

  T log_positive() const { return positive_; }
  T log_negative() const { return negative_; }

  BasicSignedLog<T> Result() const {
    if (positive_ >= negative_) {
      auto mag = LogSubExp(positive_, negative_);
      return BasicSignedLog<T>::FromParts(1, *mag);
    }
    auto mag = LogSubExp(negative_, positive_);
    return BasicSignedLog<T>::FromParts(-1, *mag);
  }

 private:
  T positive_ = kNegInf<T>;
  T negative_ = kNegInf<T>;
};

// Generalized binomial coefficient C(alpha, k) = alpha (alpha-1) ...
// (alpha-k+1) / k!, as a running sum of ln|alpha - i| - ln(i + 1). For integer
// alpha and k > alpha one factor is exactly zero and the result is zero.
template <std::floating_point T>
BasicSignedLog<T> LogBinom(T alpha, std::int64_t k) {
  int sign = 1;
  T log_mag = 0;
  for (std::int64_t i = 0; i < k; ++i) {
    const T factor = alpha - static_cast<T>(i);
    if (factor == 0) return BasicSignedLog<T>::Zero();
    if (factor < 0) sign = -sign;
    log_mag += std::log(std::abs(factor)) - std::log(static_cast<T>(i + 1));
  }
  return BasicSignedLog<T>::FromParts(sign, log_mag);
}

namespace internal {

// ln erfc(x) = -x^2 - ln(x sqrt(pi)) + ln(1 + sum_n (-1)^n (2n-1)!! / (2x^2)^n)
// for large positive x.
template <std::floating_point T>
T LogErfcAsymptotic(T x) {
  const T cutoff = std::min<T>(T(1e-17), std::numeric_limits<T>::epsilon() / 8);
  const T inv_two_x2 = T(1) / (T(2) * x * x);
  T term = 1;
  T sum = 1;
  for (int n = 1; n < 1000; ++n) {
    const T next = -term * T(2 * n - 1) * inv_two_x2;
    if (std::abs(next) >= std::abs(term)) break;  // series turned divergent
    term = next;
    sum += term;
    if (std::abs(term) < cutoff * std::abs(sum)) break;
  }
  return -x * x - std::log(x) - T(0.5) * std::log(std::numbers::pi_v<T>) +
         std::log(sum);
}

}  // namespace internal

// ln(erfc(x)), finite for every finite x. Direct evaluation is used until
// erfc(x) approaches the smallest normal number of T, then the asymptotic
// expansion takes over.
template <std::floating_point T>
T LogErfc(T x) {
  if (std::isnan(x)) return x;
  if (x == std::numeric_limits<T>::infinity()) return kNegInf<T>;
  const T direct = std::erfc(x);
  if (direct > std::numeric_limits<T>::min() * T(1e10)) return std::log(direct);
  return internal::LogErfcAsymptotic(x);
}

}  // namespace sgm_rdp

#endif  // SGM_RDP_LOG_MATH_H_
