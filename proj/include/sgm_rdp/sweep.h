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

// Grid sweep comparing exact RDP with the closed-form bound, rendered as CSV.

#ifndef SGM_RDP_SWEEP_H_
#define SGM_RDP_SWEEP_H_

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_format.h"
#include "sgm_rdp/accountant.h"
#include "sgm_rdp/closed_form.h"
#include "sgm_rdp/format.h"
#include "sgm_rdp/types.h"

namespace sgm_rdp {

struct SweepSpec {
  std::vector<double> q_values;
  std::vector<double> sigma_values;
  std::vector<double> orders;
};

struct SweepRow {
  double q;
  double sigma;
  double alpha;
  double eps_exact;
  std::optional<double> eps_bound;
  bool cond_alpha1;
  bool cond_alpha2;
  bool cond_range;
};

inline constexpr std::string_view kSweepCsvHeader =
    "q,sigma,alpha,eps_exact,eps_bound,cond_alpha1,cond_alpha2,cond_range";

// Rows ordered q (outer), sigma, alpha (inner), in the order given.
inline absl::StatusOr<std::vector<SweepRow>> RunSweep(const SweepSpec& spec) {
  if (spec.q_values.empty() || spec.sigma_values.empty() ||
      spec.orders.empty()) {
    return absl::InvalidArgumentError("sweep lists must not be empty");
  }
  for (double alpha : spec.orders) {
    if (!IsValidOrder(alpha)) return InvalidOrderError(alpha);
  }
  std::vector<SweepRow> rows;
  rows.reserve(spec.q_values.size() * spec.sigma_values.size() *
               spec.orders.size());
  for (double q : spec.q_values) {
    for (double sigma : spec.sigma_values) {
      absl::StatusOr<SgmParams> params = SgmParams::Create(q, sigma);
      if (!params.ok()) return params.status();
      for (double alpha : spec.orders) {
        absl::StatusOr<double> eps = ComputeRdp(*params, alpha);
        if (!eps.ok()) return eps.status();
        absl::StatusOr<BoundReport> bound = ClosedFormBound(*params, alpha);
        if (!bound.ok()) return bound.status();
        rows.push_back({q, sigma, alpha, *eps, bound->eps_bound,
                        bound->cond_alpha1, bound->cond_alpha2,
                        bound->cond_range});
      }
    }
  }
  return rows;
}

inline void WriteSweepCsv(std::ostream& out, const std::vector<SweepRow>& rows) {
  auto flag = [](bool b) { return b ? "true" : "false"; };
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    out << FormatDouble(r.q) << ',' << FormatDouble(r.sigma) << ','
        << FormatDouble(r.alpha) << ',' << FormatDouble(r.eps_exact) << ','
        << (r.eps_bound ? FormatDouble(*r.eps_bound) : "") << ','
        << flag(r.cond_alpha1) << ',' << flag(r.cond_alpha2) << ','
        << flag(r.cond_range) << '\n';
  }
}

// Parses CSV produced by WriteSweepCsv.
inline absl::StatusOr<std::vector<SweepRow>> ReadSweepCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSweepCsvHeader) {
    return absl::InvalidArgumentError("sweep CSV: missing or wrong header");
  }
  auto parse_flag = [](std::string_view s) -> std::optional<bool> {
    if (s == "true") return true;
    if (s == "false") return false;
    return std::nullopt;
  };
  std::vector<SweepRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.emplace_back();
    if (fields.size() != 8) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "sweep CSV line %d: expected 8 fields, got %d", line_no,
          fields.size()));
    }
    std::optional<double> q = ParseDouble(fields[0]);
    std::optional<double> sigma = ParseDouble(fields[1]);
    std::optional<double> alpha = ParseDouble(fields[2]);
    std::optional<double> eps = ParseDouble(fields[3]);
    std::optional<double> bound;
    if (!fields[4].empty()) bound = ParseDouble(fields[4]);
    std::optional<bool> a1 = parse_flag(fields[5]);
    std::optional<bool> a2 = parse_flag(fields[6]);
    std::optional<bool> range = parse_flag(fields[7]);
    if (!q || !sigma || !alpha || !eps || (!fields[4].empty() && !bound) ||
        !a1 || !a2 || !range) {
      return absl::InvalidArgumentError(
          absl::StrFormat("sweep CSV line %d: malformed field", line_no));
    }
    rows.push_back({*q, *sigma, *alpha, *eps, bound, *a1, *a2, *range});
  }
  return rows;
}

// Per (q, sigma): the largest swept order up to which both order conditions
// hold, and the largest up to which eps_exact <= 2 q^2 alpha / sigma^2. Each
// is the end of the leading run of passing orders; 1 if the first order
// fails. Assumes rows in RunSweep order with ascending orders.
struct MaxOrderSummary {
  double q;
  double sigma;
  double max_alpha_conditions;
  double max_alpha_exact;
};

inline std::vector<MaxOrderSummary> SummarizeMaxOrders(
    const std::vector<SweepRow>& rows) {
  std::vector<MaxOrderSummary> out;
  bool conditions_run = false;
  bool exact_run = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    if (i == 0 || r.q != rows[i - 1].q || r.sigma != rows[i - 1].sigma) {
      out.push_back({r.q, r.sigma, 1.0, 1.0});
      conditions_run = true;
      exact_run = true;
    }
    MaxOrderSummary& s = out.back();
    conditions_run = conditions_run && r.cond_alpha1 && r.cond_alpha2;
    if (conditions_run) s.max_alpha_conditions = r.alpha;
    const double bound = 2.0 * r.q * r.q * r.alpha / (r.sigma * r.sigma);
    exact_run = exact_run && r.eps_exact <= bound;
    if (exact_run) s.max_alpha_exact = r.alpha;
  }
  return out;
}

}  // namespace sgm_rdp

#endif  // SGM_RDP_SWEEP_H_
