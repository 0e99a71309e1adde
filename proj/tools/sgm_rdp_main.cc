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

// sgm-rdp: RDP accounting for the Sampled Gaussian Mechanism.
//
//   sgm-rdp rdp --q 0.01 --sigma 1.1 --orders default
//   sgm-rdp convert --q 0.01 --sigma 1.1 --steps 10000 --delta 1e-5
//   sgm-rdp calibrate --q 0.01 --steps 10000 --eps 2 --delta 1e-5
//   sgm-rdp sweep --q 0.2,0.1,0.05 --sigma 4,10 --orders 2,4,8 --output f.csv
//
// Exit codes: 0 success, 2 bad arguments or infeasible target, 3 numerical
// non-convergence.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_format.h"
#include "json.hpp"
#include "sgm_rdp/sgm_rdp.h"

namespace sgm_rdp {
namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct GlobalFlags {
  bool json = false;
  bool quiet = false;
};

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return kExitOk;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kOutOfRange:
      return kExitUsage;
    case absl::StatusCode::kResourceExhausted:
      return kExitNumerical;
    default:
      return kExitNumerical;
  }
}

int Fail(const GlobalFlags& g, const absl::Status& status) {
  if (!g.quiet) std::cerr << "sgm-rdp: " << status.message() << '\n';
  return ExitCodeFor(status);
}

absl::StatusOr<std::vector<double>> ParseList(std::string_view flag,
                                              std::string_view text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::optional<double> v = ParseDouble(text.substr(start, end - start));
    if (!v) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "--%s: cannot parse '%s'", std::string(flag),
          std::string(text.substr(start, end - start))));
    }
    values.push_back(*v);
    start = end + 1;
  }
  return values;
}

absl::StatusOr<std::vector<double>> ParseOrders(const std::string& text) {
  if (text == "default") return DefaultOrders();
  absl::StatusOr<std::vector<double>> orders = ParseList("orders", text);
  if (!orders.ok()) return orders.status();
  for (double a : *orders) {
    if (!IsValidOrder(a)) return InvalidOrderError(a);
  }
  return orders;
}

// "alpha:eps,alpha:eps,..."
absl::StatusOr<RdpCurve> ParseCurve(const std::string& text) {
  std::vector<RdpPoint> points;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    const std::string_view item =
        std::string_view(text).substr(start, end - start);
    const std::size_t colon = item.find(':');
    std::optional<double> alpha;
    std::optional<double> eps;
    if (colon != std::string_view::npos) {
      alpha = ParseDouble(item.substr(0, colon));
      eps = ParseDouble(item.substr(colon + 1));
    }
    if (!alpha || !eps) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "--curve: expected alpha:eps, got '%s'", std::string(item)));
    }
    points.push_back({*alpha, *eps});
    start = end + 1;
  }
  return RdpCurve::Create(std::move(points));
}

// Where a curve comes from: --curve, or --q/--sigma/--orders.
struct CurveSource {
  std::optional<double> q;
  std::optional<double> sigma;
  std::string orders = "default";
  std::string curve;

  void Register(CLI::App* cmd) {
    cmd->add_option("--q", q, "sampling rate in [0, 1]");
    cmd->add_option("--sigma", sigma, "noise multiplier (> 0)");
    cmd->add_option("--orders", orders,
                    "comma-separated orders > 1, or 'default'")
        ->capture_default_str();
    cmd->add_option("--curve", curve,
                    "explicit per-step curve alpha:eps,... instead of "
                    "--q/--sigma");
  }

  absl::StatusOr<RdpCurve> Build() const {
    if (!curve.empty()) {
      if (q || sigma) {
        return absl::InvalidArgumentError(
            "--curve cannot be combined with --q/--sigma");
      }
      return ParseCurve(curve);
    }
    if (!q || !sigma) {
      return absl::InvalidArgumentError(
          "either --curve or both --q and --sigma are required");
    }
    absl::StatusOr<SgmParams> params = SgmParams::Create(*q, *sigma);
    if (!params.ok()) return params.status();
    absl::StatusOr<std::vector<double>> alphas = ParseOrders(orders);
    if (!alphas.ok()) return alphas.status();
    return ComputeRdpCurve(*params, *alphas);
  }
};

void PrintCurve(const GlobalFlags& g, const RdpCurve& curve) {
  if (g.json) {
    json points = json::array();
    for (std::size_t i = 0; i < curve.size(); ++i) {
      points.push_back({{"order", curve.order(i)}, {"eps", curve.eps(i)}});
    }
    std::cout << json{{"steps", curve.steps()}, {"points", points}}.dump()
              << '\n';
    return;
  }
  if (!g.quiet) std::cout << "order eps\n";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    std::cout << FormatDouble(curve.order(i)) << ' '
              << FormatDouble(curve.eps(i)) << '\n';
  }
}

void PrintGuarantee(const GlobalFlags& g, const DpGuarantee& dp,
                    std::optional<double> sigma) {
  if (g.json) {
    json out = {{"eps", dp.eps},
                {"delta", dp.delta},
                {"best_order", dp.best_order}};
    if (sigma) out["sigma"] = *sigma;
    std::cout << out.dump() << '\n';
    return;
  }
  auto line = [&](std::string_view key, double value) {
    if (!g.quiet) std::cout << key << ' ';
    std::cout << FormatDouble(value) << '\n';
  };
  if (sigma) line("sigma", *sigma);
  line("eps", dp.eps);
  line("delta", dp.delta);
  line("best_order", dp.best_order);
}

void PrintSweep(const GlobalFlags& g, const std::vector<SweepRow>& rows,
                std::ostream& out) {
  if (!g.json) {
    WriteSweepCsv(out, rows);
    return;
  }
  json array = json::array();
  for (const SweepRow& r : rows) {
    array.push_back({{"q", r.q},
                     {"sigma", r.sigma},
                     {"alpha", r.alpha},
                     {"eps_exact", r.eps_exact},
                     {"eps_bound", r.eps_bound ? json(*r.eps_bound) : json()},
                     {"cond_alpha1", r.cond_alpha1},
                     {"cond_alpha2", r.cond_alpha2},
                     {"cond_range", r.cond_range}});
  }
  out << array.dump() << '\n';
}

int Run(int argc, char** argv) {
  CLI::App app{"RDP accountant for the Sampled Gaussian Mechanism"};
  app.set_version_flag("--version", "sgm-rdp 0.1.0");
  GlobalFlags g;
  app.add_flag("--json", g.json, "machine-readable JSON output");
  app.add_flag("--quiet", g.quiet,
               "bare values: no labels, headers or error messages");
  app.require_subcommand(1);

  // rdp
  CLI::App* rdp = app.add_subcommand("rdp", "per-step RDP curve");
  double rdp_q = 0.0;
  double rdp_sigma = 0.0;
  std::string rdp_orders = "default";
  rdp->add_option("--q", rdp_q, "sampling rate in [0, 1]")->required();
  rdp->add_option("--sigma", rdp_sigma, "noise multiplier (> 0)")->required();
  rdp->add_option("--orders", rdp_orders,
                  "comma-separated orders > 1, or 'default'")
      ->capture_default_str();

  // compose
  CLI::App* compose =
      app.add_subcommand("compose", "RDP curve after repeated application");
  CurveSource compose_src;
  compose_src.Register(compose);
  std::int64_t compose_steps = 1;
  compose->add_option("--steps", compose_steps, "number of steps (>= 1)")
      ->required();

  // convert
  CLI::App* convert =
      app.add_subcommand("convert", "(eps, delta)-DP from an RDP curve");
  CurveSource convert_src;
  convert_src.Register(convert);
  std::int64_t convert_steps = 1;
  double convert_delta = 0.0;
  convert->add_option("--steps", convert_steps, "number of steps (>= 1)")
      ->capture_default_str();
  convert->add_option("--delta", convert_delta, "target delta in (0, 1)")
      ->required();

  // calibrate
  CLI::App* calibrate = app.add_subcommand(
      "calibrate", "smallest sigma meeting an (eps, delta) target");
  double cal_q = 0.0;
  std::int64_t cal_steps = 1;
  double cal_eps = 0.0;
  double cal_delta = 0.0;
  std::string cal_orders = "default";
  CalibrationOptions cal_options;
  calibrate->add_option("--q", cal_q, "sampling rate in [0, 1]")->required();
  calibrate->add_option("--steps", cal_steps, "number of steps (>= 1)")
      ->required();
  calibrate->add_option("--eps", cal_eps, "target epsilon (> 0)")->required();
  calibrate->add_option("--delta", cal_delta, "target delta in (0, 1)")
      ->required();
  calibrate
      ->add_option("--orders", cal_orders,
                   "comma-separated orders > 1, or 'default'")
      ->capture_default_str();
  calibrate->add_option("--sigma-lo", cal_options.sigma_lo)
      ->capture_default_str();
  calibrate->add_option("--sigma-hi", cal_options.sigma_hi)
      ->capture_default_str();
  calibrate
      ->add_option("--sigma-max", cal_options.sigma_max,
                   "upper end grows x10 up to this before giving up")
      ->capture_default_str();

  // sweep
  CLI::App* sweep = app.add_subcommand(
      "sweep", "CSV of exact RDP vs. the closed-form bound over a grid");
  std::string sweep_q;
  std::string sweep_sigma;
  std::string sweep_orders = "default";
  std::string sweep_output;
  sweep->add_option("--q", sweep_q, "comma-separated sampling rates")
      ->required();
  sweep->add_option("--sigma", sweep_sigma, "comma-separated noise multipliers")
      ->required();
  sweep
      ->add_option("--orders", sweep_orders,
                   "comma-separated orders > 1, or 'default'")
      ->capture_default_str();
  sweep->add_option("--output", sweep_output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (rdp->parsed()) {
    absl::StatusOr<SgmParams> params = SgmParams::Create(rdp_q, rdp_sigma);
    if (!params.ok()) return Fail(g, params.status());
    absl::StatusOr<std::vector<double>> orders = ParseOrders(rdp_orders);
    if (!orders.ok()) return Fail(g, orders.status());
    absl::StatusOr<RdpCurve> curve = ComputeRdpCurve(*params, *orders);
    if (!curve.ok()) return Fail(g, curve.status());
    PrintCurve(g, *curve);
    return kExitOk;
  }

  if (compose->parsed()) {
    absl::StatusOr<RdpCurve> curve = compose_src.Build();
    if (!curve.ok()) return Fail(g, curve.status());
    absl::StatusOr<RdpCurve> composed = Compose(*curve, compose_steps);
    if (!composed.ok()) return Fail(g, composed.status());
    PrintCurve(g, *composed);
    return kExitOk;
  }

  if (convert->parsed()) {
    absl::StatusOr<RdpCurve> curve = convert_src.Build();
    if (!curve.ok()) return Fail(g, curve.status());
    absl::StatusOr<RdpCurve> composed = Compose(*curve, convert_steps);
    if (!composed.ok()) return Fail(g, composed.status());
    absl::StatusOr<DpGuarantee> dp = ToDp(*composed, convert_delta);
    if (!dp.ok()) return Fail(g, dp.status());
    PrintGuarantee(g, *dp, std::nullopt);
    return kExitOk;
  }

  if (calibrate->parsed()) {
    absl::StatusOr<std::vector<double>> orders = ParseOrders(cal_orders);
    if (!orders.ok()) return Fail(g, orders.status());
    absl::StatusOr<double> sigma = CalibrateSigma(
        cal_q, cal_steps, {cal_eps, cal_delta}, *orders, cal_options);
    if (!sigma.ok()) return Fail(g, sigma.status());
    // Report what the returned sigma actually achieves.
    absl::StatusOr<RdpCurve> curve =
        ComputeRdpCurve(*SgmParams::Create(cal_q, *sigma), *orders);
    if (!curve.ok()) return Fail(g, curve.status());
    absl::StatusOr<RdpCurve> composed = Compose(*curve, cal_steps);
    if (!composed.ok()) return Fail(g, composed.status());
    absl::StatusOr<DpGuarantee> dp = ToDp(*composed, cal_delta);
    if (!dp.ok()) return Fail(g, dp.status());
    PrintGuarantee(g, *dp, *sigma);
    return kExitOk;
  }

  if (sweep->parsed()) {
    SweepSpec spec;
    absl::StatusOr<std::vector<double>> qs = ParseList("q", sweep_q);
    if (!qs.ok()) return Fail(g, qs.status());
    absl::StatusOr<std::vector<double>> sigmas =
        ParseList("sigma", sweep_sigma);
    if (!sigmas.ok()) return Fail(g, sigmas.status());
    absl::StatusOr<std::vector<double>> orders = ParseOrders(sweep_orders);
    if (!orders.ok()) return Fail(g, orders.status());
    spec.q_values = *std::move(qs);
    spec.sigma_values = *std::move(sigmas);
    spec.orders = *std::move(orders);
    absl::StatusOr<std::vector<SweepRow>> rows = RunSweep(spec);
    if (!rows.ok()) return Fail(g, rows.status());
    if (sweep_output.empty()) {
      PrintSweep(g, *rows, std::cout);
    } else {
      std::ofstream out(sweep_output, std::ios::binary);
      if (!out) {
        return Fail(g, absl::InvalidArgumentError(
                           "cannot open --output file " + sweep_output));
      }
      PrintSweep(g, *rows, out);
    }
    return kExitOk;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace sgm_rdp

int main(int argc, char** argv) { return sgm_rdp::Run(argc, argv); }
