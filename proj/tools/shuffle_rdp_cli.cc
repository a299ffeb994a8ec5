// Copyright 2026 The Shuffle RDP Authors
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
// Command-line surface: closed-form bounds, curve sweeps to CSV,
// RDP->DP conversion, adaptive composition, and the verification
// suites.
//
// Exit codes: 0 success, 1 failed verification, 2 usage, 3 violated
// precondition, 4 I/O failure.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "shuffle_rdp/accountant.h"
#include "shuffle_rdp/bounds.h"
#include "shuffle_rdp/errors.h"
#include "shuffle_rdp/numerics.h"
#include "shuffle_rdp/verify.h"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitIo = 4;
constexpr std::uint64_t kDefaultSeed = 1729;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string FormatValue(double value, const char* fmt) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), fmt, value);
  return buffer;
}

std::vector<shuffle_rdp::BoundMethod> ParseMethodsCsv(
    const std::string& methods_csv) {
  std::vector<shuffle_rdp::BoundMethod> methods;
  std::string token;
  std::stringstream stream(methods_csv);
  while (std::getline(stream, token, ',')) {
    const auto method = shuffle_rdp::ParseBoundMethod(token);
    if (!method.has_value()) {
      throw CLI::ValidationError("--methods", "unknown method: " + token);
    }
    methods.push_back(*method);
  }
  if (methods.empty()) {
    throw CLI::ValidationError("--methods", "at least one method is required");
  }
  return methods;
}

std::uint64_t DefaultVerifySeed() {
  if (const char* env = std::getenv("SHUFFLE_RDP_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return kDefaultSeed;
}

int RunBound(double eps0, std::int64_t n, double lambda,
             const std::string& method_name) {
  const auto method = shuffle_rdp::ParseBoundMethod(method_name);
  if (!method.has_value()) {
    throw CLI::ValidationError("--method", "unknown method: " + method_name);
  }
  const shuffle_rdp::ShuffleParams params{eps0, n};
  const double value = shuffle_rdp::EvaluateBound(params, *method, lambda);
  std::printf("%s\n", FormatValue(value, "%.12g").c_str());
  return 0;
}

int RunCurve(double eps0, std::int64_t n, std::int64_t lambda_max,
             const std::string& methods_csv, const std::string& out_path) {
  const std::vector<shuffle_rdp::BoundMethod> methods =
      ParseMethodsCsv(methods_csv);
  const shuffle_rdp::ShuffleParams params{eps0, n};

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw IoError("cannot open output path: " + out_path);
  out << "lambda";
  for (const auto method : methods) {
    out << "," << shuffle_rdp::BoundMethodName(method);
  }
  out << "\n";
  for (std::int64_t lambda = 2; lambda <= lambda_max; ++lambda) {
    out << lambda;
    for (const auto method : methods) {
      double value = shuffle_rdp::kPosInf;
      try {
        value = shuffle_rdp::EvaluateBound(params, method,
                                           static_cast<double>(lambda));
      } catch (const shuffle_rdp::PreconditionError&) {
        // Out-of-domain cell (e.g. the simplified-bound guard).
      }
      out << ",";
      if (std::isfinite(value)) {
        out << FormatValue(value, "%.15g");
      } else {
        out << "inf";
      }
    }
    out << "\n";
  }
  out.flush();
  if (!out) throw IoError("failed writing output path: " + out_path);
  return 0;
}

int RunConvert(double eps0, std::int64_t n, std::optional<double> delta,
               std::optional<double> eps, std::int64_t lambda_max) {
  const shuffle_rdp::ShuffleParams params{eps0, n};
  const std::vector<shuffle_rdp::RdpOrder> grid =
      shuffle_rdp::DefaultLambdaGrid(static_cast<double>(lambda_max));
  const shuffle_rdp::RdpCurve curve =
      shuffle_rdp::BestUpperCurve(params, grid);
  shuffle_rdp::Conversion conv;
  const char* label = nullptr;
  if (delta.has_value()) {
    conv = shuffle_rdp::EpsForDelta(curve, *delta);
    label = "eps";
  } else {
    conv = shuffle_rdp::DeltaForEps(curve, *eps);
    label = "delta";
  }
  std::printf("%s %s\n", label, FormatValue(conv.value, "%.12g").c_str());
  std::printf("lambda %s\n", FormatValue(conv.order.value, "%g").c_str());
  if (conv.clamped) std::printf("clamped true\n");
  return 0;
}

int RunCompose(double eps0, std::int64_t n, std::int64_t rounds, double delta,
               std::int64_t lambda_max) {
  const shuffle_rdp::ShuffleParams params{eps0, n};
  const std::vector<shuffle_rdp::RdpOrder> grid =
      shuffle_rdp::DefaultLambdaGrid(static_cast<double>(lambda_max));
  const shuffle_rdp::ComposedGuarantee result =
      shuffle_rdp::ComposeAndConvert(params, rounds, delta, grid);
  std::printf("eps %s\n", FormatValue(result.dp.epsilon, "%.12g").c_str());
  std::printf("delta %s\n", FormatValue(result.dp.delta, "%.12g").c_str());
  std::printf("lambda %s\n", FormatValue(result.order.value, "%g").c_str());
  if (result.clamped) std::printf("clamped true\n");
  return 0;
}

int RunVerify(const std::string& suite, std::uint64_t seed) {
  const std::vector<shuffle_rdp::SuiteReport> reports =
      shuffle_rdp::RunSuites(suite, seed);
  bool all_pass = true;
  for (const shuffle_rdp::SuiteReport& report : reports) {
    for (const shuffle_rdp::PropertyResult& result : report.results) {
      std::printf("%s %s: %s\n", result.pass ? "PASS" : "FAIL",
                  report.suite.c_str(), result.name.c_str());
      all_pass = all_pass && result.pass;
    }
  }
  return all_pass ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Renyi-DP accounting for the shuffled model of local DP"};
  app.require_subcommand(1);

  double eps0 = 0.0;
  std::int64_t n = 1;
  double lambda = 2.0;
  std::int64_t lambda_max = 1024;
  std::string method = "best";
  std::string methods_csv = "ub1,ub2,lb,lb_simple,erlingsson,best";
  std::string out_path;
  std::optional<double> delta_flag;
  std::optional<double> eps_flag;
  std::int64_t rounds = 1;
  std::string suite = "all";
  std::uint64_t seed = DefaultVerifySeed();

  CLI::App* bound = app.add_subcommand("bound", "print one bound value");
  bound->add_option("--eps0", eps0, "local privacy parameter")->required();
  bound->add_option("--n", n, "number of clients")->required();
  bound->add_option("--lambda", lambda, "Renyi order")->required();
  bound->add_option("--method", method,
                    "ub1|ub1_simplified|ub2|lb|lb_simple|erlingsson|best")
      ->required();

  CLI::App* curve = app.add_subcommand("curve", "sweep orders to a CSV file");
  curve->add_option("--eps0", eps0)->required();
  curve->add_option("--n", n)->required();
  curve->add_option("--lambda-max", lambda_max, "largest integer order")
      ->required()
      ->check(CLI::Range(static_cast<std::int64_t>(2),
                         static_cast<std::int64_t>(1000000)));
  curve->add_option("--methods", methods_csv, "comma-separated method list");
  curve->add_option("--out", out_path, "output CSV path")->required();

  CLI::App* convert = app.add_subcommand(
      "convert", "optimize the RDP->DP conversion over the order grid");
  convert->add_option("--eps0", eps0)->required();
  convert->add_option("--n", n)->required();
  CLI::Option* delta_opt = convert->add_option("--delta", delta_flag,
                                               "target delta in (0, 1)");
  CLI::Option* eps_opt = convert->add_option("--eps", eps_flag,
                                             "target eps > 0");
  delta_opt->excludes(eps_opt);
  convert->add_option("--lambda-max", lambda_max);

  CLI::App* compose = app.add_subcommand(
      "compose", "compose identical rounds and convert at delta");
  compose->add_option("--eps0", eps0)->required();
  compose->add_option("--n", n)->required();
  compose->add_option("--T", rounds, "number of adaptive rounds")
      ->required()
      ->check(CLI::PositiveNumber);
  compose->add_option("--delta", delta_flag, "target delta in (0, 1)")
      ->required();
  compose->add_option("--lambda-max", lambda_max);

  CLI::App* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("--suite", suite,
                     "oracle|moments|mixture|monotonic|sandwich|gamma|all")
      ->required()
      ->check(CLI::IsMember({"oracle", "moments", "mixture", "monotonic",
                             "sandwich", "gamma", "all"}));
  verify->add_option("--seed", seed, "RNG seed (SHUFFLE_RDP_SEED overrides "
                                     "the built-in default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (bound->parsed()) return RunBound(eps0, n, lambda, method);
    if (curve->parsed()) {
      return RunCurve(eps0, n, lambda_max, methods_csv, out_path);
    }
    if (convert->parsed()) {
      if (delta_flag.has_value() == eps_flag.has_value()) {
        std::fprintf(stderr,
                     "convert needs exactly one of --delta or --eps\n");
        return kExitUsage;
      }
      return RunConvert(eps0, n, delta_flag, eps_flag, lambda_max);
    }
    if (compose->parsed()) {
      return RunCompose(eps0, n, rounds, *delta_flag, lambda_max);
    }
    if (verify->parsed()) return RunVerify(suite, seed);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitUsage;
  } catch (const shuffle_rdp::PreconditionError& e) {
    std::fprintf(stderr, "precondition violated: %s\n", e.what());
    return kExitPrecondition;
  } catch (const IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kExitIo;
  }
  return kExitUsage;
}
