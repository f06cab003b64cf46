// Copyright 2026 The qcorr Authors
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

#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "qcorr/cli.hpp"
#include "qcorr/invariance.hpp"
#include "qcorr/models.hpp"

namespace {

using namespace qcorr;

bool parse_axis(const std::vector<std::string>& raw, cli::AxisSpec& axis,
                std::string& error) {
  if (raw.size() != 3) {
    error = "axis takes three values: NAME MIN MAX";
    return false;
  }
  axis.name = raw[0];
  try {
    std::size_t used = 0;
    axis.min = std::stod(raw[1], &used);
    if (used != raw[1].size()) throw std::invalid_argument(raw[1]);
    axis.max = std::stod(raw[2], &used);
    if (used != raw[2].size()) throw std::invalid_argument(raw[2]);
  } catch (const std::exception&) {
    error = "axis bounds must be numbers, got \"" + raw[1] + "\" \"" + raw[2] +
            "\"";
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-qubit geometric-discord toolkit"};
  app.require_subcommand(1);
  int threads_flag = 0;
  app.add_option("--threads", threads_flag,
                 "worker threads (0 = QCG_THREADS env or hardware)");

  // compute
  auto* compute = app.add_subcommand(
      "compute", "geometric measure of one state (JSON to stdout)");
  cli::ComputeOptions copt;
  compute->add_option("--in", copt.in_path, "state or model JSON file")
      ->required();
  compute->add_option("--method", copt.method, "auto | alternating | grid");
  compute->add_option("--restarts", copt.cfg.restarts, "optimizer restarts");
  compute->add_option("--grid-res", copt.grid_res,
                      "grid resolution for --method grid");

  // transform
  auto* transform = app.add_subcommand(
      "transform", "Hadamard-conjugate a state (CS <-> X)");
  cli::TransformOptions topt;
  transform->add_option("--in", topt.in_path, "state JSON file")->required();
  transform->add_option("--out", topt.out_path, "output state JSON file")
      ->required();

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "grid sweep of a model, CSV output");
  cli::SweepSpec sspec;
  int figure = 0;
  std::vector<std::string> axis1_raw, axis2_raw;
  geodisc::OptimizerConfig sweep_cfg;
  sweep->add_option("--figure", figure, "preset 1..5 (overrides --model)");
  sweep->add_option("--model", sspec.model, "nanopore | xxzdm");
  sweep->add_option("--N", sspec.nano.N, "nanopore spin count");
  sweep->add_option("--D", sspec.nano.D, "nanopore coupling");
  sweep->add_option("--t", sspec.nano.t, "nanopore time (fixed)");
  sweep->add_option("--beta", sspec.nano.beta,
                    "nanopore inverse temperature (fixed)");
  sweep->add_option("--J", sspec.xxz.J, "XXZ planar coupling");
  sweep->add_option("--Jz", sspec.xxz.Jz, "XXZ axial coupling");
  sweep->add_option("--Dx", sspec.xxz.Dx, "DM coupling");
  sweep->add_option("--T", sspec.xxz.T, "temperature (fixed)");
  sweep->add_option("--axis1", axis1_raw, "swept axis: NAME MIN MAX")
      ->expected(3);
  sweep->add_option("--axis2", axis2_raw, "second swept axis: NAME MIN MAX")
      ->expected(3);
  sweep->add_option("--steps", sspec.steps, "points per axis (>= 2)");
  sweep->add_option("--out", sspec.out_path, "output CSV path")->required();
  sweep->add_option("--restarts", sweep_cfg.restarts, "optimizer restarts");

  // verify
  auto* verify = app.add_subcommand(
      "verify", "invariance suite + oracle equivalence, report JSON");
  cli::VerifyOptions vopt;
  verify->add_option("--seed", vopt.seed, "RNG seed");
  verify->add_option("--samples", vopt.samples, "samples per family");
  verify->add_option("--out", vopt.out_path, "also write the report here");
  verify->add_option("--restarts", vopt.cfg.restarts, "optimizer restarts");
  verify->add_option("--oracle-res", vopt.oracle_resolution,
                     "grid-oracle resolution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitBadInput;
  }

  const int threads = cli::resolve_threads(threads_flag);
  try {
    if (compute->parsed()) {
      return cli::cmd_compute(copt, std::cout, std::cerr);
    }
    if (transform->parsed()) {
      return cli::cmd_transform(topt, std::cerr);
    }
    if (sweep->parsed()) {
      std::string axis_error;
      if (!axis1_raw.empty()) {
        cli::AxisSpec axis;
        if (!parse_axis(axis1_raw, axis, axis_error)) {
          std::cerr << "error: " << axis_error << "\n";
          return cli::kExitBadInput;
        }
        sspec.axes.push_back(axis);
      }
      if (!axis2_raw.empty()) {
        cli::AxisSpec axis;
        if (!parse_axis(axis2_raw, axis, axis_error)) {
          std::cerr << "error: " << axis_error << "\n";
          return cli::kExitBadInput;
        }
        sspec.axes.push_back(axis);
      }
      if (figure != 0) {
        std::vector<cli::SweepSpec> specs;
        try {
          specs = cli::figure_presets(figure, sspec.out_path,
                                      sweep->count("--steps") ? sspec.steps : 0);
        } catch (const std::invalid_argument& e) {
          std::cerr << "error: " << e.what() << "\n";
          return cli::kExitBadInput;
        }
        for (const cli::SweepSpec& s : specs) {
          const int code = cli::cmd_sweep(s, sweep_cfg, threads, std::cerr);
          if (code != cli::kExitOk) return code;
        }
        return cli::kExitOk;
      }
      if (sspec.model.empty()) {
        std::cerr << "error: sweep needs --figure or --model\n";
        return cli::kExitBadInput;
      }
      return cli::cmd_sweep(sspec, sweep_cfg, threads, std::cerr);
    }
    vopt.threads = threads;
    return cli::cmd_verify(vopt, std::cout, std::cerr);
  } catch (const InvalidState& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitInvalidState;
  } catch (const models::SingularAngles& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitBadInput;
  } catch (const invariance::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return cli::kExitHardFail;
  }
}
