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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qcorr/geodisc.hpp"
#include "qcorr/models.hpp"

namespace qcorr::cli {

// Exit-code contract shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitHardFail = 1;       // verify gates / internal error
inline constexpr int kExitBadInput = 2;       // unparsable or invalid input
inline constexpr int kExitInvalidState = 3;   // state fails physicality gates
inline constexpr int kExitNoConvergence = 4;  // optimizer hit max_iters everywhere

// Hard verification gates (soft metrics are reported, never gated).
inline constexpr double kHadamardBound = 1e-7;
inline constexpr double kCase1Bound = 1e-6;
inline constexpr double kOracleBound = 1e-8;

struct ComputeOptions {
  std::string in_path;
  std::string method = "auto";  // auto | alternating | grid
  geodisc::OptimizerConfig cfg;
  int grid_res = 48;
};

// Prints {"G":..,"k":[..],"l":[..],"method":..,"iterations":..} with 12
// significant digits.
int cmd_compute(const ComputeOptions& opt, std::ostream& out,
                std::ostream& err);

struct TransformOptions {
  std::string in_path;
  std::string out_path;
};

int cmd_transform(const TransformOptions& opt, std::ostream& err);

struct AxisSpec {
  std::string name;
  double min = 0;
  double max = 1;
};

struct SweepSpec {
  std::string model;  // nanopore | xxzdm
  models::NanoporeParams nano;
  models::XxzDmParams xxz;
  std::vector<AxisSpec> axes;  // 1 or 2; empty selects model defaults
  int steps = 101;             // per axis
  std::string out_path;
};

// Writes a CSV (header, 12-significant-digit values, row-major grid order)
// with one final "flag" column: 0 converged, 1 best-found-only. Cells are
// evaluated in parallel but written in index order, so the bytes do not
// depend on the thread count.
int cmd_sweep(const SweepSpec& spec, const geodisc::OptimizerConfig& cfg,
              int threads, std::ostream& err);

// Expands a figure preset (1..5) into sweep specs; figures 3..5 fan out to
// one file per preset coupling value, suffixing the output path.
std::vector<SweepSpec> figure_presets(int figure, const std::string& out_path,
                                      int steps);

struct VerifyOptions {
  std::uint64_t seed = 42;
  int samples = 100;
  std::string out_path;  // optional copy of the report
  geodisc::OptimizerConfig cfg;
  int oracle_resolution = 48;
  int threads = 1;
};

// Runs the invariance suite plus the grid-oracle equivalence check; exit 0
// iff every hard gate passes. The report JSON is identical for identical
// seeds regardless of thread count.
int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err);

// requested > 0 wins; otherwise QCG_THREADS, otherwise the hardware count.
int resolve_threads(int requested);

}  // namespace qcorr::cli
