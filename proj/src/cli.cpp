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

#include "qcorr/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <thread>

#include "qcorr/invariance.hpp"
#include "qcorr/parallel.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/state_io.hpp"

namespace qcorr::cli {
namespace {

constexpr std::uint64_t kStreamOracle = 5;

const char* method_name(geodisc::Method m) {
  switch (m) {
    case geodisc::Method::alternating:
      return "alternating";
    case geodisc::Method::grid:
    case geodisc::Method::grid_polished:
      return "grid";
  }
  return "alternating";
}

// Returns 0 when the state passes the physicality gates, else prints the
// failing defect and returns the exit code.
int gate_state(const DensityMatrix& rho, std::ostream& err) {
  const ValidationReport rep = validate(rho);
  if (rep.hermiticity_defect > kHermTol) {
    err << "error: state is not Hermitian (defect "
        << io::format_g12(rep.hermiticity_defect) << " > "
        << io::format_g12(kHermTol) << ")\n";
    return kExitInvalidState;
  }
  if (rep.trace_defect > kTraceTol) {
    err << "error: state trace defect " << io::format_g12(rep.trace_defect)
        << " exceeds " << io::format_g12(kTraceTol) << "\n";
    return kExitInvalidState;
  }
  if (rep.min_eigenvalue < kPsdTol) {
    err << "error: state has negative eigenvalue "
        << io::format_g12(rep.min_eigenvalue) << " (floor "
        << io::format_g12(kPsdTol) << ")\n";
    return kExitInvalidState;
  }
  return kExitOk;
}

std::string vec_json(const Vector3& v) {
  std::ostringstream os;
  os << '[' << io::format_g12(v(0)) << ',' << io::format_g12(v(1)) << ','
     << io::format_g12(v(2)) << ']';
  return os.str();
}

std::string suffixed_path(const std::string& path, const std::string& tag) {
  const std::size_t dot = path.find_last_of('.');
  const std::size_t slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path + tag;
  return path.substr(0, dot) + tag + path.substr(dot);
}

std::string number_tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

struct AxisValues {
  std::string name;
  std::vector<double> values;
};

AxisValues expand_axis(const AxisSpec& axis, int steps) {
  AxisValues out;
  out.name = axis.name;
  out.values.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
    out.values.push_back(axis.min +
                         (axis.max - axis.min) * i / (steps - 1.0));
  return out;
}

DensityMatrix sweep_cell_state(const SweepSpec& spec,
                               const std::vector<AxisValues>& axes,
                               const std::vector<int>& idx) {
  if (spec.model == "nanopore") {
    models::NanoporeParams np = spec.nano;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const double v = axes[a].values[static_cast<std::size_t>(idx[a])];
      if (axes[a].name == "t") np.t = v;
      else np.beta = v;
    }
    return models::nanopore_state(np);
  }
  models::XxzDmParams xp = spec.xxz;
  for (std::size_t a = 0; a < axes.size(); ++a) {
    const double v = axes[a].values[static_cast<std::size_t>(idx[a])];
    if (axes[a].name == "T") xp.T = v;
    else if (axes[a].name == "Jz") xp.Jz = v;
    else xp.Dx = v;
  }
  return models::thermal_state(models::xxz_hamiltonian(xp.J, xp.Jz, xp.Dx),
                               xp.beta());
}

bool axis_name_valid(const std::string& model, const std::string& name) {
  if (model == "nanopore") return name == "t" || name == "beta";
  return name == "T" || name == "Jz" || name == "Dx";
}

}  // namespace

int cmd_compute(const ComputeOptions& opt, std::ostream& out,
                std::ostream& err) {
  io::ParsedState parsed;
  try {
    parsed = io::load_state(opt.in_path);
  } catch (const InvalidState& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidState;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  if (const int code = gate_state(parsed.state, err); code != kExitOk)
    return code;

  geodisc::GeoResult res;
  if (opt.method == "grid") {
    res = geodisc::geometric_measure_grid(parsed.state, opt.grid_res, opt.cfg);
  } else if (opt.method == "auto" || opt.method == "alternating") {
    res = geodisc::geometric_measure(parsed.state, opt.cfg);
  } else {
    err << "error: unknown method \"" << opt.method << "\"\n";
    return kExitBadInput;
  }

  out << "{\"G\":" << io::format_g12(res.value) << ",\"k\":" << vec_json(res.axes.k)
      << ",\"l\":" << vec_json(res.axes.l) << ",\"method\":\""
      << method_name(res.method) << "\",\"iterations\":" << res.iterations
      << "}\n";
  if (!res.converged) {
    err << "warning: optimizer hit the iteration cap in every start; value "
           "is best-found\n";
    return kExitNoConvergence;
  }
  return kExitOk;
}

int cmd_transform(const TransformOptions& opt, std::ostream& err) {
  io::ParsedState parsed;
  try {
    parsed = io::load_state(opt.in_path);
  } catch (const InvalidState& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidState;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  if (const int code = gate_state(parsed.state, err); code != kExitOk)
    return code;
  const DensityMatrix conjugated = hadamard_conjugate(parsed.state);
  try {
    io::write_text_file(opt.out_path,
                        io::state_to_json(conjugated).dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitOk;
}

int cmd_sweep(const SweepSpec& spec_in, const geodisc::OptimizerConfig& cfg,
              int threads, std::ostream& err) {
  SweepSpec spec = spec_in;
  if (spec.model != "nanopore" && spec.model != "xxzdm") {
    err << "error: unknown model \"" << spec.model << "\"\n";
    return kExitBadInput;
  }
  if (spec.out_path.empty()) {
    err << "error: sweep requires an output path\n";
    return kExitBadInput;
  }
  if (spec.steps < 2) {
    err << "error: sweep requires steps >= 2\n";
    return kExitBadInput;
  }
  if (spec.axes.empty()) {
    if (spec.model == "nanopore") {
      spec.axes.push_back({"t", 0.0, 2.0 * M_PI / spec.nano.a()});
      spec.axes.push_back({"beta", 0.01, 5.0});
    } else {
      spec.axes.push_back({"T", 0.05, 5.0});
    }
  }
  if (spec.axes.size() > 2) {
    err << "error: at most two sweep axes\n";
    return kExitBadInput;
  }
  for (const AxisSpec& axis : spec.axes) {
    if (!axis_name_valid(spec.model, axis.name)) {
      err << "error: axis \"" << axis.name << "\" not valid for model "
          << spec.model << "\n";
      return kExitBadInput;
    }
    if (!(axis.min < axis.max)) {
      err << "error: axis \"" << axis.name << "\" requires min < max\n";
      return kExitBadInput;
    }
  }
  if (spec.axes.size() == 2 && spec.axes[0].name == spec.axes[1].name) {
    err << "error: sweep axes must differ\n";
    return kExitBadInput;
  }
  for (const AxisSpec& axis : spec.axes) {
    if (spec.model == "xxzdm" && axis.name == "T" && !(axis.min > 0.0)) {
      err << "error: temperature axis requires min > 0\n";
      return kExitBadInput;
    }
  }
  if (spec.model == "nanopore") {
    if (spec.nano.N < 2) {
      err << "error: nanopore requires N >= 2\n";
      return kExitBadInput;
    }
    bool beta_swept = false;
    for (const AxisSpec& axis : spec.axes) beta_swept |= axis.name == "beta";
    for (const AxisSpec& axis : spec.axes)
      if (axis.name == "beta" && axis.min < 0.0) {
        err << "error: beta axis requires min >= 0\n";
        return kExitBadInput;
      }
    if (!beta_swept && spec.nano.beta < 0.0) {
      err << "error: nanopore requires beta >= 0\n";
      return kExitBadInput;
    }
  } else if (!(spec.xxz.T > 0.0)) {
    bool t_swept = false;
    for (const AxisSpec& axis : spec.axes) t_swept |= axis.name == "T";
    if (!t_swept) {
      err << "error: xxzdm requires T > 0\n";
      return kExitBadInput;
    }
  }

  std::vector<AxisValues> axes;
  axes.reserve(spec.axes.size());
  for (const AxisSpec& axis : spec.axes)
    axes.push_back(expand_axis(axis, spec.steps));

  const int inner = axes.size() == 2
                        ? static_cast<int>(axes[1].values.size())
                        : 1;
  const int cells = static_cast<int>(axes[0].values.size()) * inner;

  struct Cell {
    double g = 0;
    int flag = 0;
  };
  std::vector<Cell> results(static_cast<std::size_t>(cells));
  parallel_for(cells, threads, [&](int c) {
    std::vector<int> idx{c / inner};
    if (axes.size() == 2) idx.push_back(c % inner);
    const DensityMatrix rho = sweep_cell_state(spec, axes, idx);
    const geodisc::GeoResult res = geodisc::geometric_measure(rho, cfg);
    results[static_cast<std::size_t>(c)] = {res.value, res.converged ? 0 : 1};
  });

  std::ostringstream csv;
  csv << axes[0].name;
  if (axes.size() == 2) csv << ',' << axes[1].name;
  csv << ",G,flag\n";
  for (int c = 0; c < cells; ++c) {
    const int i = c / inner;
    csv << io::format_g12(axes[0].values[static_cast<std::size_t>(i)]);
    if (axes.size() == 2)
      csv << ','
          << io::format_g12(axes[1].values[static_cast<std::size_t>(c % inner)]);
    csv << ',' << io::format_g12(results[static_cast<std::size_t>(c)].g) << ','
        << results[static_cast<std::size_t>(c)].flag << '\n';
  }
  try {
    io::write_text_file(spec.out_path, csv.str());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitOk;
}

std::vector<SweepSpec> figure_presets(int figure, const std::string& out_path,
                                      int steps) {
  if (figure < 1 || figure > 5)
    throw std::invalid_argument("figure preset must be 1..5");
  const int n = steps > 0 ? steps : 101;
  std::vector<SweepSpec> specs;
  if (figure == 1 || figure == 2) {
    SweepSpec s;
    s.model = "nanopore";
    s.nano.N = 100;
    s.nano.D = figure == 1 ? 0.001 : 1.0;
    s.axes.push_back({"t", 0.0, 2.0 * M_PI / s.nano.a()});
    s.axes.push_back({"beta", 0.01, 5.0});
    s.steps = n;
    s.out_path = out_path;
    specs.push_back(std::move(s));
    return specs;
  }
  const double jz = figure == 4 ? 1.0 : (figure == 5 ? 0.2 : 0.0);
  const std::vector<double> sweep_values =
      figure == 3 ? std::vector<double>{0.0, 0.4, 0.9}
                  : std::vector<double>{0.5, 0.7, 1.0};
  for (const double v : sweep_values) {
    SweepSpec s;
    s.model = "xxzdm";
    s.xxz.J = 1.0;
    if (figure == 3) {
      s.xxz.Dx = 1.0;
      s.xxz.Jz = v;
      s.out_path = suffixed_path(out_path, "_Jz" + number_tag(v));
    } else {
      s.xxz.Jz = jz;
      s.xxz.Dx = v;
      s.out_path = suffixed_path(out_path, "_Dx" + number_tag(v));
    }
    s.axes.push_back({"T", 0.05, 5.0});
    s.steps = n;
    specs.push_back(std::move(s));
  }
  return specs;
}

int cmd_verify(const VerifyOptions& opt, std::ostream& out,
               std::ostream& err) {
  if (opt.samples < 1) {
    err << "error: verify requires samples >= 1\n";
    return kExitBadInput;
  }
  const invariance::InvarianceReport rep =
      invariance::invariance_suite(opt.seed, opt.samples, opt.cfg, opt.threads);

  // Grid-oracle equivalence over dense states (capped: the oracle is the
  // expensive part and 100 states already covers the accepted bound).
  const int oracle_n = std::min(opt.samples, 100);
  std::vector<double> gaps(static_cast<std::size_t>(oracle_n));
  parallel_for(oracle_n, opt.threads, [&](int i) {
    const std::uint64_t s = split_seed(
        opt.seed, kStreamOracle * 0x100000000ULL + static_cast<std::uint64_t>(i));
    const DensityMatrix rho = random_dense(s);
    const double g_alt = geodisc::geometric_measure(rho, opt.cfg).value;
    const double g_grid =
        geodisc::geometric_measure_grid(rho, opt.oracle_resolution, opt.cfg)
            .value;
    gaps[static_cast<std::size_t>(i)] = std::abs(g_alt - g_grid);
  });
  double oracle_max = 0.0, oracle_sum = 0.0;
  for (const double d : gaps) {
    oracle_max = std::max(oracle_max, d);
    oracle_sum += d;
  }

  const bool pass_hadamard = rep.max_hadamard_dg <= kHadamardBound;
  const bool pass_case1 = rep.case1_subset_max_dg <= kCase1Bound;
  const bool pass_oracle = oracle_max <= kOracleBound;
  const bool hard_pass = pass_hadamard && pass_case1 && pass_oracle;

  nlohmann::json j = io::report_to_json(rep);
  j["seed"] = opt.seed;
  j["oracle_equivalence"] = {{"samples", oracle_n},
                             {"grid_resolution", opt.oracle_resolution},
                             {"max_dG", oracle_max},
                             {"mean_dG", oracle_sum / oracle_n}};
  j["gates"] = {{"hadamard", {{"value", rep.max_hadamard_dg},
                              {"bound", kHadamardBound},
                              {"pass", pass_hadamard}}},
                {"case1", {{"value", rep.case1_subset_max_dg},
                           {"bound", kCase1Bound},
                           {"pass", pass_case1}}},
                {"oracle", {{"value", oracle_max},
                            {"bound", kOracleBound},
                            {"pass", pass_oracle}}}};
  j["hard_pass"] = hard_pass;

  const std::string text = j.dump(2) + "\n";
  out << text;
  if (!opt.out_path.empty()) {
    try {
      io::write_text_file(opt.out_path, text);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitBadInput;
    }
  }
  if (!hard_pass) {
    err << "verification failed:";
    if (!pass_hadamard) err << " hadamard-invariance";
    if (!pass_case1) err << " case1-equality";
    if (!pass_oracle) err << " oracle-equivalence";
    err << "\n";
    return kExitHardFail;
  }
  return kExitOk;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QCG_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return std::clamp(static_cast<int>(hw), 1, 8);
}

}  // namespace qcorr::cli
