// Copyright 2026 The nvpol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command line front end.  Every subcommand reads its settings from an
// optional config file (`key = value` lines) plus command line flags; flags
// win over file values, file values win over defaults.  The resolved
// settings are echoed as `# key = value` comment lines at the top of every
// output, so stripping the leading `# ` from the header of a result file
// yields a config that reproduces it byte for byte (thread count and output
// path are deliberately excluded: they never affect the produced bytes).

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "nvpol/config.hpp"
#include "nvpol/csv.hpp"
#include "nvpol/errors.hpp"
#include "nvpol/estimates.hpp"
#include "nvpol/hamiltonian.hpp"
#include "nvpol/lindblad.hpp"
#include "nvpol/odmr.hpp"
#include "nvpol/spin_core.hpp"
#include "nvpol/sweep.hpp"
#include "nvpol/units.hpp"
#include "nvpol/version.hpp"

namespace {

using nvpol::ConfigError;
using nvpol::DomainError;
using nvpol::Resolver;

// ---------------------------------------------------------------------------
// Flag plumbing: every config key automatically gets a --key-with-dashes flag
// that overrides the file value.
// ---------------------------------------------------------------------------

std::string flag_for_key(const std::string& key) {
  std::string flag = "--";
  for (char c : key) flag.push_back(c == '_' ? '-' : c);
  return flag;
}

class FlagBinder {
 public:
  FlagBinder(CLI::App* cmd, Resolver* resolver) : cmd_(cmd), resolver_(resolver) {}

  void bind(const std::string& key, const std::string& help) {
    storage_.emplace_back();
    std::string* slot = &storage_.back();
    CLI::Option* opt = cmd_->add_option(flag_for_key(key), *slot, help);
    bound_.emplace_back(opt, std::make_pair(key, slot));
  }

  // Pushes every flag that was actually given into the resolver.  Must run
  // after CLI parsing and after the config file has been loaded.
  void apply() {
    for (auto& [opt, kv] : bound_) {
      if (opt->count() > 0) resolver_->set_override(kv.first, *kv.second);
    }
  }

 private:
  CLI::App* cmd_;
  Resolver* resolver_;
  std::list<std::string> storage_;  // stable addresses for CLI11 targets
  std::vector<std::pair<CLI::Option*, std::pair<std::string, std::string*>>> bound_;
};

// Per-subcommand state shared between setup and execution.
struct CommandContext {
  CLI::App* cmd = nullptr;
  Resolver resolver;
  std::unique_ptr<FlagBinder> binder;
  std::string config_path;
  std::string output_path = "-";
  bool has_threads_flag = false;
  int threads_flag = 0;
};

void add_common_options(CommandContext& ctx, bool with_threads) {
  ctx.cmd->add_option("--config", ctx.config_path,
                      "Read `key = value` settings from this file");
  ctx.cmd->add_option("-o,--output", ctx.output_path,
                      "Output file path ('-' for stdout)");
  if (with_threads) {
    ctx.cmd
        ->add_option("--threads", ctx.threads_flag,
                     "Worker threads (default: NVPOL_THREADS or 1)")
        ->check(CLI::PositiveNumber);
    ctx.has_threads_flag = true;
  }
}

// Resolves settings: file (if any), then flags, then defaults.
void resolve(CommandContext& ctx) {
  if (!ctx.config_path.empty()) {
    ctx.resolver.load(nvpol::ConfigDoc::from_file(ctx.config_path));
  }
  ctx.binder->apply();
  ctx.resolver.finalize();
  const std::string expected = ctx.cmd->get_name();
  if (ctx.resolver.raw("command") != expected) {
    throw ConfigError("config is for command '" + ctx.resolver.raw("command") +
                          "', but '" + expected + "' was invoked",
                      "command");
  }
}

int thread_count(const CommandContext& ctx) {
  if (ctx.has_threads_flag && ctx.cmd->count("--threads") > 0) {
    return ctx.threads_flag;
  }
  if (const char* env = std::getenv("NVPOL_THREADS")) {
    std::string s(env);
    try {
      std::size_t pos = 0;
      int n = std::stoi(s, &pos);
      if (pos != s.size() || n < 1) throw std::invalid_argument(s);
      return n;
    } catch (const std::exception&) {
      throw ConfigError("NVPOL_THREADS must be a positive integer, got '" + s + "'",
                        "NVPOL_THREADS");
    }
  }
  return 1;
}

// ---------------------------------------------------------------------------
// Output plumbing.
// ---------------------------------------------------------------------------

std::vector<std::string> header_lines(const CommandContext& ctx) {
  std::vector<std::string> lines;
  // Nested comment: stripping one `# ` layer leaves this a comment line, so
  // the extracted text is still a valid config file.
  lines.push_back(std::string("# # nvpol ") + nvpol::version_string);
  for (const auto& [key, value] : ctx.resolver.items()) {
    lines.push_back("# " + key + " = " + value);
  }
  return lines;
}

template <typename Writer>
void write_output(const std::string& path, Writer writer) {
  if (path == "-" || path.empty()) {
    writer(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot open output file '" + path + "'", "output");
  }
  writer(out);
  out.flush();
  if (!out) {
    throw ConfigError("write to output file '" + path + "' failed", "output");
  }
}

// ---------------------------------------------------------------------------
// Shared physics-parameter keys.
// ---------------------------------------------------------------------------

void declare_spin_params(Resolver& r) {
  r.declare("d_es_MHz", "1420");
  r.declare("d_gs_MHz", "2870");
  r.declare("gamma_nv_MHz_per_T", "28000");
  r.declare("gamma_c13_MHz_per_T", "10");
}

nvpol::SpinSystemParams spin_params(const Resolver& r) {
  nvpol::SpinSystemParams p;
  p.d_es_MHz = r.get_double("d_es_MHz");
  p.d_gs_MHz = r.get_double("d_gs_MHz");
  p.gamma_nv_MHz_per_T = r.get_double("gamma_nv_MHz_per_T");
  p.gamma_c13_MHz_per_T = r.get_double("gamma_c13_MHz_per_T");
  p.validate();
  return p;
}

void declare_pump_params(Resolver& r) {
  r.declare("pump_rate_to_0_MHz", "10");
  r.declare("leak_rate_to_pm1_MHz", "0.5");
  r.declare("nuclear_t1_s", "100");
  r.declare("electron_t1_s", "0");
  r.declare("dephasing_rate_MHz", "0");
  r.declare("cross_leak", "0");
}

nvpol::PumpModel pump_params(const Resolver& r) {
  nvpol::PumpModel p;
  p.pump_rate_to_0_MHz = r.get_double("pump_rate_to_0_MHz");
  p.leak_rate_to_pm1_MHz = r.get_double("leak_rate_to_pm1_MHz");
  p.nuclear_t1_s = r.get_double("nuclear_t1_s");
  p.electron_t1_s = r.get_double("electron_t1_s");
  p.dephasing_rate_MHz = r.get_double("dephasing_rate_MHz");
  p.cross_leak = r.get_bool("cross_leak");
  p.validate();
  return p;
}

void declare_tensor(Resolver& r) {
  r.declare("tensor_file", "");
  r.declare("hyperfine_scale", "1");
}

nvpol::HyperfineTensor tensor_param(const Resolver& r) {
  const std::string path = r.get_string("tensor_file");
  if (path.empty()) return nvpol::HyperfineTensor::reference();
  return nvpol::HyperfineTensor::from_file(path);
}

void declare_field_grid(Resolver& r, const char* min_default,
                        const char* max_default, const char* step_default) {
  r.declare("field_min_T", min_default);
  r.declare("field_max_T", max_default);
  r.declare("field_step_T", step_default);
}

std::vector<double> field_grid_mT(const Resolver& r) {
  const double min_T = r.get_double("field_min_T");
  const double max_T = r.get_double("field_max_T");
  const double step_T = r.get_double("field_step_T");
  if (!(step_T > 0.0)) {
    throw ConfigError("field_step_T must be > 0", "field_step_T");
  }
  if (!(max_T >= min_T)) {
    throw ConfigError("field_max_T must be >= field_min_T", "field_max_T");
  }
  // Index-based generation keeps the grid identical regardless of how the
  // bounds were supplied (no accumulated rounding).
  const int count = static_cast<int>(std::floor((max_T - min_T) / step_T + 1.0 + 1e-9));
  std::vector<double> grid_mT(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    grid_mT[static_cast<std::size_t>(k)] = (min_T + k * step_T) * nvpol::units::mT_per_T;
  }
  return grid_mT;
}

std::string check_format(const Resolver& r, std::initializer_list<const char*> allowed) {
  const std::string f = r.get_string("format");
  for (const char* a : allowed) {
    if (f == a) return f;
  }
  std::string msg = "format must be one of:";
  for (const char* a : allowed) msg += std::string(" ") + a;
  msg += ", got '" + f + "'";
  throw ConfigError(msg, "format");
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

void setup_sweep(CommandContext& ctx) {
  Resolver& r = ctx.resolver;
  r.declare("command", "sweep");
  r.declare("format", "csv");
  declare_field_grid(r, "0.045", "0.056", "5e-5");
  r.declare("orientations", "6");
  r.declare_required("seed");
  declare_tensor(r);
  declare_spin_params(r);
  declare_pump_params(r);

  FlagBinder& b = *ctx.binder;
  b.bind("format", "Output format: csv or plot-data");
  b.bind("field_min_T", "First field value (T)");
  b.bind("field_max_T", "Last field value (T)");
  b.bind("field_step_T", "Field step (T)");
  b.bind("orientations", "Number of random tensor orientations");
  b.bind("seed", "RNG seed for orientation sampling (required)");
  b.bind("tensor_file", "Hyperfine tensor file (3x3, MHz); default: built-in");
  b.bind("hyperfine_scale", "Scale factor applied to the hyperfine tensor");
  b.bind("d_es_MHz", "Excited-state zero-field splitting (MHz)");
  b.bind("d_gs_MHz", "Ground-state zero-field splitting (MHz)");
  b.bind("gamma_nv_MHz_per_T", "Electron gyromagnetic ratio (MHz/T)");
  b.bind("gamma_c13_MHz_per_T", "Nuclear gyromagnetic ratio (MHz/T)");
  b.bind("pump_rate_to_0_MHz", "Optical pumping rate into m_s=0 (MHz)");
  b.bind("leak_rate_to_pm1_MHz", "Leak rate out of m_s=0 (MHz)");
  b.bind("nuclear_t1_s", "Nuclear T1 (s); 0 disables");
  b.bind("electron_t1_s", "Electron T1 (s); 0 disables");
  b.bind("dephasing_rate_MHz", "Electron dephasing rate (MHz); 0 disables");
  b.bind("cross_leak", "Enable +1 <-> -1 leak channels (0/1)");
}

void run_sweep(CommandContext& ctx) {
  resolve(ctx);
  const Resolver& r = ctx.resolver;
  const std::string format = check_format(r, {"csv", "plot-data"});

  nvpol::SweepConfig cfg;
  cfg.field_grid_mT = field_grid_mT(r);
  const int n_orient = r.get_int("orientations");
  if (n_orient < 1) throw ConfigError("orientations must be >= 1", "orientations");
  cfg.orientations = nvpol::haar_orientations(n_orient, r.get_u64("seed"));
  cfg.tensor = tensor_param(r);
  cfg.hyperfine_scale = r.get_double("hyperfine_scale");
  cfg.params = spin_params(r);
  cfg.pump = pump_params(r);
  cfg.threads = thread_count(ctx);

  const nvpol::SweepResult res = nvpol::field_sweep(cfg);

  std::vector<std::string> header = header_lines(ctx);
  {
    std::string line = "# # zero_crossings_mT =";
    if (res.zero_crossings_mT.empty()) line += " none";
    for (double z : res.zero_crossings_mT) line += " " + nvpol::format_g9(z);
    header.push_back(line);
  }

  const std::size_t nf = res.fields_mT.size();
  const auto n_cols = static_cast<std::size_t>(res.per_orientation.cols());
  write_output(ctx.output_path, [&](std::ostream& os) {
    if (format == "csv") {
      std::vector<std::string> columns;
      columns.push_back("field_mT");
      for (std::size_t j = 0; j < n_cols; ++j) {
        columns.push_back("P_orient_" + std::to_string(j + 1));
      }
      columns.push_back("P_mean");
      std::vector<std::vector<double>> rows(nf);
      for (std::size_t i = 0; i < nf; ++i) {
        rows[i].push_back(res.fields_mT[i]);
        for (std::size_t j = 0; j < n_cols; ++j) {
          rows[i].push_back(res.per_orientation(static_cast<Eigen::Index>(i),
                                                static_cast<Eigen::Index>(j)));
        }
        rows[i].push_back(res.mean[i]);
      }
      nvpol::write_csv(os, header, columns, rows);
    } else {
      std::vector<nvpol::PlotSeries> series(n_cols + 1);
      for (std::size_t j = 0; j < n_cols; ++j) {
        series[j].label = "orient_" + std::to_string(j + 1);
        for (std::size_t i = 0; i < nf; ++i) {
          series[j].points.push_back(
              {res.fields_mT[i], res.per_orientation(static_cast<Eigen::Index>(i),
                                                     static_cast<Eigen::Index>(j))});
        }
      }
      series[n_cols].label = "mean";
      for (std::size_t i = 0; i < nf; ++i) {
        series[n_cols].points.push_back({res.fields_mT[i], res.mean[i]});
      }
      nvpol::write_plot_data(os, header, series);
    }
  });
}

// ---------------------------------------------------------------------------
// buildup
// ---------------------------------------------------------------------------

void setup_buildup(CommandContext& ctx) {
  Resolver& r = ctx.resolver;
  r.declare("command", "buildup");
  r.declare("format", "csv");
  r.declare("magnitudes_kHz", "1,10,100,1000");
  declare_field_grid(r, "0.0500", "0.0512", "5e-5");
  declare_tensor(r);
  declare_spin_params(r);
  declare_pump_params(r);

  FlagBinder& b = *ctx.binder;
  b.bind("format", "Output format: csv or plot-data");
  b.bind("magnitudes_kHz", "Comma-separated hyperfine magnitudes (kHz)");
  b.bind("field_min_T", "Search grid start for the optimal field (T)");
  b.bind("field_max_T", "Search grid end for the optimal field (T)");
  b.bind("field_step_T", "Search grid step (T)");
  b.bind("tensor_file", "Hyperfine tensor file (3x3, MHz); default: built-in");
  b.bind("hyperfine_scale", "Extra scale factor on the tensor shape");
  b.bind("d_es_MHz", "Excited-state zero-field splitting (MHz)");
  b.bind("d_gs_MHz", "Ground-state zero-field splitting (MHz)");
  b.bind("gamma_nv_MHz_per_T", "Electron gyromagnetic ratio (MHz/T)");
  b.bind("gamma_c13_MHz_per_T", "Nuclear gyromagnetic ratio (MHz/T)");
  b.bind("pump_rate_to_0_MHz", "Optical pumping rate into m_s=0 (MHz)");
  b.bind("leak_rate_to_pm1_MHz", "Leak rate out of m_s=0 (MHz)");
  b.bind("nuclear_t1_s", "Nuclear T1 (s); 0 disables");
  b.bind("electron_t1_s", "Electron T1 (s); 0 disables");
  b.bind("dephasing_rate_MHz", "Electron dephasing rate (MHz); 0 disables");
  b.bind("cross_leak", "Enable +1 <-> -1 leak channels (0/1)");
}

void run_buildup(CommandContext& ctx) {
  resolve(ctx);
  const Resolver& r = ctx.resolver;
  const std::string format = check_format(r, {"csv", "plot-data"});

  const std::vector<double> magnitudes = r.get_double_list("magnitudes_kHz");
  if (magnitudes.empty()) {
    throw ConfigError("magnitudes_kHz must contain at least one value", "magnitudes_kHz");
  }

  nvpol::SweepConfig base;
  base.field_grid_mT = field_grid_mT(r);
  base.tensor = tensor_param(r);
  base.hyperfine_scale = r.get_double("hyperfine_scale");
  base.params = spin_params(r);
  base.pump = pump_params(r);
  base.threads = thread_count(ctx);

  const nvpol::BuildupResult res = nvpol::buildup_timescales(magnitudes, base);

  std::vector<std::string> header = header_lines(ctx);
  {
    std::string line = "# # transfer_field_mT =";
    for (double f : res.field_mT) line += " " + nvpol::format_g9(f);
    header.push_back(line);
    line = "# # p_infinity =";
    for (double p : res.p_infinity) line += " " + nvpol::format_g9(p);
    header.push_back(line);
  }

  const std::size_t n = res.hyperfine_magnitudes_kHz.size();
  write_output(ctx.output_path, [&](std::ostream& os) {
    if (format == "csv") {
      std::vector<std::vector<double>> rows(n);
      for (std::size_t i = 0; i < n; ++i) {
        rows[i] = {res.hyperfine_magnitudes_kHz[i], res.timescales_s[i],
                   res.fit_residuals[i]};
      }
      nvpol::write_csv(os, header, {"A_kHz", "tau_s", "residual"}, rows);
    } else {
      nvpol::PlotSeries series;
      series.label = "buildup";
      for (std::size_t i = 0; i < n; ++i) {
        series.points.push_back({res.hyperfine_magnitudes_kHz[i], res.timescales_s[i]});
      }
      nvpol::write_plot_data(os, header, {series});
    }
  });
}

// ---------------------------------------------------------------------------
// levels
// ---------------------------------------------------------------------------

void setup_levels(CommandContext& ctx) {
  Resolver& r = ctx.resolver;
  r.declare("command", "levels");
  r.declare("format", "csv");
  declare_field_grid(r, "0", "0.1", "5e-4");
  declare_tensor(r);
  declare_spin_params(r);

  FlagBinder& b = *ctx.binder;
  b.bind("format", "Output format: csv or plot-data");
  b.bind("field_min_T", "First field value (T)");
  b.bind("field_max_T", "Last field value (T)");
  b.bind("field_step_T", "Field step (T)");
  b.bind("tensor_file", "Hyperfine tensor file (3x3, MHz); default: built-in");
  b.bind("hyperfine_scale", "Scale factor applied to the hyperfine tensor");
  b.bind("d_es_MHz", "Excited-state zero-field splitting (MHz)");
  b.bind("d_gs_MHz", "Ground-state zero-field splitting (MHz)");
  b.bind("gamma_nv_MHz_per_T", "Electron gyromagnetic ratio (MHz/T)");
  b.bind("gamma_c13_MHz_per_T", "Nuclear gyromagnetic ratio (MHz/T)");
}

void run_levels(CommandContext& ctx) {
  resolve(ctx);
  const Resolver& r = ctx.resolver;
  const std::string format = check_format(r, {"csv", "plot-data"});

  const std::vector<double> grid_mT = field_grid_mT(r);
  nvpol::HyperfineTensor tensor = tensor_param(r);
  tensor.a_MHz *= r.get_double("hyperfine_scale");
  const nvpol::SpinSystemParams params = spin_params(r);

  const std::vector<nvpol::RealVector> levels =
      nvpol::level_diagram(params, tensor, grid_mT);
  const auto n_levels = static_cast<std::size_t>(levels.empty() ? 0 : levels[0].size());

  std::vector<std::string> header = header_lines(ctx);
  header.push_back("# # anticrossing_field_mT = " +
                   nvpol::format_g9(nvpol::lac_field_mT(params)));

  write_output(ctx.output_path, [&](std::ostream& os) {
    if (format == "csv") {
      std::vector<std::string> columns;
      columns.push_back("field_mT");
      for (std::size_t j = 0; j < n_levels; ++j) {
        columns.push_back("E" + std::to_string(j + 1) + "_MHz");
      }
      std::vector<std::vector<double>> rows(grid_mT.size());
      for (std::size_t i = 0; i < grid_mT.size(); ++i) {
        rows[i].push_back(grid_mT[i]);
        for (std::size_t j = 0; j < n_levels; ++j) {
          rows[i].push_back(levels[i](static_cast<Eigen::Index>(j)));
        }
      }
      nvpol::write_csv(os, header, columns, rows);
    } else {
      std::vector<nvpol::PlotSeries> series(n_levels);
      for (std::size_t j = 0; j < n_levels; ++j) {
        series[j].label = "branch_" + std::to_string(j + 1);
        for (std::size_t i = 0; i < grid_mT.size(); ++i) {
          series[j].points.push_back({grid_mT[i], levels[i](static_cast<Eigen::Index>(j))});
        }
      }
      nvpol::write_plot_data(os, header, series);
    }
  });
}

// ---------------------------------------------------------------------------
// odmr
// ---------------------------------------------------------------------------

void setup_odmr(CommandContext& ctx) {
  Resolver& r = ctx.resolver;
  r.declare("command", "odmr");
  r.declare("format", "csv");
  r.declare("b_mT", "0,0,50");
  r.declare("tilt_deg", "0");
  r.declare("theta_scan_deg", "");
  r.declare("theta0_deg", "70.5287793655");
  declare_spin_params(r);

  FlagBinder& b = *ctx.binder;
  b.bind("format", "Output format: csv or plot-data");
  b.bind("b_mT", "Magnetic field vector in the crystal frame, 'bx,by,bz' (mT)");
  b.bind("tilt_deg", "Tilt applied to the field direction (deg)");
  b.bind("theta_scan_deg", "Scan angle to the NV axis instead: 'min,max,step' (deg)");
  b.bind("theta0_deg", "Angle for the reported angular sensitivities (deg)");
  b.bind("d_es_MHz", "Excited-state zero-field splitting (MHz)");
  b.bind("d_gs_MHz", "Ground-state zero-field splitting (MHz)");
  b.bind("gamma_nv_MHz_per_T", "Electron gyromagnetic ratio (MHz/T)");
  b.bind("gamma_c13_MHz_per_T", "Nuclear gyromagnetic ratio (MHz/T)");
}

nvpol::FieldVector parse_field_vector(const Resolver& r) {
  const std::vector<double> v = r.get_double_list("b_mT");
  if (v.size() != 3) {
    throw ConfigError("b_mT must have exactly three components, got " +
                          std::to_string(v.size()),
                      "b_mT");
  }
  return nvpol::FieldVector{v[0], v[1], v[2]};
}

// Rotates the field direction by `tilt` radians inside a fixed plane, used
// to model a slightly misaligned magnet.
nvpol::FieldVector tilt_field(const nvpol::FieldVector& b, double tilt_rad) {
  if (tilt_rad == 0.0) return b;
  const double mag = b.magnitude_mT();
  if (mag <= 0.0) throw DomainError("cannot tilt a zero field vector");
  const nvpol::RealVector3 bhat = b.as_vector() / mag;
  nvpol::RealVector3 ref(1.0, -1.0, 0.0);
  ref.normalize();
  if (std::abs(bhat.dot(ref)) > 0.999) ref = nvpol::RealVector3(1.0, 0.0, 0.0);
  const nvpol::RealVector3 perp = (ref - bhat.dot(ref) * bhat).normalized();
  const nvpol::RealVector3 out =
      mag * (std::cos(tilt_rad) * bhat + std::sin(tilt_rad) * perp);
  return nvpol::FieldVector{out.x(), out.y(), out.z()};
}

void run_odmr(CommandContext& ctx) {
  resolve(ctx);
  const Resolver& r = ctx.resolver;
  const std::string format = check_format(r, {"csv", "plot-data"});
  const nvpol::SpinSystemParams params = spin_params(r);

  std::vector<std::string> header = header_lines(ctx);
  std::vector<std::vector<double>> rows;  // theta_deg, f_minus_MHz, f_plus_MHz

  const std::string scan = r.get_string("theta_scan_deg");
  if (!scan.empty()) {
    const std::vector<double> range = r.get_double_list("theta_scan_deg");
    if (range.size() != 3) {
      throw ConfigError("theta_scan_deg must be 'min,max,step'", "theta_scan_deg");
    }
    const double lo = range[0], hi = range[1], step = range[2];
    if (!(step > 0.0)) throw ConfigError("theta scan step must be > 0", "theta_scan_deg");
    if (!(hi >= lo)) throw ConfigError("theta scan max must be >= min", "theta_scan_deg");
    if (lo < 0.0 || hi > 180.0) {
      throw ConfigError("theta scan must stay within [0, 180] deg", "theta_scan_deg");
    }
    const double b_mag = parse_field_vector(r).magnitude_mT();
    const int count = static_cast<int>(std::floor((hi - lo) / step + 1.0 + 1e-9));
    for (int k = 0; k < count; ++k) {
      const double theta_deg = lo + k * step;
      const nvpol::TransitionPair tp = nvpol::transition_frequencies(
          b_mag, theta_deg * nvpol::units::rad_per_deg, params);
      rows.push_back({theta_deg, tp.f_minus_MHz, tp.f_plus_MHz});
    }
  } else {
    const nvpol::FieldVector b =
        tilt_field(parse_field_vector(r),
                   r.get_double("tilt_deg") * nvpol::units::rad_per_deg);
    const nvpol::CrystalFrame frame = nvpol::CrystalFrame::diamond();
    const nvpol::AlignmentSpread spread = nvpol::alignment_spread(b, frame, params);
    for (std::size_t i = 0; i < spread.per_axis.size(); ++i) {
      rows.push_back({spread.theta_rad[i] * nvpol::units::deg_per_rad,
                      spread.per_axis[i].f_minus_MHz, spread.per_axis[i].f_plus_MHz});
    }
    header.push_back("# # aligned_axis = " + std::to_string(spread.aligned_axis + 1));
    header.push_back("# # spread_MHz = " + nvpol::format_g9(spread.spread_MHz));
    const double theta0 = r.get_double("theta0_deg");
    if (theta0 > 0.0 && theta0 < 180.0) {
      const nvpol::SensitivityPair sens = nvpol::angular_sensitivity(
          b.magnitude_mT(), theta0 * nvpol::units::rad_per_deg, params);
      header.push_back("# # df_minus_MHz_per_deg = " +
                       nvpol::format_g9(sens.df_minus_MHz_per_deg));
      header.push_back("# # df_plus_MHz_per_deg = " +
                       nvpol::format_g9(sens.df_plus_MHz_per_deg));
    }
  }

  write_output(ctx.output_path, [&](std::ostream& os) {
    if (format == "csv") {
      nvpol::write_csv(os, header, {"theta_deg", "f_minus_MHz", "f_plus_MHz"}, rows);
    } else {
      nvpol::PlotSeries lower, upper;
      lower.label = "f_minus";
      upper.label = "f_plus";
      for (const auto& row : rows) {
        lower.points.push_back({row[0], row[1]});
        upper.points.push_back({row[0], row[2]});
      }
      nvpol::write_plot_data(os, header, {lower, upper});
    }
  });
}

// ---------------------------------------------------------------------------
// estimate
// ---------------------------------------------------------------------------

void setup_estimate(CommandContext& ctx) {
  Resolver& r = ctx.resolver;
  r.declare("command", "estimate");
  r.declare("format", "table");
  r.declare("c_nv", "10e-6");
  r.declare("aligned_fraction", "0.25");
  r.declare("c_13c", "0.011");
  r.declare("p_13c", "0.005");
  r.declare("rho_g_cm3", "3.52");
  r.declare("molar_mass_g_mol", "12.01");
  r.declare("d_coeff_cm2_s", "6.7e-15");
  r.declare("tau_s", "10");
  r.declare("s_op", "0");
  r.declare("s_op_sigma", "0");
  r.declare("s_ref", "0");
  r.declare("s_ref_sigma", "0");
  r.declare("nt_op", "1");
  r.declare("nt_ref", "10");
  r.declare("m_op_mg", "16");
  r.declare("m_ref_mg", "800");

  FlagBinder& b = *ctx.binder;
  b.bind("format", "Output format: table or csv");
  b.bind("c_nv", "NV concentration (atomic fraction)");
  b.bind("aligned_fraction", "Fraction of NV centers on the aligned axis");
  b.bind("c_13c", "13C concentration (atomic fraction)");
  b.bind("p_13c", "Assumed 13C polarization for the comparison ratio");
  b.bind("rho_g_cm3", "Diamond mass density (g/cm^3)");
  b.bind("molar_mass_g_mol", "Molar mass of the lattice atoms (g/mol)");
  b.bind("d_coeff_cm2_s", "Spin diffusion coefficient (cm^2/s)");
  b.bind("tau_s", "Diffusion time for the diffusion length (s)");
  b.bind("s_op", "Optically pumped signal amplitude");
  b.bind("s_op_sigma", "Uncertainty of s_op");
  b.bind("s_ref", "Reference (thermal) signal amplitude");
  b.bind("s_ref_sigma", "Uncertainty of s_ref");
  b.bind("nt_op", "Averages taken for the pumped signal");
  b.bind("nt_ref", "Averages taken for the reference signal");
  b.bind("m_op_mg", "Sample mass for the pumped signal (mg)");
  b.bind("m_ref_mg", "Sample mass for the reference signal (mg)");
}

void run_estimate(CommandContext& ctx) {
  resolve(ctx);
  const Resolver& r = ctx.resolver;
  const std::string format = check_format(r, {"table", "csv"});

  nvpol::MaterialParams mp;
  mp.c_nv = r.get_double("c_nv");
  mp.aligned_fraction = r.get_double("aligned_fraction");
  mp.c_13c = r.get_double("c_13c");
  mp.rho_g_cm3 = r.get_double("rho_g_cm3");
  mp.molar_mass_g_mol = r.get_double("molar_mass_g_mol");
  mp.d_coeff_cm2_s = r.get_double("d_coeff_cm2_s");
  mp.validate();

  nvpol::MaterialParams all_axes = mp;
  all_axes.aligned_fraction = 1.0;

  struct Item {
    std::string name;
    double value;
    std::string unit;
  };
  std::vector<Item> items;
  items.push_back({"defect_distance_all_nm", nvpol::avg_defect_distance_nm(all_axes), "nm"});
  items.push_back({"defect_distance_aligned_nm", nvpol::avg_defect_distance_nm(mp), "nm"});
  items.push_back({"diffusion_length_nm",
                   nvpol::diffusion_length_nm(mp.d_coeff_cm2_s, r.get_double("tau_s")),
                   "nm"});
  items.push_back({"polarized_ratio",
                   nvpol::polarized_ratio(mp.c_13c, r.get_double("p_13c"), mp.c_nv,
                                          mp.aligned_fraction),
                   ""});

  const double s_op = r.get_double("s_op");
  const double s_ref = r.get_double("s_ref");
  if (s_op > 0.0 && s_ref > 0.0) {
    nvpol::EnhancementInputs in;
    in.s_op = s_op;
    in.s_op_sigma = r.get_double("s_op_sigma");
    in.s_ref = s_ref;
    in.s_ref_sigma = r.get_double("s_ref_sigma");
    in.nt_op = r.get_double("nt_op");
    in.nt_ref = r.get_double("nt_ref");
    in.m_op_mg = r.get_double("m_op_mg");
    in.m_ref_mg = r.get_double("m_ref_mg");
    const nvpol::Enhancement eta = nvpol::enhancement_factor(in);
    items.push_back({"enhancement", eta.eta, ""});
    items.push_back({"enhancement_sigma", eta.sigma, ""});
  }

  const std::vector<std::string> header = header_lines(ctx);
  write_output(ctx.output_path, [&](std::ostream& os) {
    if (format == "csv") {
      for (const std::string& line : header) os << line << "\n";
      os << "quantity,value,unit\n";
      for (const Item& item : items) {
        os << item.name << "," << nvpol::format_g9(item.value) << "," << item.unit
           << "\n";
      }
    } else {
      for (const std::string& line : header) os << line << "\n";
      for (const Item& item : items) {
        os << item.name;
        for (std::size_t pad = item.name.size(); pad < 28; ++pad) os << ' ';
        os << nvpol::format_g9(item.value);
        if (!item.unit.empty()) os << ' ' << item.unit;
        os << "\n";
      }
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NV-center nuclear hyperpolarization model"};
  app.set_version_flag("--version", std::string("nvpol ") + nvpol::version_string);
  app.require_subcommand(1);

  CommandContext sweep_ctx, buildup_ctx, levels_ctx, odmr_ctx, estimate_ctx;

  sweep_ctx.cmd = app.add_subcommand(
      "sweep", "Steady-state nuclear polarization over a magnetic field sweep");
  sweep_ctx.binder = std::make_unique<FlagBinder>(sweep_ctx.cmd, &sweep_ctx.resolver);
  setup_sweep(sweep_ctx);
  add_common_options(sweep_ctx, /*with_threads=*/true);

  buildup_ctx.cmd = app.add_subcommand(
      "buildup", "Polarization buildup timescale vs hyperfine coupling strength");
  buildup_ctx.binder =
      std::make_unique<FlagBinder>(buildup_ctx.cmd, &buildup_ctx.resolver);
  setup_buildup(buildup_ctx);
  add_common_options(buildup_ctx, /*with_threads=*/true);

  levels_ctx.cmd =
      app.add_subcommand("levels", "Excited-state energy levels vs magnetic field");
  levels_ctx.binder = std::make_unique<FlagBinder>(levels_ctx.cmd, &levels_ctx.resolver);
  setup_levels(levels_ctx);
  add_common_options(levels_ctx, /*with_threads=*/false);

  odmr_ctx.cmd = app.add_subcommand(
      "odmr", "Ground-state transition frequencies and field alignment diagnostics");
  odmr_ctx.binder = std::make_unique<FlagBinder>(odmr_ctx.cmd, &odmr_ctx.resolver);
  setup_odmr(odmr_ctx);
  add_common_options(odmr_ctx, /*with_threads=*/false);

  estimate_ctx.cmd = app.add_subcommand(
      "estimate", "Analytical material and signal-enhancement estimates");
  estimate_ctx.binder =
      std::make_unique<FlagBinder>(estimate_ctx.cmd, &estimate_ctx.resolver);
  setup_estimate(estimate_ctx);
  add_common_options(estimate_ctx, /*with_threads=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "run with --help for usage\n";
    return 2;
  }

  try {
    if (sweep_ctx.cmd->parsed()) {
      run_sweep(sweep_ctx);
    } else if (buildup_ctx.cmd->parsed()) {
      run_buildup(buildup_ctx);
    } else if (levels_ctx.cmd->parsed()) {
      run_levels(levels_ctx);
    } else if (odmr_ctx.cmd->parsed()) {
      run_odmr(odmr_ctx);
    } else if (estimate_ctx.cmd->parsed()) {
      run_estimate(estimate_ctx);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error";
    if (!e.key().empty()) std::cerr << " [" << e.key() << "]";
    if (e.line() > 0) std::cerr << " (line " << e.line() << ")";
    std::cerr << ": " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const nvpol::SweepSolverError& e) {
    std::cerr << "solver error (orientation " << e.orientation() << ", field "
              << e.field_mT() << " mT): " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
