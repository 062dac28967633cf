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

#include "nvpol/sweep.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "nvpol/errors.hpp"
#include "nvpol/units.hpp"

namespace nvpol {

namespace {

constexpr double kZeroGate = 1.0e-6;  // |P| below this counts as zero

// Lab-frame Hamiltonian for one grid point.  The crystallite orientation
// is applied on top of the tensor's own frame; the scan field is along
// the defect symmetry axis (z).
ComplexMatrix hamiltonian_at(const SweepConfig& cfg, double scale, const EulerAngles& orientation,
                             double field_mT) {
  const RealMatrix3 crystal = rotate_tensor(cfg.tensor) * scale;
  const RealMatrix3 r = euler_rotation(orientation);
  HyperfineTensor lab;
  lab.a_MHz = r * crystal * r.transpose();
  lab.a_MHz = 0.5 * (lab.a_MHz + lab.a_MHz.transpose());  // shed rotation roundoff
  return build_hamiltonian(cfg.params, lab, FieldVector::axial(field_mT));
}

double steady_polarization(const SweepConfig& cfg, double scale, const EulerAngles& orientation,
                           double field_mT) {
  const ComplexMatrix h = hamiltonian_at(cfg, scale, orientation, field_mT);
  const Liouvillian l = assemble_liouvillian(h, cfg.pump);
  return nuclear_polarization(steady_state(l));
}

struct ExpFit {
  double tau_s = std::numeric_limits<double>::quiet_NaN();
  double p_inf = std::numeric_limits<double>::quiet_NaN();
  double rms = std::numeric_limits<double>::quiet_NaN();
  bool ok = false;
};

// Fit P(t) = p_inf * (1 - exp(-t/tau)).  For fixed tau the best p_inf is
// closed-form, so only tau is searched: a log-spaced scan bracketing the
// sample window, then one parabolic refinement in log(tau).
ExpFit fit_exponential(const std::vector<double>& t_s, const std::vector<double>& p) {
  const size_t n = t_s.size();
  const auto misfit = [&](double tau, double* p_hat) {
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double m = 1.0 - std::exp(-t_s[i] / tau);
      num += p[i] * m;
      den += m * m;
    }
    const double a = (den > 0.0) ? num / den : 0.0;
    double rss = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double m = 1.0 - std::exp(-t_s[i] / tau);
      const double d = p[i] - a * m;
      rss += d * d;
    }
    if (p_hat) *p_hat = a;
    return rss;
  };

  constexpr int kCandidates = 240;
  const double lo = std::log(t_s.front() * 0.1);
  const double hi = std::log(t_s.back() * 10.0);
  int best = -1;
  double best_rss = std::numeric_limits<double>::infinity();
  std::vector<double> rss(kCandidates);
  for (int k = 0; k < kCandidates; ++k) {
    const double tau = std::exp(lo + (hi - lo) * k / (kCandidates - 1));
    rss[k] = misfit(tau, nullptr);
    if (rss[k] < best_rss) {
      best_rss = rss[k];
      best = k;
    }
  }

  ExpFit fit;
  const double step = (hi - lo) / (kCandidates - 1);
  double log_tau = lo + step * best;
  if (best > 0 && best < kCandidates - 1) {
    // Parabola through the winning candidate and its neighbours.
    const double d1 = rss[best + 1] - rss[best - 1];
    const double d2 = rss[best + 1] - 2.0 * rss[best] + rss[best - 1];
    if (d2 > 0.0) {
      const double shift = -0.5 * d1 / d2;
      if (std::abs(shift) < 1.0) log_tau += shift * step;
    }
    fit.ok = true;
  }
  fit.tau_s = std::exp(log_tau);
  fit.rms = std::sqrt(misfit(fit.tau_s, &fit.p_inf) / static_cast<double>(n));
  if (!(std::abs(fit.p_inf) > 1.0e-9) || !std::isfinite(fit.tau_s)) fit.ok = false;
  return fit;
}

}  // namespace

void SweepConfig::validate() const {
  if (field_grid_mT.empty()) throw DomainError("SweepConfig: field grid must not be empty");
  for (size_t i = 1; i < field_grid_mT.size(); ++i) {
    if (!(field_grid_mT[i] > field_grid_mT[i - 1])) {
      throw DomainError("SweepConfig: field grid must be strictly increasing");
    }
  }
  if (orientations.empty()) throw DomainError("SweepConfig: need at least one orientation");
  if (!std::isfinite(hyperfine_scale) || hyperfine_scale < 0.0) {
    throw DomainError("SweepConfig: hyperfine_scale must be finite and >= 0");
  }
  if (threads < 1) throw DomainError("SweepConfig: threads must be >= 1");
  params.validate();
  pump.validate();
  tensor.validate();
}

std::vector<EulerAngles> haar_orientations(int count, std::uint64_t seed) {
  if (count < 0) throw DomainError("haar_orientations: count must be >= 0");
  std::mt19937_64 rng(seed);
  // Top 53 bits of each draw -> uniform double in [0, 1).  Spelled out
  // here (rather than std::uniform_real_distribution) so that a given
  // seed produces the same orientations on every platform.
  const auto u01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<EulerAngles> out;
  out.reserve(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k) {
    EulerAngles e;
    e.alpha = 2.0 * units::pi * u01();
    e.beta = std::acos(2.0 * u01() - 1.0);
    e.gamma = 2.0 * units::pi * u01();
    out.push_back(e);
  }
  return out;
}

double nuclear_polarization(const ComplexMatrix& rho) {
  if (rho.rows() != 6 || rho.cols() != 6) {
    throw DomainError("nuclear_polarization: expected a 6x6 state");
  }
  double p = 0.0;
  for (int e = 0; e < 6; e += 2) p += rho(e, e).real() - rho(e + 1, e + 1).real();
  return p;
}

SweepResult field_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const size_t nf = cfg.field_grid_mT.size();
  const size_t no = cfg.orientations.size();
  const size_t total = nf * no;

  SweepResult out;
  out.fields_mT = cfg.field_grid_mT;
  out.per_orientation.resize(static_cast<Eigen::Index>(nf), static_cast<Eigen::Index>(no));

  // Every task writes only its own slot, so the result cannot depend on
  // how tasks land on threads.
  std::vector<char> failed(total, 0);
  std::vector<std::string> errors(total);
  std::atomic<size_t> next{0};
  const auto worker = [&] {
    for (size_t k = next.fetch_add(1); k < total; k = next.fetch_add(1)) {
      const size_t i = k / no;  // field index
      const size_t j = k % no;  // orientation index
      try {
        out.per_orientation(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            steady_polarization(cfg, cfg.hyperfine_scale, cfg.orientations[j],
                                cfg.field_grid_mT[i]);
      } catch (const std::exception& e) {
        failed[k] = 1;
        errors[k] = e.what();
      }
    }
  };

  if (cfg.threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(cfg.threads));
    for (int t = 0; t < cfg.threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (size_t k = 0; k < total; ++k) {
    if (failed[k]) {
      const size_t i = k / no, j = k % no;
      throw SweepSolverError("field_sweep: " + errors[k], static_cast<int>(j),
                             cfg.field_grid_mT[i]);
    }
  }

  out.mean.resize(nf);
  for (size_t i = 0; i < nf; ++i) {
    out.mean[i] = out.per_orientation.row(static_cast<Eigen::Index>(i)).mean();
  }
  out.zero_crossings_mT = find_zero_crossings(out.fields_mT, out.mean);
  return out;
}

std::vector<double> find_zero_crossings(const std::vector<double>& fields_mT,
                                        const std::vector<double>& values) {
  if (fields_mT.size() != values.size()) {
    throw DomainError("find_zero_crossings: grid/value length mismatch");
  }
  for (size_t i = 1; i < fields_mT.size(); ++i) {
    if (!(fields_mT[i] > fields_mT[i - 1])) {
      throw DomainError("find_zero_crossings: fields must be strictly increasing");
    }
  }

  std::vector<double> roots;
  std::ptrdiff_t last = -1;  // index of the last sample above the zero gate
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(values.size()); ++i) {
    if (std::abs(values[i]) < kZeroGate) continue;
    if (last >= 0) {
      const double a = values[last], b = values[i];
      if ((a < 0.0) != (b < 0.0)) {
        if (i == last + 1) {
          // Clean sign flip between neighbours: linear interpolation.
          const double t = a / (a - b);
          roots.push_back(fields_mT[last] + t * (fields_mT[i] - fields_mT[last]));
        } else {
          // A run of gated zeros separates the signs: one crossing at the
          // middle of the run.
          roots.push_back(0.5 * (fields_mT[last + 1] + fields_mT[i - 1]));
        }
      }
    }
    last = i;
  }
  return roots;
}

std::vector<double> buildup_curve(const SweepConfig& cfg, const std::vector<double>& t_grid_s) {
  cfg.validate();
  if (cfg.field_grid_mT.size() != 1) {
    throw DomainError("buildup_curve: config must pin exactly one field");
  }
  if (t_grid_s.empty() || t_grid_s.front() != 0.0) {
    throw DomainError("buildup_curve: time grid must start at 0");
  }
  for (size_t i = 1; i < t_grid_s.size(); ++i) {
    if (!(t_grid_s[i] > t_grid_s[i - 1])) {
      throw DomainError("buildup_curve: time grid must be strictly increasing");
    }
  }

  const ComplexMatrix h =
      hamiltonian_at(cfg, cfg.hyperfine_scale, cfg.orientations.front(), cfg.field_grid_mT[0]);
  const Propagator prop(assemble_liouvillian(h, cfg.pump));
  const ComplexMatrix rho0 = ComplexMatrix::Identity(6, 6) / 6.0;

  std::vector<double> out;
  out.reserve(t_grid_s.size());
  for (double t : t_grid_s) {
    out.push_back(nuclear_polarization(prop.at(rho0, t)));
  }
  return out;
}

BuildupResult buildup_timescales(const std::vector<double>& magnitudes_kHz,
                                 const SweepConfig& base) {
  base.validate();
  if (magnitudes_kHz.empty()) {
    throw DomainError("buildup_timescales: need at least one coupling magnitude");
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix3> es(base.tensor.a_MHz);
  const double strength_MHz = es.eigenvalues().cwiseAbs().maxCoeff();
  if (!(strength_MHz > 0.0)) {
    throw DomainError("buildup_timescales: base tensor must be nonzero");
  }

  BuildupResult out;
  for (const double mag_kHz : magnitudes_kHz) {
    if (!(mag_kHz > 0.0)) {
      throw DomainError("buildup_timescales: coupling strengths must be > 0");
    }
    const double scale = mag_kHz * units::MHz_per_kHz / strength_MHz;

    // Transfer-optimal field: largest steady-state |P| on the scan grid
    // (first hit wins on ties).
    SweepConfig scan = base;
    scan.hyperfine_scale = scale;
    scan.orientations = {base.orientations.front()};
    const SweepResult swept = field_sweep(scan);
    size_t best = 0;
    for (size_t i = 1; i < swept.mean.size(); ++i) {
      if (std::abs(swept.mean[i]) > std::abs(swept.mean[best])) best = i;
    }
    const double field = swept.fields_mT[best];

    const ComplexMatrix h = hamiltonian_at(base, scale, base.orientations.front(), field);
    const Propagator prop(assemble_liouvillian(h, base.pump));

    out.hyperfine_magnitudes_kHz.push_back(mag_kHz);
    out.field_mT.push_back(field);
    if (!(prop.slowest_rate_per_s() > 0.0)) {
      // Nothing decays: no timescale to fit.
      out.timescales_s.push_back(std::numeric_limits<double>::quiet_NaN());
      out.p_infinity.push_back(std::numeric_limits<double>::quiet_NaN());
      out.fit_residuals.push_back(std::numeric_limits<double>::quiet_NaN());
      out.converged.push_back(false);
      continue;
    }

    // Sample the buildup on a log grid wide enough to bracket the slowest
    // mode on both sides.
    const double tau_slow_s = 1.0 / prop.slowest_rate_per_s();
    constexpr int kSamples = 80;
    std::vector<double> t_s(kSamples), p(kSamples);
    const double lo = std::log(tau_slow_s * 1.0e-5);
    const double hi = std::log(tau_slow_s * 30.0);
    const ComplexMatrix rho0 = ComplexMatrix::Identity(6, 6) / 6.0;
    for (int k = 0; k < kSamples; ++k) {
      t_s[k] = std::exp(lo + (hi - lo) * k / (kSamples - 1));
      p[k] = nuclear_polarization(prop.at(rho0, t_s[k]));
    }

    const ExpFit fit = fit_exponential(t_s, p);
    out.timescales_s.push_back(fit.tau_s);
    out.p_infinity.push_back(fit.p_inf);
    out.fit_residuals.push_back(fit.rms);
    out.converged.push_back(fit.ok);
  }
  return out;
}

}  // namespace nvpol
