#include "bistatic/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "bistatic/corollaries.hpp"
#include "bistatic/error.hpp"

namespace bistatic {

void SweepResult::append(const SweepResult& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
  markers.insert(markers.end(), other.markers.begin(), other.markers.end());
  warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
}

void apply_parameter(const std::string& name, double value, RadarSystem& sys, Scene& scene, double& kappa) {
  if (name == "kappa") kappa = value;
  else if (name == "ptx") sys.transmit_power = value;
  else if (name == "a0") sys.gain_constant = value;
  else if (name == "beamwidth") sys.beamwidth_tx = sys.beamwidth_rx = value;
  else if (name == "wavelength") sys.wavelength = value;
  else if (name == "ts") sys.noise_temperature = value;
  else if (name == "bw") {
    sys.bandwidth = value;
    sys.pulse_width = 1.0 / value;
  } else if (name == "rho") scene.clutter_density = value;
  else if (name == "sigma_t") scene.target_rcs = value;
  else if (name == "sigma_c") scene.clutter_rcs = value;
  else if (name == "gamma") scene.threshold = value;
  else if (name == "L") scene.layout.baseline = value;
  else throw Error(ErrorKind::Config, "unknown sweep parameter '" + name + "'");
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void add_markers(const SweepSpec& spec, SweepResult& out) {
  for (const auto& name : spec.markers) {
    try {
      double value = kNaN;
      if (name == "kappa_transition") value = kappa_transition(spec.system, spec.scene).closed_form;
      else if (name == "kappa_monostatic") value = kappa_monostatic(spec.system, spec.scene).closed_form;
      else if (name == "ptx_max") value = ptx_max(spec.system, spec.scene, spec.kappa).closed_form;
      else if (name == "bw_opt") value = bw_optimal(spec.system, spec.scene, spec.kappa).closed_form;
      else throw Error(ErrorKind::Config, "unknown marker '" + name + "'");
      out.markers.push_back({spec.panel, name, value});
    } catch (const Error& e) {
      out.warnings.push_back(spec.panel + " marker " + name + ": " + e.what());
    }
  }
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, const RandomStream& base) {
  if (spec.grid.empty()) throw Error(ErrorKind::Config, "sweep grid is empty");
  for (std::size_t i = 1; i < spec.grid.size(); ++i) {
    if (!(spec.grid[i] > spec.grid[i - 1])) throw Error(ErrorKind::Config, "sweep grid must be strictly increasing");
  }
  if (spec.sim.trials < 1000) throw Error(ErrorKind::Config, "sweeps require at least 1000 trials per point");

  SweepResult out;
  for (std::size_t j = 0; j < spec.grid.size(); ++j) {
    RadarSystem sys = spec.system;
    Scene scene = spec.scene;
    double kappa = spec.kappa;
    apply_parameter(spec.swept_name, spec.grid[j], sys, scene, kappa);

    SweepRow row;
    row.panel = spec.panel;
    row.swept_name = spec.swept_name;
    row.swept_value = spec.grid[j];
    row.kappa = kappa;
    row.trials = spec.sim.trials;
    row.seed = spec.sim.seed;
    try {
      const PdcBreakdown a = pdc(sys, scene, kappa, spec.sim.cell, spec.sim.regime, spec.sim.analytic);
      const PdcEstimate mc = estimate_pdc(sys, scene, kappa, spec.sim, base.substream(j));
      row.pdc_analytic = a.pdc;
      row.noise_exponent = a.noise_exponent;
      row.clutter_exponent = a.clutter_exponent;
      row.pdc_mc = mc.p_hat;
      row.ci_low = mc.ci_low;
      row.ci_high = mc.ci_high;
      for (const auto& w : mc.warnings) out.warnings.push_back(spec.panel + " " + w);
    } catch (const Error& e) {
      row.pdc_analytic = row.pdc_mc = row.ci_low = row.ci_high = kNaN;
      row.noise_exponent = row.clutter_exponent = kNaN;
      row.error = e.what();
      out.warnings.push_back(spec.panel + " " + spec.swept_name + "=" + format_number(spec.grid[j]) + ": " +
                             e.what());
    }
    out.rows.push_back(std::move(row));
  }
  add_markers(spec, out);
  return out;
}

SweepResult run_sweep(const SweepSpec& spec) { return run_sweep(spec, RandomStream(spec.sim.seed)); }

std::vector<double> log_space(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = n == 1 ? lo : std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  if (n > 1) {
    v.front() = lo;
    v.back() = hi;
  }
  return v;
}

std::vector<double> lin_space(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return v;
}

std::vector<SweepSpec> panel_specs(char panel, const RadarSystem& sys, const Scene& scene, const SimConfig& sim) {
  auto base = [&](std::string label, std::string swept, std::vector<double> grid, double kappa) {
    SweepSpec s;
    s.panel = std::string(1, panel) + ":" + std::move(label);
    s.swept_name = std::move(swept);
    s.grid = std::move(grid);
    s.system = sys;
    s.scene = scene;
    s.kappa = kappa;
    s.sim = sim;
    s.sim.cell = CellKind::Beamwidth;
    return s;
  };

  std::vector<SweepSpec> specs;
  switch (panel) {
    case 'a': {
      const auto grid = log_space(5.0, 200.0, 20);
      SweepSpec noise = base("rho=0", "kappa", grid, 50.0);
      noise.scene.clutter_density = 0.0;
      SweepSpec clutter = base("Ts=0", "kappa", grid, 50.0);
      clutter.system.noise_temperature = 0.0;
      SweepSpec both = base("rho=" + format_number(scene.clutter_density), "kappa", grid, 50.0);
      both.markers = {"kappa_transition"};
      specs = {noise, clutter, both};
      break;
    }
    case 'b': {
      for (double deg : {2.5, 5.0, 10.0}) {
        SweepSpec s = base("beamwidth_deg=" + format_number(deg), "kappa", log_space(5.0, 200.0, 20), 50.0);
        s.system.beamwidth_tx = s.system.beamwidth_rx = degrees(deg);
        s.markers = {"kappa_monostatic"};
        specs.push_back(s);
      }
      break;
    }
    case 'c': {
      for (double kappa : {10.0, 15.0, 20.0}) {
        SweepSpec s = base("kappa=" + format_number(kappa), "ptx", log_space(1e-3, 1e3, 25), kappa);
        s.markers = {"ptx_max"};
        specs.push_back(s);
      }
      break;
    }
    case 'd': {
      for (double rho : {0.5 * scene.clutter_density, scene.clutter_density, 2.0 * scene.clutter_density}) {
        SweepSpec s = base("rho=" + format_number(rho), "sigma_c", log_space(0.1, 10.0, 20), 30.0);
        s.scene.clutter_density = rho;
        specs.push_back(s);
      }
      break;
    }
    case 'e': {
      for (double rho : {0.5 * scene.clutter_density, scene.clutter_density, 2.0 * scene.clutter_density}) {
        SweepSpec s = base("rho=" + format_number(rho), "ts", lin_space(0.0, 600.0, 13), 30.0);
        s.scene.clutter_density = rho;
        specs.push_back(s);
      }
      break;
    }
    case 'f': {
      for (double kappa : {3.0, 4.0, 5.0}) {
        SweepSpec s = base("kappa=" + format_number(kappa), "bw", log_space(1e7, 1e11, 25), kappa);
        s.sim.cell = CellKind::Range;
        s.system.beamwidth_tx = s.system.beamwidth_rx;
        s.markers = {"bw_opt"};
        specs.push_back(s);
      }
      break;
    }
    default:
      throw Error(ErrorKind::Config, std::string("unknown panel '") + panel + "' (expected a-f)");
  }
  return specs;
}

SweepResult run_panel(char panel, const RadarSystem& sys, const Scene& scene, const SimConfig& sim) {
  const auto specs = panel_specs(panel, sys, scene, sim);
  const RandomStream root(sim.seed);
  SweepResult out;
  for (std::size_t s = 0; s < specs.size(); ++s) out.append(run_sweep(specs[s], root.substream(s)));
  return out;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
  os << kSweepCsvHeader << '\n';
  for (const auto& r : result.rows) {
    os << r.panel << ',' << r.swept_name << ',' << format_number(r.swept_value) << ',' << format_number(r.kappa)
       << ',' << format_number(r.pdc_analytic) << ',' << format_number(r.pdc_mc) << ',' << format_number(r.ci_low)
       << ',' << format_number(r.ci_high) << ',' << format_number(r.noise_exponent) << ','
       << format_number(r.clutter_exponent) << ',' << r.trials << ',' << r.seed << '\n';
  }
}

void write_markers_csv(std::ostream& os, const SweepResult& result) {
  os << kMarkersCsvHeader << '\n';
  for (const auto& m : result.markers) os << m.panel << ',' << m.name << ',' << format_number(m.value) << '\n';
}

SlopeFit log_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error(ErrorKind::Domain, "log_slope: size mismatch");
  if (xs.size() < 3) throw Error(ErrorKind::Domain, "log_slope needs at least 3 points");
  const std::size_t n = xs.size();
  std::vector<double> u(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0) || !std::isfinite(xs[i]) || !std::isfinite(ys[i])) {
      throw Error(ErrorKind::Domain, "log_slope: values must be positive and finite");
    }
    u[i] = std::log(xs[i]);
    v[i] = std::log(ys[i]);
  }
  double mu = 0.0, mv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mu += u[i];
    mv += v[i];
  }
  mu /= n;
  mv /= n;
  double suu = 0.0, suv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    suu += (u[i] - mu) * (u[i] - mu);
    suv += (u[i] - mu) * (v[i] - mv);
  }
  if (!(suu > 0.0)) throw Error(ErrorKind::Domain, "log_slope: xs are all equal");
  SlopeFit fit;
  fit.slope = suv / suu;
  fit.intercept = mv - fit.slope * mu;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = v[i] - (fit.intercept + fit.slope * u[i]);
    sse += r * r;
  }
  fit.slope_stderr = std::sqrt(sse / static_cast<double>(n - 2) / suu);
  return fit;
}

SlopeFit exponent_power_law(std::span<const double> kappas, std::span<const double> pdcs) {
  std::vector<double> e(pdcs.size());
  for (std::size_t i = 0; i < pdcs.size(); ++i) {
    if (!(pdcs[i] > 0.0 && pdcs[i] < 1.0)) throw Error(ErrorKind::Domain, "P_dc must lie in (0, 1) for a log slope");
    e[i] = -std::log(pdcs[i]);
  }
  return log_slope(kappas, e);
}

}  // namespace bistatic
