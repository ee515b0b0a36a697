// bistatic: coverage probability of a bistatic radar in Poisson clutter.
//
// Exit codes: 0 success, 1 usage/config, 2 domain/numeric, 3 I/O.
#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bistatic/config.hpp"
#include "bistatic/corollaries.hpp"
#include "bistatic/error.hpp"
#include "bistatic/experiments.hpp"
#include "bistatic/geometry.hpp"
#include "bistatic/montecarlo.hpp"

using namespace bistatic;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kDomain = 2, kIo = 3 };

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return kUsage;
    case ErrorKind::Io: return kIo;
    default: return kDomain;
  }
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Config file plus per-key flag overrides; flags win.
struct ConfigArgs {
  std::string config_path;
  std::map<std::string, std::string> overrides;
  bool verbatim = false;
  std::string format = "text";

  void add_to(CLI::App* app, const std::vector<std::pair<std::string, std::string>>& keys) {
    app->add_option("--config", config_path, "JSON configuration file");
    for (const auto& [flag, key] : keys) {
      const std::string k = key;
      app->add_option_function<std::string>(
          flag, [this, k](const std::string& v) { overrides[k] = v; }, "override '" + k + "'");
    }
  }

  RunConfig resolve() const {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config_file(config_path);
    json overlay = json::object();
    for (const auto& [k, v] : overrides) {
      if (k == "region") {
        json arr = json::array();
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ',')) arr.push_back(scalar_from_text(item));
        overlay[k] = arr;
      } else if (k == "theta" || k == "beamwidth" || k == "beamwidth_tx" || k == "beamwidth_rx" || k == "gamma" ||
                 k == "mode" || k == "cell" || k == "regime" || k == "range_bin") {
        overlay[k] = v;
      } else {
        overlay[k] = scalar_from_text(v);
      }
    }
    if (verbatim) overlay["verbatim"] = true;
    merge_config(cfg, overlay);
    return cfg;
  }
};

const std::vector<std::pair<std::string, std::string>> kPhysicsKeys = {
    {"--L", "L"},
    {"--kappa", "kappa"},
    {"--ptx", "ptx"},
    {"--a0", "a0"},
    {"--beamwidth", "beamwidth"},
    {"--beamwidth-tx", "beamwidth_tx"},
    {"--beamwidth-rx", "beamwidth_rx"},
    {"--wavelength", "wavelength"},
    {"--ts", "ts"},
    {"--bw", "bw"},
    {"--pulse-width", "pulse_width"},
    {"--rho", "rho"},
    {"--sigma-t", "sigma_t"},
    {"--sigma-c", "sigma_c"},
    {"--gamma", "gamma"},
    {"--kappa-m", "kappa_m"},
    {"--cell", "cell"},
    {"--regime", "regime"},
};

const std::vector<std::pair<std::string, std::string>> kSimKeys = {
    {"--trials", "trials"}, {"--seed", "seed"}, {"--mode", "mode"}, {"--range-bin", "range_bin"}, {"--region", "region"},
};

std::vector<std::pair<std::string, std::string>> concat(std::vector<std::pair<std::string, std::string>> a,
                                                        const std::vector<std::pair<std::string, std::string>>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

void emit(const std::string& format, const RunConfig& cfg, const std::vector<std::pair<std::string, json>>& fields) {
  if (format == "json") {
    json result = json::object();
    for (const auto& [k, v] : fields) result[k] = v;
    std::cout << json{{"config", to_json(cfg)}, {"result", result}}.dump(2) << '\n';
    return;
  }
  for (const auto& [k, v] : fields) {
    std::cout << k << '=';
    if (v.is_number_float()) std::cout << fmt(v.get<double>());
    else if (v.is_string()) std::cout << v.get<std::string>();
    else std::cout << v.dump();
    std::cout << '\n';
  }
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "WARN: " << w << '\n';
}

int run_geometry(const ConfigArgs& args) {
  const RunConfig cfg = args.resolve();
  const double L = cfg.scene.layout.baseline;
  const Regime regime = classify_regime(L, cfg.kappa);
  if (regime == Regime::Split) {
    std::cerr << "regime=Split: L > 2 kappa, the Cassini oval splits into two lobes\n";
    return kDomain;
  }
  const GeometrySolution g = solve_geometry(L, cfg.kappa, cfg.theta);
  emit(args.format, cfg,
       {{"regime", std::string(to_string(g.regime))},
        {"r_t", g.radial_distance},
        {"R_tx", g.tx_range},
        {"R_rx", g.rx_range},
        {"beta", g.bistatic_angle},
        {"sin_beta", g.sin_beta},
        {"sin_beta_max", sin_beta_max(L, cfg.kappa)},
        {"target_x", g.target.x},
        {"target_y", g.target.y}});
  return kOk;
}

int run_analytic(const ConfigArgs& args) {
  const RunConfig cfg = args.resolve();
  const PdcBreakdown b = pdc(cfg.system, cfg.scene, cfg.kappa, cfg.sim.cell, cfg.sim.regime, cfg.sim.analytic);
  emit(args.format, cfg,
       {{"pdc", b.pdc},
        {"noise_exponent", b.noise_exponent},
        {"clutter_exponent", b.clutter_exponent},
        {"regime", std::string(to_string(b.regime))},
        {"cell", std::string(to_string(b.cell))},
        {"variant", cfg.verbatim ? "verbatim" : "consistent"}});
  return kOk;
}

int run_design(const ConfigArgs& args, const std::string& solve) {
  const RunConfig cfg = args.resolve();
  DesignValue v;
  std::string note;
  if (solve == "kappa-transition") {
    v = kappa_transition(cfg.system, cfg.scene);
    note = "published closed form omits the (4 pi)^3 propagation constant";
  } else if (solve == "ptx-max") {
    v = ptx_max(cfg.system, cfg.scene, cfg.kappa);
    note = "published closed form omits the (4 pi)^3 propagation constant";
  } else if (solve == "kappa-mono") {
    v = kappa_monostatic(cfg.system, cfg.scene);
    note = "published closed form drops gamma from the clutter term";
  } else if (solve == "sigmac-limit") {
    v = pdc_sigmac_limit(cfg.system, cfg.scene, cfg.kappa);
    note = "published limit carries a residual 1/gamma";
  } else if (solve == "bw-opt") {
    v = bw_optimal(cfg.system, cfg.scene, cfg.kappa);
    note = "published closed form uses (1 - L^2/kappa^2) in place of cos^2(beta_max)";
  } else {
    throw Error(ErrorKind::Config, "unknown solver '" + solve + "'");
  }
  emit(args.format, cfg,
       {{"solve", solve},
        {"closed_form", v.closed_form},
        {"numeric", v.numeric},
        {"verbatim", v.verbatim},
        {"relative_difference", v.relative_difference()},
        {"verbatim_relative_difference", v.verbatim_relative_difference()}});
  if (v.relative_difference() > 1e-6) {
    std::cerr << "WARN: numeric solution differs from the closed form by " << fmt(v.relative_difference()) << '\n';
  }
  if (!(v.verbatim_relative_difference() <= 1e-6)) {
    std::cerr << "WARN: verbatim-vs-derived discrepancy " << fmt(v.verbatim_relative_difference()) << " (" << note
              << ")\n";
  }
  return kOk;
}

int run_simulate(const ConfigArgs& args, unsigned threads, const std::string& dump, bool strict) {
  if (strict && !args.overrides.count("seed")) throw Error(ErrorKind::Config, "--strict-repro requires --seed");
  RunConfig cfg = args.resolve();
  if (cfg.sim.trials < 100) throw Error(ErrorKind::Config, "simulate requires --trials >= 100");
  cfg.sim.threads = threads;
  std::vector<TrialOutcome> outcomes;
  const PdcEstimate est = estimate_pdc(cfg.system, cfg.scene, cfg.kappa, cfg.sim, dump.empty() ? nullptr : &outcomes);
  print_warnings(est.warnings);
  emit(args.format, cfg,
       {{"p_hat", est.p_hat},
        {"ci_low", est.ci_low},
        {"ci_high", est.ci_high},
        {"trials", est.trials},
        {"detections", est.detections},
        {"analytic_pdc", est.analytic_pdc},
        {"z_score", est.z_score},
        {"mode", std::string(to_string(cfg.sim.mode))},
        {"cell", std::string(to_string(cfg.sim.cell))},
        {"seed", cfg.sim.seed},
        {"target_resamples", est.target_resamples}});
  if (!dump.empty()) {
    std::ofstream out(dump);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + dump + "'");
    out << "trial,theta,scnr,detected,beta,rmin_over_kappa,clutter_in_cell\n";
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      const auto& o = outcomes[i];
      out << i << ',' << format_number(o.polar_angle) << ',' << format_number(o.scnr) << ',' << (o.detected ? 1 : 0)
          << ',' << format_number(o.bistatic_angle) << ',' << format_number(o.rmin_over_kappa) << ','
          << o.clutter_in_cell << '\n';
    }
    if (!out) throw Error(ErrorKind::Io, "failed writing '" + dump + "'");
  }
  return kOk;
}

std::string markers_path(const std::string& out) {
  const std::string ext = ".csv";
  if (out.size() > ext.size() && out.compare(out.size() - ext.size(), ext.size(), ext) == 0) {
    return out.substr(0, out.size() - ext.size()) + ".markers.csv";
  }
  return out + ".markers.csv";
}

int run_sweep_cmd(const ConfigArgs& args, const std::string& panels, const std::string& out_path, unsigned threads,
                  bool strict) {
  if (strict && !args.overrides.count("seed")) throw Error(ErrorKind::Config, "--strict-repro requires --seed");
  RunConfig cfg = args.resolve();
  cfg.sim.threads = threads;
  SweepResult all;
  const std::string list = panels == "all" ? "abcdef" : panels;
  for (char p : list) all.append(run_panel(p, cfg.system, cfg.scene, cfg.sim));
  print_warnings(all.warnings);

  std::ofstream csv(out_path);
  if (!csv) throw Error(ErrorKind::Io, "cannot write '" + out_path + "'");
  write_sweep_csv(csv, all);
  std::ofstream markers(markers_path(out_path));
  if (!markers) throw Error(ErrorKind::Io, "cannot write '" + markers_path(out_path) + "'");
  write_markers_csv(markers, all);
  if (!csv || !markers) throw Error(ErrorKind::Io, "failed writing sweep output");
  std::cout << "rows=" << all.rows.size() << '\n'
            << "markers=" << all.markers.size() << '\n'
            << "csv=" << out_path << '\n'
            << "markers_csv=" << markers_path(out_path) << '\n';
  return kOk;
}

int run_hist(const ConfigArgs& args, const std::string& which, std::size_t bins, const std::string& out_path) {
  RunConfig cfg = args.resolve();
  const double L = cfg.scene.layout.baseline;
  const std::size_t trials = args.overrides.count("trials") ? cfg.sim.trials : (which == "rmin" ? 2000 : 10000);
  Histogram h;
  double reference = 0.0;
  if (which == "sinbeta") {
    h = histogram_sin_beta(L, cfg.kappa, trials, bins, cfg.sim.seed);
    reference = sin_beta_max(L, cfg.kappa);
  } else if (which == "rmin") {
    h = histogram_rmin(L, cfg.kappa, trials, bins, cfg.sim.seed);
    reference = 1.0 - 0.5 * L / cfg.kappa;
  } else {
    throw Error(ErrorKind::Config, "--which must be sinbeta|rmin");
  }
  const std::size_t mode = h.mode_bin();
  std::cout << "which=" << which << '\n'
            << "trials=" << h.total << '\n'
            << "min=" << fmt(h.min_sample) << '\n'
            << "max=" << fmt(h.max_sample) << '\n'
            << "mode_bin_lo=" << fmt(h.bin_lo(mode)) << '\n'
            << "mode_bin_hi=" << fmt(h.bin_hi(mode)) << '\n'
            << (which == "sinbeta" ? "sin_beta_max=" : "lower_bound=") << fmt(reference) << '\n';
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + out_path + "'");
    out << "which,bin_lo,bin_hi,count\n";
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
      out << which << ',' << format_number(h.bin_lo(i)) << ',' << format_number(h.bin_hi(i)) << ',' << h.counts[i]
          << '\n';
    }
    if (!out) throw Error(ErrorKind::Io, "failed writing '" + out_path + "'");
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bistatic radar detection coverage probability under Poisson clutter"};
  app.require_subcommand(1);

  unsigned threads = default_thread_count();
  bool strict = false;

  ConfigArgs geo_args;
  auto* geo = app.add_subcommand("geometry", "Solve the bistatic geometry for one target placement");
  geo_args.add_to(geo, {{"--L", "L"}, {"--kappa", "kappa"}, {"--theta", "theta"}});
  geo->add_option("--format", geo_args.format)->check(CLI::IsMember({"text", "json"}));

  ConfigArgs an_args;
  auto* an = app.add_subcommand("analytic", "Closed-form P_dc with its noise and clutter exponents");
  an_args.add_to(an, kPhysicsKeys);
  an->add_flag("--verbatim", an_args.verbatim, "use the published gamma-less / kappa_m forms");
  an->add_option("--format", an_args.format)->check(CLI::IsMember({"text", "json"}));

  ConfigArgs de_args;
  std::string solve;
  auto* de = app.add_subcommand("design", "Design quantities: closed form vs numeric");
  de_args.add_to(de, kPhysicsKeys);
  de->add_option("--solve", solve, "kappa-transition|ptx-max|kappa-mono|sigmac-limit|bw-opt")
      ->required()
      ->check(CLI::IsMember({"kappa-transition", "ptx-max", "kappa-mono", "sigmac-limit", "bw-opt"}));
  de->add_option("--format", de_args.format)->check(CLI::IsMember({"text", "json"}));

  ConfigArgs sim_args;
  std::string dump;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo estimate of P_dc");
  sim_args.add_to(sim, concat(kPhysicsKeys, kSimKeys));
  sim->add_option("--dump", dump, "write per-trial outcomes as CSV");
  sim->add_option("--threads", threads, "worker threads (default: BISTATIC_THREADS or 1)");
  sim->add_flag("--strict-repro", strict, "require an explicit seed");
  sim->add_option("--format", sim_args.format)->check(CLI::IsMember({"text", "json"}));

  ConfigArgs sw_args;
  std::string panel, out_path;
  auto* sw = app.add_subcommand("sweep", "Parameter sweeps (analytic + Monte Carlo) as CSV");
  sw_args.add_to(sw, concat(kPhysicsKeys, kSimKeys));
  sw->add_option("--panel", panel, "a-f, several letters, or all")->required();
  sw->add_option("--out", out_path, "output CSV; markers go to <out>.markers.csv")->required();
  sw->add_option("--threads", threads, "worker threads (default: BISTATIC_THREADS or 1)");
  sw->add_flag("--strict-repro", strict, "require an explicit seed");

  ConfigArgs hi_args;
  std::string which;
  std::size_t bins = 50;
  std::string hist_out;
  auto* hi = app.add_subcommand("hist", "Distribution of sin(beta) or R_min/kappa over uniform theta_t");
  hi_args.add_to(hi, {{"--L", "L"}, {"--kappa", "kappa"}, {"--trials", "trials"}, {"--seed", "seed"}});
  hi->add_option("--which", which, "sinbeta|rmin")->required()->check(CLI::IsMember({"sinbeta", "rmin"}));
  hi->add_option("--bins", bins, "number of bins")->check(CLI::PositiveNumber);
  hi->add_option("--out", hist_out, "histogram CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*geo) return run_geometry(geo_args);
    if (*an) return run_analytic(an_args);
    if (*de) return run_design(de_args, solve);
    if (*sim) return run_simulate(sim_args, threads, dump, strict);
    if (*sw) {
      for (char c : panel) {
        if (panel != "all" && (c < 'a' || c > 'f')) throw Error(ErrorKind::Config, "--panel must be letters a-f or all");
      }
      return run_sweep_cmd(sw_args, panel, out_path, threads, strict);
    }
    if (*hi) return run_hist(hi_args, which, bins, hist_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  }
  return kUsage;
}
