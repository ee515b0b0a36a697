#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "bistatic/analytic.hpp"
#include "bistatic/montecarlo.hpp"

namespace bistatic {

/// One curve of a parameter sweep.
struct SweepSpec {
  std::string panel;       // CSV label, "<panel id>:<series>"
  std::string swept_name;  // see apply_parameter()
  std::vector<double> grid;
  RadarSystem system;
  Scene scene;
  double kappa = 50.0;
  SimConfig sim;
  std::vector<std::string> markers;  // kappa_transition, kappa_monostatic, ptx_max, bw_opt
};

struct SweepRow {
  std::string panel;
  std::string swept_name;
  double swept_value = 0.0;
  double kappa = 0.0;
  double pdc_analytic = 0.0;
  double pdc_mc = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double noise_exponent = 0.0;
  double clutter_exponent = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::string error;  // non-empty for a failed point; numeric fields are NaN
};

struct Marker {
  std::string panel;
  std::string name;
  double value = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<Marker> markers;
  std::vector<std::string> warnings;

  void append(const SweepResult& other);
};

/// Sets a named parameter. Names: kappa, ptx, a0, beamwidth (both antennas),
/// wavelength, ts, bw (pulse width follows 1/bw), rho, sigma_t, sigma_c, gamma, L.
void apply_parameter(const std::string& name, double value, RadarSystem& sys, Scene& scene, double& kappa);

/// Evaluates every grid point. Point j draws its trials from base.substream(j).
SweepResult run_sweep(const SweepSpec& spec, const RandomStream& base);
SweepResult run_sweep(const SweepSpec& spec);

std::vector<double> log_space(double lo, double hi, std::size_t n);
std::vector<double> lin_space(double lo, double hi, std::size_t n);

/// Default curves for panels 'a'..'f' built around the given base parameters.
std::vector<SweepSpec> panel_specs(char panel, const RadarSystem& sys, const Scene& scene, const SimConfig& sim);

/// All curves of a panel; curve s uses RandomStream(sim.seed).substream(s).
SweepResult run_panel(char panel, const RadarSystem& sys, const Scene& scene, const SimConfig& sim);

inline constexpr const char* kSweepCsvHeader =
    "panel,swept_name,swept_value,kappa_m,pdc_analytic,pdc_mc,ci_low,ci_high,noise_exp,clutter_exp,trials,seed";
inline constexpr const char* kMarkersCsvHeader = "panel,marker_name,marker_value";

/// %.17g rendering (round-trip exact).
std::string format_number(double v);

void write_sweep_csv(std::ostream& os, const SweepResult& result);
void write_markers_csv(std::ostream& os, const SweepResult& result);

struct SlopeFit {
  double slope = 0.0;
  double slope_stderr = 0.0;
  double intercept = 0.0;
};

/// Least-squares slope of ln(ys) against ln(xs).
SlopeFit log_slope(std::span<const double> xs, std::span<const double> ys);

/// Slope of ln(-ln pdc) against ln(kappa), i.e. the power of kappa in the exponent.
SlopeFit exponent_power_law(std::span<const double> kappas, std::span<const double> pdcs);

}  // namespace bistatic
