#pragma once

#include "bistatic/analytic.hpp"

namespace bistatic {

/// A design quantity computed three ways.
///
/// `closed_form` is the internally consistent closed form (gamma-carrying
/// clutter term, (4 pi)^3 kept). `numeric` comes from a root-finder or
/// optimizer applied to the exponent functions directly. `verbatim` is the
/// published boxed form, kept for comparison.
struct DesignValue {
  double closed_form = 0.0;
  double numeric = 0.0;
  double verbatim = 0.0;

  double relative_difference() const;           // |numeric - closed_form| / |closed_form|
  double verbatim_relative_difference() const;  // |verbatim - closed_form| / |closed_form|
};

/// Bistatic range at which the noise and clutter exponents (beam cell, co-site) are equal.
/// Root is bracketed over [L/2 (1 + 1e-9), 1e6] m; NoCrossing otherwise.
DesignValue kappa_transition(const RadarSystem& sys, const Scene& scene);

/// Transmit power at which the noise and clutter exponents are equal at `kappa`.
DesignValue ptx_max(const RadarSystem& sys, const Scene& scene, double kappa);

/// Bistatic range at which the clutter-only P_dc falls to 1/e.
DesignValue kappa_monostatic(const RadarSystem& sys, const Scene& scene);

/// Clutter-only P_dc as mean clutter RCS grows without bound: exp(-rho kappa^3 dtheta^2 / L).
DesignValue pdc_sigmac_limit(const RadarSystem& sys, const Scene& scene, double kappa);

/// Bandwidth minimizing the range-cell exponent with pulse width tied to 1/BW.
///
/// The exponent is a BW + b / BW with a from the noise term and b from the
/// clutter term, so the optimum is sqrt(b / a) and the two terms are equal there.
/// The numeric route scans a log grid and refines with Brent's method.
DesignValue bw_optimal(const RadarSystem& sys, const Scene& scene, double kappa);

/// Range-cell P_dc at bandwidth `bw` with pulse width 1/bw (Derived area).
PdcBreakdown pdc_at_bandwidth(const RadarSystem& sys, const Scene& scene, double kappa, double bw);

}  // namespace bistatic
