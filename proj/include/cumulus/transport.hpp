// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "cumulus/math.hpp"

namespace cumulus {

// Participating-medium parameters. sun_direction points from the scene
// toward the sun and must be unit length.
struct MediumParams {
    double absorption = 1.0;   // alpha, per world unit at density 1
    double hg_g = 0.5;         // Henyey-Greenstein asymmetry, |g| < 1
    Vec3 sun_direction{0.0, 1.0, 0.0};
    Rgb sun_radiance{1.0, 1.0, 1.0};
    Rgb ambient_radiance{0.0, 0.0, 0.0};
};

// One raymarch step's output: radiance added to the pixel and the factor the
// running transmittance is multiplied by.
struct StepContribution {
    Rgb delta_scattering;
    double transmittance_factor = 1.0;  // e^(-rho*alpha*dist)
};

// Beer-Lambert survival fraction over a constant-density segment.
// 1 when rho or dist is zero; rejects negative inputs.
double transmittance_factor(double rho, double alpha, double dist);

// Henyey-Greenstein phase function, per steradian:
//   p(cos_theta) = (1 - g^2) / (4*pi * (1 + g^2 - 2*g*cos_theta)^(3/2))
// Normalized so the integral over the sphere is 1. Rejects |g| >= 1.
double hg_phase(double g, double cos_theta);

// Radiance arriving at a sample point: sun attenuated by the lighting march
// and shaped by the phase function, plus the ambient term.
Rgb lighting_term(double sun_transmittance, double phase, const MediumParams& medium);

// Discrete update that treats transmittance as constant across the step:
// delta = T * L * rho * dist. Brightness from this update depends on the
// step length, which is what the analytic form fixes.
StepContribution scattering_step_naive(double transmittance, const Rgb& lighting, double rho, double alpha, double dist);

// Integrates the transmittance across the step with density held constant:
//   delta = T0 * L * (1 - e^(-rho*alpha*dist)) / (rho*alpha)
// Splitting a step into sub-steps leaves the total unchanged. Near
// rho*alpha*dist = 0 the factor is evaluated by a 3-term Taylor series to
// avoid cancellation.
StepContribution scattering_step_analytic(double transmittance_start, const Rgb& lighting, double rho, double alpha, double dist);

// (1 - e^(-u))/(rho*alpha) with the small-u Taylor guard; exposed for tests.
double analytic_step_factor(double rho, double alpha, double dist);

}  // namespace cumulus
