// SPDX-License-Identifier: Apache-2.0
#include "cumulus/transport.hpp"

#include <cmath>
#include <stdexcept>

namespace cumulus {

namespace {

// Below this optical depth the closed form loses digits to cancellation.
constexpr double kTaylorThreshold = 1e-4;

void require_step_inputs(double rho, double alpha, double dist) {
    if (rho < 0.0) throw std::invalid_argument("transport: rho must be >= 0");
    if (alpha <= 0.0) throw std::invalid_argument("transport: alpha must be > 0");
    if (dist < 0.0) throw std::invalid_argument("transport: dist must be >= 0");
}

}  // namespace

double transmittance_factor(double rho, double alpha, double dist) {
    require_step_inputs(rho, alpha, dist);
    return std::exp(-rho * alpha * dist);
}

double hg_phase(double g, double cos_theta) {
    if (!(std::abs(g) < 1.0)) throw std::invalid_argument("hg_phase: |g| must be < 1");
    if (std::abs(cos_theta) > 1.0) throw std::invalid_argument("hg_phase: |cos_theta| must be <= 1");
    const double denom = 1.0 + g * g - 2.0 * g * cos_theta;
    return (1.0 - g * g) / (4.0 * kPi * denom * std::sqrt(denom));
}

Rgb lighting_term(double sun_transmittance, double phase, const MediumParams& medium) {
    if (sun_transmittance < 0.0 || phase < 0.0) throw std::invalid_argument("lighting_term: inputs must be >= 0");
    return medium.sun_radiance * (sun_transmittance * phase) + medium.ambient_radiance;
}

StepContribution scattering_step_naive(double transmittance, const Rgb& lighting, double rho, double alpha, double dist) {
    require_step_inputs(rho, alpha, dist);
    StepContribution out;
    out.delta_scattering = lighting * (transmittance * rho * dist);
    out.transmittance_factor = std::exp(-rho * alpha * dist);
    return out;
}

double analytic_step_factor(double rho, double alpha, double dist) {
    const double u = rho * alpha * dist;
    if (u < kTaylorThreshold) {
        return dist * (1.0 - u * 0.5 + u * u * (1.0 / 6.0));
    }
    return (1.0 - std::exp(-u)) / (rho * alpha);
}

StepContribution scattering_step_analytic(double transmittance_start, const Rgb& lighting, double rho, double alpha, double dist) {
    require_step_inputs(rho, alpha, dist);
    StepContribution out;
    out.delta_scattering = lighting * (transmittance_start * analytic_step_factor(rho, alpha, dist));
    out.transmittance_factor = std::exp(-rho * alpha * dist);
    return out;
}

}  // namespace cumulus
