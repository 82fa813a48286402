// SPDX-License-Identifier: Apache-2.0
#include "cumulus/raymarch.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cumulus {

std::optional<std::pair<double, double>> intersect_bounds(const Vec3& origin, const Vec3& direction, const VolumeBounds& bounds) {
    double t0 = 0.0;
    double t1 = std::numeric_limits<double>::infinity();

    const double o[3] = {origin.x, origin.y, origin.z};
    const double d[3] = {direction.x, direction.y, direction.z};
    const double lo[3] = {bounds.min_corner.x, bounds.min_corner.y, bounds.min_corner.z};
    const double hi[3] = {bounds.max_corner.x, bounds.max_corner.y, bounds.max_corner.z};

    for (int axis = 0; axis < 3; ++axis) {
        if (d[axis] == 0.0) {
            if (o[axis] < lo[axis] || o[axis] > hi[axis]) return std::nullopt;
            continue;
        }
        const double inv = 1.0 / d[axis];
        double tn = (lo[axis] - o[axis]) * inv;
        double tf = (hi[axis] - o[axis]) * inv;
        if (tn > tf) std::swap(tn, tf);
        t0 = std::max(t0, tn);
        t1 = std::min(t1, tf);
        if (t0 > t1) return std::nullopt;
    }
    return std::make_pair(t0, t1);
}

double jitter_offset(int pixel_x, int pixel_y, int frame_index, double step_length, JitterMode mode) {
    if (step_length <= 0.0) throw std::invalid_argument("jitter_offset: step_length must be > 0");
    switch (mode) {
        case JitterMode::Off:
            return 0.0;
        case JitterMode::PerPixel: {
            std::uint32_t h = pcg_hash(static_cast<std::uint32_t>(frame_index));
            h = pcg_hash(h + static_cast<std::uint32_t>(pixel_x));
            h = pcg_hash(h + static_cast<std::uint32_t>(pixel_y));
            return hash_to_unit(h) * step_length;
        }
        case JitterMode::PerFrameUniform:
            return hash_to_unit(pcg_hash(static_cast<std::uint32_t>(frame_index))) * step_length;
    }
    return 0.0;
}

double light_march(const DensityField& field, const MediumParams& medium, const Vec3& from_point, int n_light_steps, MarchCounters* counters) {
    if (n_light_steps < 1) throw std::invalid_argument("light_march: n_light_steps must be >= 1");

    // A sun ray that never crosses the bounds degenerates to a zero-length
    // march; it still takes exactly n_light_steps samples so per-frame
    // sample accounting stays integer-exact.
    double t0 = 0.0;
    double t1 = 0.0;
    if (const auto overlap = intersect_bounds(from_point, medium.sun_direction, field.bounds)) {
        t0 = overlap->first;
        t1 = overlap->second;
    }

    const double step = (t1 - t0) / n_light_steps;
    double transmittance = 1.0;
    for (int i = 0; i < n_light_steps; ++i) {
        const double t = t0 + (i + 0.5) * step;
        const double rho = sample_density(field, from_point + medium.sun_direction * t);
        if (counters) counters->light_samples++;
        transmittance *= std::exp(-rho * medium.absorption * step);
    }
    return transmittance;
}

PixelSample march_primary(const DensityField& field, const MediumParams& medium, const Ray& ray, const RaymarchConfig& config, double start_offset, MarchCounters* counters) {
    if (config.n_steps < 1) throw std::invalid_argument("march_primary: n_steps must be >= 1");

    const double span = ray.t_max - ray.t_min;
    const double step_length = span / config.n_steps;
    if (start_offset < 0.0 || (step_length > 0.0 && start_offset >= step_length))
        throw std::invalid_argument("march_primary: start_offset must be in [0, step_length)");

    // Both ray and sun directions are fixed along the march.
    const double phase = hg_phase(medium.hg_g, dot(ray.direction, medium.sun_direction));

    double transmittance = 1.0;
    Rgb color;
    double depth_weighted = 0.0;
    double weight_total = 0.0;

    for (int i = 0; i < config.n_steps; ++i) {
        const double t = ray.t_min + start_offset + i * step_length;
        const Vec3 p = ray.origin + ray.direction * t;

        const double rho = sample_density(field, p);
        if (counters) counters->density_samples++;

        const double sun_t = light_march(field, medium, p, config.n_light_steps, counters);
        const Rgb lighting = lighting_term(sun_t, phase, medium);

        const StepContribution step = config.integration_mode == IntegrationMode::Naive
                                          ? scattering_step_naive(transmittance, lighting, rho, medium.absorption, step_length)
                                          : scattering_step_analytic(transmittance, lighting, rho, medium.absorption, step_length);

        if (rho > 0.0) {
            color += step.delta_scattering;
            const double w = luminance(step.delta_scattering);
            depth_weighted += w * t;
            weight_total += w;
        }
        transmittance *= step.transmittance_factor;

        if (1.0 - transmittance >= config.alpha_early_out) break;
    }

    PixelSample out;
    out.color = color;
    out.alpha = 1.0 - transmittance;
    out.mean_depth = weight_total > 0.0 ? depth_weighted / weight_total : ray.t_max;
    return out;
}

}  // namespace cumulus
