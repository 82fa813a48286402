// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>

#include "cumulus/noise.hpp"
#include "cumulus/transport.hpp"

namespace cumulus {

// A view ray clipped to the volume bounds: [t_min, t_max] is the parametric
// overlap, direction unit length.
struct Ray {
    Vec3 origin;
    Vec3 direction;
    double t_min = 0.0;
    double t_max = 0.0;
};

enum class IntegrationMode { Naive, Analytic };

enum class JitterMode { Off, PerPixel, PerFrameUniform };

struct RaymarchConfig {
    int n_steps = 128;
    int n_light_steps = 6;
    IntegrationMode integration_mode = IntegrationMode::Analytic;
    JitterMode jitter_mode = JitterMode::Off;
    double alpha_early_out = 1.0 - 1e-4;  // alpha never reaches exactly 1 in fp
};

// Result of marching one ray.
struct PixelSample {
    Rgb color;
    double alpha = 0.0;       // 1 - final transmittance
    double mean_depth = 0.0;  // scattering-luminance-weighted sample distance
};

// Exact tallies of sample_density calls, split by primary march and lighting
// march. Wired through so frame stats can be integer-exact.
struct MarchCounters {
    long long density_samples = 0;
    long long light_samples = 0;
};

// Slab intersection of a ray with axis-aligned bounds, clamped to t >= 0.
// Empty when the ray misses or the box lies entirely behind the origin.
std::optional<std::pair<double, double>> intersect_bounds(const Vec3& origin, const Vec3& direction, const VolumeBounds& bounds);

// Start offset of the raymarch in [0, step_length).
//   Off:             0
//   PerPixel:        avalanche hash of (pixel_x, pixel_y, frame_index)
//   PerFrameUniform: hash of frame_index alone, identical for every pixel
double jitter_offset(int pixel_x, int pixel_y, int frame_index, double step_length, JitterMode mode);

// Secondary march from a point toward the sun: the overlap of the sun ray
// with the bounds is split into n_light_steps equal segments, density is
// sampled at each segment midpoint, and the Beer-Lambert factors multiply.
// Returns 1 when the sun ray never crosses the bounds.
double light_march(const DensityField& field, const MediumParams& medium, const Vec3& from_point, int n_light_steps, MarchCounters* counters = nullptr);

// Primary march. Steps have length (t_max - t_min)/n_steps; density is
// sampled at t_min + start_offset + i*step_length. Each step runs the
// lighting march, evaluates the phase at dot(ray.direction, sun_direction),
// accumulates scattering via the configured integration mode (zero-density
// samples add nothing) and multiplies the running transmittance. Terminates
// once 1 - T >= alpha_early_out.
PixelSample march_primary(const DensityField& field, const MediumParams& medium, const Ray& ray, const RaymarchConfig& config, double start_offset, MarchCounters* counters = nullptr);

}  // namespace cumulus
