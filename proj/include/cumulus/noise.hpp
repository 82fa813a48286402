// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "cumulus/math.hpp"

namespace cumulus {

// Axis-aligned region of space the medium lives in. Density is zero outside.
struct VolumeBounds {
    Vec3 min_corner;
    Vec3 max_corner;

    bool contains(const Vec3& p) const {
        return p.x >= min_corner.x && p.x <= max_corner.x &&
               p.y >= min_corner.y && p.y <= max_corner.y &&
               p.z >= min_corner.z && p.z <= max_corner.z;
    }
};

enum class FieldKind { Constant, Sphere, Slab, Procedural };

// Description of a density function rho(p) >= 0 with bounded support.
// Evaluation is pure; procedural fields are bit-exact for a fixed seed.
struct DensityField {
    FieldKind kind = FieldKind::Constant;
    VolumeBounds bounds;

    // constant
    double constant_value = 0.0;

    // sphere
    Vec3 sphere_center;
    double sphere_radius = 1.0;
    double sphere_density = 1.0;

    // slab (altitude band in y)
    double slab_y_min = 0.0;
    double slab_y_max = 1.0;
    double slab_density = 1.0;

    // procedural clouds
    std::uint32_t seed = 0;
    double frequency = 1.0;
    int octaves = 4;
    double coverage = 0.5;
};

DensityField make_constant_field(double value, const VolumeBounds& bounds);
DensityField make_sphere_field(const Vec3& center, double radius, double density, const VolumeBounds& bounds);
DensityField make_slab_field(double y_min, double y_max, double density, const VolumeBounds& bounds);

// Fractal value noise remapped by a coverage threshold:
//   density = clamp((fbm - (1 - coverage)) / coverage, 0, 1)
// so density is non-decreasing in coverage at every point, 0 everywhere at
// coverage 0 and equal to the raw fbm at coverage 1.
// Rejects octaves < 1 or frequency <= 0.
DensityField make_procedural_clouds(std::uint32_t seed, double frequency, int octaves, double coverage, const VolumeBounds& bounds);

double sample_density(const DensityField& field, const Vec3& p);

// Hash-based value noise in [0,1), trilinear interpolation with a quintic
// fade; exposed for tests.
double value_noise3(std::uint32_t seed, const Vec3& p);
double fbm3(std::uint32_t seed, const Vec3& p, int octaves);

}  // namespace cumulus
