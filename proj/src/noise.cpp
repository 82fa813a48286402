// SPDX-License-Identifier: Apache-2.0
#include "cumulus/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace cumulus {

namespace {

std::uint32_t lattice_hash(std::uint32_t seed, std::int32_t ix, std::int32_t iy, std::int32_t iz) {
    std::uint32_t h = pcg_hash(seed);
    h = pcg_hash(h + static_cast<std::uint32_t>(ix));
    h = pcg_hash(h + static_cast<std::uint32_t>(iy));
    h = pcg_hash(h + static_cast<std::uint32_t>(iz));
    return h;
}

double lattice_value(std::uint32_t seed, std::int32_t ix, std::int32_t iy, std::int32_t iz) {
    return hash_to_unit(lattice_hash(seed, ix, iy, iz));
}

double fade(double t) { return t * t * t * (t * (t * 6.0 - 15.0) + 10.0); }

}  // namespace

double value_noise3(std::uint32_t seed, const Vec3& p) {
    const double fxf = std::floor(p.x);
    const double fyf = std::floor(p.y);
    const double fzf = std::floor(p.z);
    const auto ix = static_cast<std::int32_t>(fxf);
    const auto iy = static_cast<std::int32_t>(fyf);
    const auto iz = static_cast<std::int32_t>(fzf);
    const double u = fade(p.x - fxf);
    const double v = fade(p.y - fyf);
    const double w = fade(p.z - fzf);

    const double c000 = lattice_value(seed, ix, iy, iz);
    const double c100 = lattice_value(seed, ix + 1, iy, iz);
    const double c010 = lattice_value(seed, ix, iy + 1, iz);
    const double c110 = lattice_value(seed, ix + 1, iy + 1, iz);
    const double c001 = lattice_value(seed, ix, iy, iz + 1);
    const double c101 = lattice_value(seed, ix + 1, iy, iz + 1);
    const double c011 = lattice_value(seed, ix, iy + 1, iz + 1);
    const double c111 = lattice_value(seed, ix + 1, iy + 1, iz + 1);

    const double x00 = lerp(c000, c100, u);
    const double x10 = lerp(c010, c110, u);
    const double x01 = lerp(c001, c101, u);
    const double x11 = lerp(c011, c111, u);
    return lerp(lerp(x00, x10, v), lerp(x01, x11, v), w);
}

double fbm3(std::uint32_t seed, const Vec3& p, int octaves) {
    double sum = 0.0;
    double norm = 0.0;
    double amplitude = 0.5;
    Vec3 q = p;
    for (int i = 0; i < octaves; ++i) {
        sum += amplitude * value_noise3(seed + static_cast<std::uint32_t>(i), q);
        norm += amplitude;
        amplitude *= 0.5;
        q *= 2.0;
    }
    return sum / norm;  // in [0,1)
}

DensityField make_constant_field(double value, const VolumeBounds& bounds) {
    if (value < 0.0) throw std::invalid_argument("constant field: density must be >= 0");
    DensityField f;
    f.kind = FieldKind::Constant;
    f.constant_value = value;
    f.bounds = bounds;
    return f;
}

DensityField make_sphere_field(const Vec3& center, double radius, double density, const VolumeBounds& bounds) {
    if (radius <= 0.0) throw std::invalid_argument("sphere field: radius must be > 0");
    if (density < 0.0) throw std::invalid_argument("sphere field: density must be >= 0");
    DensityField f;
    f.kind = FieldKind::Sphere;
    f.sphere_center = center;
    f.sphere_radius = radius;
    f.sphere_density = density;
    f.bounds = bounds;
    return f;
}

DensityField make_slab_field(double y_min, double y_max, double density, const VolumeBounds& bounds) {
    if (y_max < y_min) throw std::invalid_argument("slab field: y_max must be >= y_min");
    if (density < 0.0) throw std::invalid_argument("slab field: density must be >= 0");
    DensityField f;
    f.kind = FieldKind::Slab;
    f.slab_y_min = y_min;
    f.slab_y_max = y_max;
    f.slab_density = density;
    f.bounds = bounds;
    return f;
}

DensityField make_procedural_clouds(std::uint32_t seed, double frequency, int octaves, double coverage, const VolumeBounds& bounds) {
    if (octaves < 1) throw std::invalid_argument("procedural field: octaves must be >= 1");
    if (frequency <= 0.0) throw std::invalid_argument("procedural field: frequency must be > 0");
    if (coverage < 0.0 || coverage > 1.0) throw std::invalid_argument("procedural field: coverage must be in [0,1]");
    DensityField f;
    f.kind = FieldKind::Procedural;
    f.seed = seed;
    f.frequency = frequency;
    f.octaves = octaves;
    f.coverage = coverage;
    f.bounds = bounds;
    return f;
}

double sample_density(const DensityField& field, const Vec3& p) {
    if (!field.bounds.contains(p)) return 0.0;
    switch (field.kind) {
        case FieldKind::Constant:
            return field.constant_value;
        case FieldKind::Sphere: {
            const Vec3 d = p - field.sphere_center;
            return dot(d, d) <= field.sphere_radius * field.sphere_radius ? field.sphere_density : 0.0;
        }
        case FieldKind::Slab:
            return (p.y >= field.slab_y_min && p.y <= field.slab_y_max) ? field.slab_density : 0.0;
        case FieldKind::Procedural: {
            if (field.coverage <= 0.0) return 0.0;
            const double n = fbm3(field.seed, p * field.frequency, field.octaves);
            return clamp01((n - (1.0 - field.coverage)) / field.coverage);
        }
    }
    return 0.0;
}

}  // namespace cumulus
