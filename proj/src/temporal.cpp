// SPDX-License-Identifier: Apache-2.0
#include "cumulus/temporal.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace cumulus {

std::optional<std::pair<double, double>> reproject_uv(int pixel_x, int pixel_y, double depth, const CameraPose& camera_current, const CameraPose& camera_previous, int width, int height) {
    if (depth <= 0.0) throw std::invalid_argument("reproject_uv: depth must be > 0");

    const CameraRay ray = generate_ray(camera_current, pixel_x, pixel_y, width, height);
    const Vec3 world = ray.origin + ray.direction * depth;

    double ndc_x = 0.0;
    double ndc_y = 0.0;
    if (!project_point(camera_previous, world, ndc_x, ndc_y)) return std::nullopt;
    if (ndc_x < -1.0 || ndc_x > 1.0 || ndc_y < -1.0 || ndc_y > 1.0) return std::nullopt;

    return std::make_pair((ndc_x + 1.0) * 0.5, (1.0 - ndc_y) * 0.5);
}

Rgba sample_history(const Image& history, double u, double v) {
    return bilinear_sample(history, u, v);
}

Rgba neighborhood_clamp(const Image& current, int pixel_x, int pixel_y, const Rgba& history_sample, ClampMode mode) {
    if (mode == ClampMode::None) return history_sample;

    Vec3 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Vec3 hi = -lo;
    double alo = std::numeric_limits<double>::infinity();
    double ahi = -alo;

    for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
            const int x = std::clamp(pixel_x + dx, 0, current.width() - 1);
            const int y = std::clamp(pixel_y + dy, 0, current.height() - 1);
            const Rgba& p = current.at(x, y);
            lo = min(lo, p.rgb);
            hi = max(hi, p.rgb);
            alo = std::min(alo, p.alpha);
            ahi = std::max(ahi, p.alpha);
        }
    }

    Rgba out;
    out.rgb = min(max(history_sample.rgb, lo), hi);
    out.alpha = std::clamp(history_sample.alpha, alo, ahi);
    return out;
}

Image taa_resolve(const FrameState& frame, const TaaConfig& config) {
    if (!(config.history_weight >= 0.0 && config.history_weight < 1.0))
        throw std::invalid_argument("taa_resolve: history_weight must be in [0,1)");
    if (!frame.current.same_resolution(frame.history) || frame.current.width() != frame.width || frame.current.height() != frame.height)
        throw std::invalid_argument("taa_resolve: buffer resolutions disagree");

    const double w = config.history_weight;
    Image resolved(frame.width, frame.height);

    for (int y = 0; y < frame.height; ++y) {
        for (int x = 0; x < frame.width; ++x) {
            const Rgba& cur = frame.current.at(x, y);
            const double depth = frame.depth.at(x, y);
            const auto uv = depth > 0.0
                                ? reproject_uv(x, y, depth, frame.camera_current, frame.camera_previous, frame.width, frame.height)
                                : std::nullopt;
            if (!uv) {
                resolved.at(x, y) = cur;
                continue;
            }
            Rgba hist = sample_history(frame.history, uv->first, uv->second);
            hist = neighborhood_clamp(frame.current, x, y, hist, config.clamp_mode);

            Rgba& out = resolved.at(x, y);
            out.rgb = hist.rgb * w + cur.rgb * (1.0 - w);
            out.alpha = hist.alpha * w + cur.alpha * (1.0 - w);
        }
    }
    return resolved;
}

}  // namespace cumulus
