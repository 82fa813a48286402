// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "cumulus/camera.hpp"
#include "cumulus/image.hpp"

namespace cumulus {

enum class ClampMode { None, MinMax3x3 };

struct TaaConfig {
    double history_weight = 0.9;  // in [0,1)
    ClampMode clamp_mode = ClampMode::MinMax3x3;
    // On a reprojection miss the current frame's value is used as-is.
};

// Everything the resolve needs for one frame of the low-res cloud buffer.
// `current` is the fresh march output, `history` the previous resolved
// frame, `depth` the current frame's representative depths. All three share
// the buffer resolution.
struct FrameState {
    int width = 0;
    int height = 0;
    Image current;
    Image history;
    DepthImage depth;
    int frame_index = 0;
    CameraPose camera_current;
    CameraPose camera_previous;
};

// Where pixel (x, y), seen at `depth` along its current view ray, landed in
// the previous frame, as normalized texture coordinates. Empty when the
// point projects outside [0,1]^2 or behind the previous camera.
std::optional<std::pair<double, double>> reproject_uv(int pixel_x, int pixel_y, double depth, const CameraPose& camera_current, const CameraPose& camera_previous, int width, int height);

// Bilinear history fetch; thin alias over the shared image sampler.
Rgba sample_history(const Image& history, double u, double v);

// Clamps a history sample channelwise to the 3x3 min/max neighborhood of the
// current frame around (x, y); identity under ClampMode::None.
Rgba neighborhood_clamp(const Image& current, int pixel_x, int pixel_y, const Rgba& history_sample, ClampMode mode);

// Per pixel: reproject into the previous frame, fetch and clamp history,
// blend history_weight * history + (1 - history_weight) * current, color and
// alpha alike. Misses pass the current value through. The returned image is
// the next frame's history.
Image taa_resolve(const FrameState& frame, const TaaConfig& config);

}  // namespace cumulus
