// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cumulus/camera.hpp"
#include "cumulus/image.hpp"
#include "cumulus/raymarch.hpp"
#include "cumulus/temporal.hpp"

namespace cumulus {

enum class BufferScale { Full, Half, Quarter };

int buffer_scale_divisor(BufferScale scale);

// Camera description; the pose (with aspect from the display resolution) is
// derived per frame.
struct CameraDesc {
    Vec3 position{0.0, 0.0, -10.0};
    Vec3 look_at{0.0, 0.0, 0.0};
    Vec3 up{0.0, 1.0, 0.0};
    double vertical_fov = kPi / 3.0;
};

struct SceneConfig {
    DensityField field;
    MediumParams medium;
    CameraDesc camera;
    Rgb background{0.0, 0.0, 0.0};
    int display_width = 256;
    int display_height = 256;
    BufferScale cloud_buffer_scale = BufferScale::Full;
    RaymarchConfig raymarch;
    TaaConfig taa;
    bool taa_enabled = false;
};

struct FrameStats {
    long long density_samples = 0;  // primary march sample_density calls
    long long light_samples = 0;    // lighting march sample_density calls
    double wall_time = 0.0;         // seconds
};

struct RenderedFrame {
    Image cloud_buffer;  // resolved low-res buffer (color + alpha)
    Image final_image;   // display resolution, composited, linear light
    FrameStats stats;
};

// Depth recorded for rays that miss the volume; far enough that reprojection
// degenerates to the direction-only case.
inline constexpr double kMissDepth = 1e6;

// Renders one frame: march every cloud-buffer pixel (with the configured
// jitter), TAA-resolve against the previous state when enabled, upsample
// bilinearly to display resolution and composite over the background
// (final = cloud + (1 - alpha) * background). `previous` is null for the
// first frame; a camera override supports per-frame paths. Rejects a
// previous state whose buffer resolution disagrees with the scene.
RenderedFrame render_frame(const SceneConfig& scene, const FrameState* previous, int frame_index, FrameState& state_out, const CameraPose* camera_override = nullptr);

// Renders frames 0..n_frames-1, threading the temporal state. camera_path,
// when present, must hold exactly n_frames poses; otherwise the camera is
// static.
std::vector<RenderedFrame> render_sequence(const SceneConfig& scene, int n_frames, const std::vector<CameraPose>* camera_path = nullptr);

// Callback flavor for long sequences where retaining every frame is wasteful.
void render_sequence(const SceneConfig& scene, int n_frames, const std::vector<CameraPose>* camera_path, const std::function<void(int, const RenderedFrame&)>& per_frame);

// Alpha-composite a premultiplied cloud pixel over the background.
inline Rgb composite_over(const Rgba& cloud, const Rgb& background) {
    return cloud.rgb + background * (1.0 - cloud.alpha);
}

CameraPose camera_pose_for_scene(const SceneConfig& scene);

}  // namespace cumulus
