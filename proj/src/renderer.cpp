// SPDX-License-Identifier: Apache-2.0
#include "cumulus/renderer.hpp"

#include <chrono>
#include <stdexcept>

namespace cumulus {

int buffer_scale_divisor(BufferScale scale) {
    switch (scale) {
        case BufferScale::Full: return 1;
        case BufferScale::Half: return 2;
        case BufferScale::Quarter: return 4;
    }
    return 1;
}

CameraPose camera_pose_for_scene(const SceneConfig& scene) {
    const double aspect = static_cast<double>(scene.display_width) / scene.display_height;
    return make_camera_pose(scene.camera.position, scene.camera.look_at, scene.camera.up, scene.camera.vertical_fov, aspect);
}

RenderedFrame render_frame(const SceneConfig& scene, const FrameState* previous, int frame_index, FrameState& state_out, const CameraPose* camera_override) {
    const auto start = std::chrono::steady_clock::now();

    const int divisor = buffer_scale_divisor(scene.cloud_buffer_scale);
    const int bw = std::max(1, scene.display_width / divisor);
    const int bh = std::max(1, scene.display_height / divisor);

    if (previous && (previous->width != bw || previous->height != bh))
        throw std::invalid_argument("render_frame: history resolution does not match the cloud buffer");

    const CameraPose camera = camera_override ? *camera_override : camera_pose_for_scene(scene);

    Image current(bw, bh);
    DepthImage depth(bw, bh, kMissDepth);
    MarchCounters counters;

    for (int y = 0; y < bh; ++y) {
        for (int x = 0; x < bw; ++x) {
            const CameraRay view = generate_ray(camera, x, y, bw, bh);
            const auto overlap = intersect_bounds(view.origin, view.direction, scene.field.bounds);
            if (!overlap) continue;  // color 0, alpha 0, miss depth

            Ray ray{view.origin, view.direction, overlap->first, overlap->second};
            const double step_length = (ray.t_max - ray.t_min) / scene.raymarch.n_steps;
            const double offset = step_length > 0.0 ? jitter_offset(x, y, frame_index, step_length, scene.raymarch.jitter_mode) : 0.0;

            const PixelSample sample = march_primary(scene.field, scene.medium, ray, scene.raymarch, offset, &counters);
            current.at(x, y) = {sample.color, sample.alpha};
            depth.at(x, y) = sample.mean_depth;
        }
    }

    FrameState state;
    state.width = bw;
    state.height = bh;
    state.current = current;
    state.depth = std::move(depth);
    state.frame_index = frame_index;
    state.camera_current = camera;
    state.camera_previous = previous ? previous->camera_current : camera;

    Image resolved;
    if (scene.taa_enabled && previous) {
        state.history = previous->history;
        resolved = taa_resolve(state, scene.taa);
    } else {
        resolved = current;
    }
    state.history = resolved;  // feedback: the resolved frame is next frame's history

    // Upsample to display resolution and composite over the background.
    Image final_image(scene.display_width, scene.display_height);
    for (int y = 0; y < scene.display_height; ++y) {
        for (int x = 0; x < scene.display_width; ++x) {
            const double u = (x + 0.5) / scene.display_width;
            const double v = (y + 0.5) / scene.display_height;
            const Rgba cloud = bilinear_sample(resolved, u, v);
            final_image.at(x, y) = {composite_over(cloud, scene.background), 1.0};
        }
    }

    RenderedFrame frame;
    frame.cloud_buffer = std::move(resolved);
    frame.final_image = std::move(final_image);
    frame.stats.density_samples = counters.density_samples;
    frame.stats.light_samples = counters.light_samples;
    frame.stats.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    state_out = std::move(state);
    return frame;
}

void render_sequence(const SceneConfig& scene, int n_frames, const std::vector<CameraPose>* camera_path, const std::function<void(int, const RenderedFrame&)>& per_frame) {
    if (n_frames < 1) throw std::invalid_argument("render_sequence: n_frames must be >= 1");
    if (camera_path && static_cast<int>(camera_path->size()) != n_frames)
        throw std::invalid_argument("render_sequence: camera path length must equal n_frames");

    FrameState state;
    const FrameState* previous = nullptr;
    for (int i = 0; i < n_frames; ++i) {
        const CameraPose* pose = camera_path ? &(*camera_path)[i] : nullptr;
        FrameState next;
        const RenderedFrame frame = render_frame(scene, previous, i, next, pose);
        state = std::move(next);
        previous = &state;
        per_frame(i, frame);
    }
}

std::vector<RenderedFrame> render_sequence(const SceneConfig& scene, int n_frames, const std::vector<CameraPose>* camera_path) {
    std::vector<RenderedFrame> frames;
    frames.reserve(static_cast<size_t>(n_frames));
    render_sequence(scene, n_frames, camera_path, [&frames](int, const RenderedFrame& f) { frames.push_back(f); });
    return frames;
}

}  // namespace cumulus
