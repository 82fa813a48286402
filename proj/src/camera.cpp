// SPDX-License-Identifier: Apache-2.0
#include "cumulus/camera.hpp"

#include <cmath>
#include <stdexcept>

namespace cumulus {

namespace {

// Near/far planes only shape the (unused) NDC depth; reprojection needs x, y
// and the w = forward-distance row.
constexpr double kNear = 0.1;
constexpr double kFar = 1e7;

}  // namespace

Mat4 compute_view_projection(const CameraPose& pose) {
    // World -> view: rows are the basis vectors, view z = distance along forward.
    Mat4 view = Mat4::identity();
    const Vec3 axes[3] = {pose.right, pose.up, pose.forward};
    for (int i = 0; i < 3; ++i) {
        view.m[i][0] = axes[i].x;
        view.m[i][1] = axes[i].y;
        view.m[i][2] = axes[i].z;
        view.m[i][3] = -dot(axes[i], pose.position);
    }

    const double tan_half = std::tan(pose.vertical_fov * 0.5);
    Mat4 proj;
    proj.m[0][0] = 1.0 / (tan_half * pose.aspect);
    proj.m[1][1] = 1.0 / tan_half;
    proj.m[2][2] = kFar / (kFar - kNear);
    proj.m[2][3] = -kFar * kNear / (kFar - kNear);
    proj.m[3][2] = 1.0;

    return proj * view;
}

CameraPose make_camera_pose(const Vec3& position, const Vec3& look_at, const Vec3& up_hint, double vertical_fov, double aspect) {
    if (!(vertical_fov > 0.0 && vertical_fov < kPi)) throw std::invalid_argument("camera: fov must be in (0, pi)");
    if (!(aspect > 0.0)) throw std::invalid_argument("camera: aspect must be > 0");

    const Vec3 gaze = look_at - position;
    if (dot(gaze, gaze) == 0.0) throw std::invalid_argument("camera: look_at must differ from position");

    CameraPose pose;
    pose.position = position;
    pose.forward = normalize(gaze);
    const Vec3 side = cross(up_hint, pose.forward);
    if (dot(side, side) < 1e-12) throw std::invalid_argument("camera: up hint parallel to view direction");
    pose.right = normalize(side);
    pose.up = cross(pose.forward, pose.right);
    pose.vertical_fov = vertical_fov;
    pose.aspect = aspect;
    pose.view_projection = compute_view_projection(pose);
    return pose;
}

CameraRay generate_ray(const CameraPose& camera, int pixel_x, int pixel_y, int width, int height) {
    const double ndc_x = 2.0 * (pixel_x + 0.5) / width - 1.0;
    const double ndc_y = 1.0 - 2.0 * (pixel_y + 0.5) / height;
    const double tan_half = std::tan(camera.vertical_fov * 0.5);

    const Vec3 dir = camera.forward + camera.right * (ndc_x * tan_half * camera.aspect) + camera.up * (ndc_y * tan_half);
    return {camera.position, normalize(dir)};
}

bool project_point(const CameraPose& camera, const Vec3& world, double& ndc_x, double& ndc_y) {
    const Vec4 clip = camera.view_projection * Vec4{world.x, world.y, world.z, 1.0};
    if (clip.w <= 1e-12) return false;
    ndc_x = clip.x / clip.w;
    ndc_y = clip.y / clip.w;
    return true;
}

}  // namespace cumulus
