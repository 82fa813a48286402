// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "cumulus/math.hpp"

namespace cumulus {

// Pinhole camera. The basis is orthonormal (right, up, forward) and
// view_projection is derived from the explicit fields by make_camera_pose;
// screen x runs along `right`, screen y along `up`, rays march along
// +forward. NDC covers [-1,1]^2 with y up.
struct CameraPose {
    Vec3 position;
    Vec3 right{1.0, 0.0, 0.0};
    Vec3 up{0.0, 1.0, 0.0};
    Vec3 forward{0.0, 0.0, 1.0};
    double vertical_fov = kPi / 3.0;  // radians
    double aspect = 1.0;
    Mat4 view_projection;
};

// Builds the orthonormal basis from a look-at target and an up hint, then
// derives view_projection. Rejects degenerate configurations (target equal
// to position, forward parallel to the up hint, fov outside (0, pi)).
CameraPose make_camera_pose(const Vec3& position, const Vec3& look_at, const Vec3& up_hint, double vertical_fov, double aspect);

// view_projection recomputed from the pose's explicit fields; equals the
// stored matrix for poses built by make_camera_pose.
Mat4 compute_view_projection(const CameraPose& pose);

struct CameraRay {
    Vec3 origin;
    Vec3 direction;  // unit length
};

// Ray through the center of pixel (x, y) on a width x height grid. Pixel
// y grows downward; NDC y grows upward.
CameraRay generate_ray(const CameraPose& camera, int pixel_x, int pixel_y, int width, int height);

// Projects a world point with the pose's view_projection. Returns false when
// the point is at or behind the camera plane; otherwise writes NDC x,y.
bool project_point(const CameraPose& camera, const Vec3& world, double& ndc_x, double& ndc_y);

}  // namespace cumulus
