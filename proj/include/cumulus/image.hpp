// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "cumulus/math.hpp"

namespace cumulus {

struct Rgba {
    Rgb rgb;
    double alpha = 0.0;
};

// Linear-light RGBA buffer. All rendering and metrics happen on this
// representation; gamma encoding is applied only when writing files.
class Image {
public:
    Image() = default;
    Image(int width, int height, const Rgba& fill = {}) : width_(width), height_(height), pixels_(static_cast<size_t>(width) * height, fill) {}

    int width() const { return width_; }
    int height() const { return height_; }

    Rgba& at(int x, int y) { return pixels_[static_cast<size_t>(y) * width_ + x]; }
    const Rgba& at(int x, int y) const { return pixels_[static_cast<size_t>(y) * width_ + x]; }

    const std::vector<Rgba>& pixels() const { return pixels_; }
    std::vector<Rgba>& pixels() { return pixels_; }

    bool same_resolution(const Image& o) const { return width_ == o.width_ && height_ == o.height_; }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<Rgba> pixels_;
};

// Single-channel buffer for per-pixel representative depth.
class DepthImage {
public:
    DepthImage() = default;
    DepthImage(int width, int height, double fill = 0.0) : width_(width), height_(height), values_(static_cast<size_t>(width) * height, fill) {}

    int width() const { return width_; }
    int height() const { return height_; }

    double& at(int x, int y) { return values_[static_cast<size_t>(y) * width_ + x]; }
    double at(int x, int y) const { return values_[static_cast<size_t>(y) * width_ + x]; }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> values_;
};

// Bilinear fetch at normalized (u,v) in [0,1]^2, edge-clamped, texel centers
// at ((i+0.5)/w, (j+0.5)/h).
Rgba bilinear_sample(const Image& img, double u, double v);

// Display tonemap: clamp to [0,1], then gamma 2.2 encode.
// Writes binary PPM, 8-bit P6 by default, 16-bit (big-endian) when wide=true.
void write_ppm(const Image& img, const std::string& path, bool wide = false);

}  // namespace cumulus
