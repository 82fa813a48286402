// SPDX-License-Identifier: Apache-2.0
#include "cumulus/image.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace cumulus {

Rgba bilinear_sample(const Image& img, double u, double v) {
    const int w = img.width();
    const int h = img.height();
    const double x = u * w - 0.5;
    const double y = v * h - 0.5;
    const int x0 = static_cast<int>(std::floor(x));
    const int y0 = static_cast<int>(std::floor(y));
    const double fx = x - x0;
    const double fy = y - y0;

    auto clampi = [](int i, int lo, int hi) { return i < lo ? lo : (i > hi ? hi : i); };
    const int cx0 = clampi(x0, 0, w - 1);
    const int cx1 = clampi(x0 + 1, 0, w - 1);
    const int cy0 = clampi(y0, 0, h - 1);
    const int cy1 = clampi(y0 + 1, 0, h - 1);

    const Rgba& p00 = img.at(cx0, cy0);
    const Rgba& p10 = img.at(cx1, cy0);
    const Rgba& p01 = img.at(cx0, cy1);
    const Rgba& p11 = img.at(cx1, cy1);

    Rgba out;
    out.rgb = lerp(lerp(p00.rgb, p10.rgb, fx), lerp(p01.rgb, p11.rgb, fx), fy);
    out.alpha = lerp(lerp(p00.alpha, p10.alpha, fx), lerp(p01.alpha, p11.alpha, fx), fy);
    return out;
}

namespace {

double encode_channel(double v) {
    return std::pow(clamp01(v), 1.0 / 2.2);
}

}  // namespace

void write_ppm(const Image& img, const std::string& path, bool wide) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);

    const int maxval = wide ? 65535 : 255;
    out << "P6\n" << img.width() << " " << img.height() << "\n" << maxval << "\n";

    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            const Rgba& p = img.at(x, y);
            const double c[3] = {encode_channel(p.rgb.x), encode_channel(p.rgb.y), encode_channel(p.rgb.z)};
            for (double v : c) {
                if (wide) {
                    auto q = static_cast<std::uint16_t>(v * 65535.0 + 0.5);
                    const char bytes[2] = {static_cast<char>(q >> 8), static_cast<char>(q & 0xff)};
                    out.write(bytes, 2);
                } else {
                    auto q = static_cast<std::uint8_t>(v * 255.0 + 0.5);
                    out.write(reinterpret_cast<const char*>(&q), 1);
                }
            }
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace cumulus
