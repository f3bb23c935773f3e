#pragma once

#include <cmath>
#include <vector>

#include "oge/fisheye.hpp"
#include "oge/hdr_image.hpp"

namespace oge::testutil {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDeg = kPi / 180.0;

// uniform-luminance hemisphere
inline LuminanceMap uniform_scene(int size, float level) {
    LuminanceMap lum;
    lum.width = lum.height = size;
    lum.values.assign(std::size_t(size) * std::size_t(size), level);
    return lum;
}

// paint a disc source of angular radius `alpha` at (theta, phi) over a
// uniform background
inline LuminanceMap disc_scene(int size, float background, double theta, double phi, double alpha,
                               float source_lum) {
    LuminanceMap lum = uniform_scene(size, background);
    FisheyeGeometry geom = FisheyeGeometry::centered(size, size);
    Direction c = direction_from_angles(theta, phi);
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            auto pg = pixel_geometry(geom, x, y);
            if (!pg) continue;
            Direction d = direction_from_angles(pg->theta, pg->phi);
            if (angle_between(c, d) <= alpha) lum.at(x, y) = source_lum;
        }
    return lum;
}

inline HdrImage grey_image(const LuminanceMap& lum) {
    HdrImage img;
    img.width = lum.width;
    img.height = lum.height;
    img.pixels.resize(lum.values.size());
    for (std::size_t i = 0; i < lum.values.size(); ++i) {
        float v = lum.values[i] / 179.0f;
        img.pixels[i] = {v, v, v};
    }
    return img;
}

// exact solid angle of a spherical cap of half-angle alpha
inline double cap_omega(double alpha) { return 2.0 * kPi * (1.0 - std::cos(alpha)); }

}
