#pragma once

#include <optional>

namespace oge {

// Equidistant (f-theta) fisheye covering a hemisphere: the field angle from
// the optical axis grows linearly with distance from the image-circle
// center, reaching 90 degrees at the circle edge.
struct FisheyeGeometry {
    double center_x = 0.0;   // pixels, continuous coordinates
    double center_y = 0.0;
    double radius_px = 0.0;  // image-circle radius (90 deg field angle)

    static FisheyeGeometry centered(int width, int height);

    // focal constant of the f-theta mapping: r = f * theta
    double focal_px() const;
};

// Per-sample-point geometry. phi is the azimuth measured from straight up,
// clockwise in image coordinates (y axis pointing down), in [0, 2*pi).
struct PixelGeometry {
    double theta = 0.0;           // field angle from the view axis, rad
    double phi = 0.0;             // azimuth, rad
    double omega = 0.0;           // solid angle subtended by the pixel, sr
    double position_index = 1.0;  // Guth position index (with below-axis extension)
};

// Geometry at continuous image position (x, y); pixel (ix, iy) samples at
// (ix + 0.5, iy + 0.5). Returns nullopt outside the image circle.
std::optional<PixelGeometry> sample_geometry(const FisheyeGeometry& geom, double x, double y);

inline std::optional<PixelGeometry> pixel_geometry(const FisheyeGeometry& geom, int ix, int iy) {
    return sample_geometry(geom, ix + 0.5, iy + 0.5);
}

// Position index of a glare source relative to the line of sight.
// Above the horizon (cos(phi) >= 0) this is the Einhorn fit of Guth's data;
// below it uses the tangent-based extension with P in [1, 4.6] before the
// global cap.  Output is clamped to [1, 16].
double guth_position_index(double theta, double phi);

// Unit direction for (theta, phi): x right, y up, z toward the scene.
struct Direction {
    double x, y, z;
};
Direction direction_from_angles(double theta, double phi);
double angle_between(const Direction& a, const Direction& b);

}
