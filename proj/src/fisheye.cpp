#include "oge/fisheye.hpp"

#include <algorithm>
#include <cmath>

#include "oge/errors.hpp"

namespace oge {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = kPi / 2.0;
}

FisheyeGeometry FisheyeGeometry::centered(int width, int height) {
    FisheyeGeometry g;
    g.center_x = width / 2.0;
    g.center_y = height / 2.0;
    g.radius_px = std::min(width, height) / 2.0;
    return g;
}

double FisheyeGeometry::focal_px() const { return radius_px / kHalfPi; }

double guth_position_index(double theta, double phi) {
    if (theta <= 0.0) return 1.0;
    double p;
    if (std::cos(phi) >= 0.0) {
        // Einhorn's fit, sigma in degrees, tau = azimuth from the vertical
        // plane folded into [0, 90] degrees
        double sigma = theta * 180.0 / kPi;
        double wrapped = std::fmod(phi + kPi, 2.0 * kPi) - kPi;  // (-pi, pi]
        double tau = std::abs(wrapped) * 180.0 / kPi;
        double a = 35.2 - 0.31889 * tau - 1.22 * std::exp(-2.0 * tau / 9.0);
        double b = 21.0 + 0.26667 * tau - 0.002963 * tau * tau;
        p = std::exp(a * 1e-3 * sigma + b * 1e-5 * sigma * sigma);
    } else {
        // below the line of sight: P grows with the tangent of the field
        // angle, capped before the slope-dependent factor is applied
        double r = std::tan(theta);
        if (!(r < 3.0)) r = 3.0;
        double fact = r <= 0.6 ? 0.8 : 1.2;
        p = 1.0 + fact * r;
    }
    if (p > 16.0) p = 16.0;
    if (p < 1.0) p = 1.0;
    return p;
}

std::optional<PixelGeometry> sample_geometry(const FisheyeGeometry& geom, double x, double y) {
    if (!(geom.radius_px > 0.0)) throw GeometryError("image-circle radius must be positive");
    double dx = x - geom.center_x;
    double dy = y - geom.center_y;
    double r = std::hypot(dx, dy);
    if (r > geom.radius_px) return std::nullopt;

    PixelGeometry pg;
    pg.theta = (r / geom.radius_px) * kHalfPi;
    // screen y grows downward; phi = 0 points up, clockwise positive
    pg.phi = std::atan2(dx, -dy);
    if (pg.phi < 0.0) pg.phi += 2.0 * kPi;

    // solid angle of a unit pixel under the equidistant mapping:
    // dA = r dr dphi maps to sin(theta) dtheta dphi, r = f*theta
    double f = geom.focal_px();
    double ratio = pg.theta > 1e-12 ? std::sin(pg.theta) / pg.theta : 1.0;
    pg.omega = ratio / (f * f);

    pg.position_index = guth_position_index(pg.theta, pg.phi);
    return pg;
}

Direction direction_from_angles(double theta, double phi) {
    double s = std::sin(theta);
    return {s * std::sin(phi), s * std::cos(phi), std::cos(theta)};
}

double angle_between(const Direction& a, const Direction& b) {
    double dot = a.x * b.x + a.y * b.y + a.z * b.z;
    dot = std::clamp(dot, -1.0, 1.0);
    return std::acos(dot);
}

}
