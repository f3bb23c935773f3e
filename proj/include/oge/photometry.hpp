#pragma once

#include "oge/fisheye.hpp"
#include "oge/hdr_image.hpp"

namespace oge {

// Circular task region on the hemisphere, default: 30 deg cone around the
// view axis.
struct TaskZone {
    double center_theta_deg = 0.0;
    double center_phi_deg = 0.0;
    double radius_deg = 30.0;
};

struct SceneStats {
    double ev = 0.0;        // vertical illuminance at the eye, lux
    double av_lum = 0.0;    // solid-angle-weighted mean luminance
    double med_lum = 0.0;   // solid-angle-weighted (lower) median luminance
    double max_lum = 0.0;
    double task_lum = 0.0;  // mean luminance inside the task zone
    // position-index-discounted variants: weights omega/P and omega/P^2
    double av_lum_pos = 0.0;
    double av_lum_pos2 = 0.0;
    double med_lum_pos = 0.0;
    double med_lum_pos2 = 0.0;
};

// Ev = sum L * omega * cos(theta) over the image circle.
double vertical_illuminance(const LuminanceMap& lum, const FisheyeGeometry& geom);

SceneStats scene_stats(const LuminanceMap& lum, const FisheyeGeometry& geom,
                       const TaskZone& zone = {});

bool in_task_zone(const TaskZone& zone, double theta, double phi);

}
