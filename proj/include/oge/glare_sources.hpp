#pragma once

#include <optional>
#include <vector>

#include "oge/photometry.hpp"

namespace oge {

struct SourceDetectionParams {
    // candidate rule: L > threshold_multiplier * task luminance, unless an
    // absolute floor (cd/m^2) is given, which replaces the adaptive rule
    double threshold_multiplier = 5.0;
    std::optional<double> absolute_floor;
    // components whose (pre-merge) centroid directions are closer than this
    // great-circle distance are merged, transitively
    double merge_radius_rad = 0.2;
};

struct GlareSource {
    std::vector<int> pixel_ids;     // row-major indices, ascending
    double luminance = 0.0;         // omega-weighted mean, cd/m^2
    double omega = 0.0;             // total solid angle, sr
    double position_index = 1.0;    // omega-weighted mean
    double centroid_theta = 0.0;    // omega-weighted direction of the merged source
    double centroid_phi = 0.0;
    double direct_illuminance = 0.0;  // sum L*omega*cos(theta) over member pixels
};

// Threshold, 8-connected labeling, centroid merging, aggregation. Sources
// come back ordered by their smallest member pixel id.
std::vector<GlareSource> detect_sources(const LuminanceMap& lum, const FisheyeGeometry& geom,
                                        const SourceDetectionParams& params = {},
                                        const TaskZone& zone = {});

}
