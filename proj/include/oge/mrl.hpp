#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "oge/fisheye.hpp"
#include "oge/hdr_image.hpp"

namespace oge {

// Binocular field-of-view ellipse in image-circle-radius units, center
// shifted toward the top of the image (rows grow downward, so the offset
// is negative); the fit trims the sides and the lower edge of the disc.
struct FovEllipse {
    double a_h = 0.0;       // horizontal semi-axis
    double a_v = 0.0;       // vertical semi-axis
    double center_y = 0.0;  // vertical offset of the ellipse center

    // constants produced by calibrate_fov_ellipse against the reference
    // in-field region counts for grids 10,15,20,25,30,35,40
    static FovEllipse calibrated_default() { return {0.799, 1.033, -0.190}; }

    bool contains(double u, double v) const {  // u,v in radius units
        double du = u / a_h, dv = (v - center_y) / a_v;
        return du * du + dv * dv <= 1.0;
    }
};

struct GridSpec {
    int g = 25;  // g x g cells over the circumscribed square of the image circle
};

// Which grid cells participate in the feature vector, in row-major order.
struct FovMask {
    int g = 0;
    std::vector<std::pair<int, int>> regions;  // (row, col)
    std::string id;                            // provenance tag written into exports

    std::size_t count() const { return regions.size(); }
};

FovMask build_mask(const GridSpec& grid, const FovEllipse& ellipse = FovEllipse::calibrated_default());

// mask file format: comment lines, then one "g,row,col" line per region
FovMask read_mask(std::istream& in);
FovMask read_mask_file(const std::string& path);
void write_mask(const FovMask& mask, std::ostream& out);
void write_mask_file(const FovMask& mask, const std::string& path);

struct MrlFeatureVector {
    int g = 0;
    std::string mask_id;
    std::vector<double> region_means;     // one per mask region, mask order
    std::vector<std::uint8_t> region_empty;  // 1 when the cell had no usable pixels
};

MrlFeatureVector extract_mrl(const LuminanceMap& lum, const FisheyeGeometry& geom,
                             const FovMask& mask);

// Calibration: grid-search ellipse parameters to reproduce reference
// per-grid region counts.
struct CalibrationTargets {
    std::map<int, int> counts;  // grid size -> expected in-field region count
    static CalibrationTargets reference();
};

struct CalibrationResult {
    FovEllipse ellipse;
    std::map<int, int> achieved;
    int total_abs_deviation = 0;
    double max_rel_deviation = 0.0;
};

CalibrationResult calibrate_fov_ellipse(const CalibrationTargets& targets = CalibrationTargets::reference());

}
