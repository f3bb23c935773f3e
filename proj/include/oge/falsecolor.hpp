#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "oge/hdr_image.hpp"

namespace oge {

struct FalseColorScale {
    double min_cdm2 = 0.0;  // <= 0 picks the smallest positive luminance
    double max_cdm2 = 0.0;  // <= 0 picks the image maximum
    bool log_scale = true;
};

struct Rgb8Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel
};

// Fixed blue-cyan-green-yellow-red ramp over the (log-)normalized luminance.
Rgb8Image false_color_map(const LuminanceMap& lum, const FalseColorScale& scale = {});

void write_ppm(const Rgb8Image& img, std::ostream& out);
void write_ppm_file(const Rgb8Image& img, const std::string& path);

}
