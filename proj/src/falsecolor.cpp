#include "oge/falsecolor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "oge/errors.hpp"

namespace oge {

namespace {

// ramp anchors at t = 0, .25, .5, .75, 1
const double kAnchors[5][3] = {
    {0.0, 0.0, 0.5},  // deep blue
    {0.0, 1.0, 1.0},  // cyan
    {0.0, 1.0, 0.0},  // green
    {1.0, 1.0, 0.0},  // yellow
    {1.0, 0.0, 0.0},  // red
};

void ramp(double t, std::uint8_t* out) {
    t = std::clamp(t, 0.0, 1.0);
    double pos = t * 4.0;
    int seg = std::min(int(pos), 3);
    double f = pos - seg;
    for (int c = 0; c < 3; ++c) {
        double v = kAnchors[seg][c] * (1.0 - f) + kAnchors[seg + 1][c] * f;
        out[c] = std::uint8_t(std::lround(v * 255.0));
    }
}

}  // namespace

Rgb8Image false_color_map(const LuminanceMap& lum, const FalseColorScale& scale) {
    if (lum.width < 1 || lum.height < 1) throw InvalidDimensionError("empty luminance map");

    double lo = scale.min_cdm2, hi = scale.max_cdm2;
    if (hi <= 0.0) {
        hi = 0.0;
        for (float v : lum.values) hi = std::max(hi, double(v));
    }
    if (lo <= 0.0) {
        lo = hi;
        for (float v : lum.values)
            if (v > 0.0f) lo = std::min(lo, double(v));
        if (scale.log_scale) lo = std::max(lo, hi * 1e-6);
    }
    if (lo > hi) std::swap(lo, hi);

    Rgb8Image img;
    img.width = lum.width;
    img.height = lum.height;
    img.rgb.resize(lum.values.size() * 3);
    const bool degenerate = !(hi > lo);
    for (std::size_t i = 0; i < lum.values.size(); ++i) {
        double v = lum.values[i];
        double t;
        if (degenerate) {
            t = 0.0;  // uniform scene maps to the ramp floor
        } else if (scale.log_scale) {
            double vv = std::max(v, lo);
            t = (std::log10(vv) - std::log10(lo)) / (std::log10(hi) - std::log10(lo));
        } else {
            t = (v - lo) / (hi - lo);
        }
        ramp(t, &img.rgb[i * 3]);
    }
    return img;
}

void write_ppm(const Rgb8Image& img, std::ostream& out) {
    out << "P6\n" << img.width << ' ' << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.rgb.data()), std::streamsize(img.rgb.size()));
    if (!out) throw CorruptDataError("PPM write failed");
}

void write_ppm_file(const Rgb8Image& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CorruptDataError("cannot open " + path + " for writing");
    write_ppm(img, out);
}

}
