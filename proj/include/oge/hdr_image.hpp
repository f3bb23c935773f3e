#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace oge {

// Linear high-dynamic-range image decoded from (or destined for) a Radiance
// RGBE picture. Pixel values are stored row-major, already divided by the
// cumulative EXPOSURE factor, i.e. in radiometric units (W sr^-1 m^-2 per
// channel under the Radiance convention).
//
// header_vars keeps any KEY=VALUE header lines other than FORMAT and
// EXPOSURE verbatim; those two are handled structurally. The writer always
// emits radiance values directly (no EXPOSURE line), so a write/read
// round-trip preserves pixel values.
struct HdrImage {
    int width = 0;
    int height = 0;
    std::vector<std::array<float, 3>> pixels;  // row-major, [r,g,b]
    double exposure = 1.0;                     // product of EXPOSURE lines seen on read
    std::vector<std::pair<std::string, std::string>> header_vars;

    std::array<float, 3>& at(int x, int y) { return pixels[std::size_t(y) * std::size_t(width) + std::size_t(x)]; }
    const std::array<float, 3>& at(int x, int y) const {
        return pixels[std::size_t(y) * std::size_t(width) + std::size_t(x)];
    }
};

// Per-pixel photopic luminance in cd/m^2. Kept as a separate lightweight
// type because everything downstream of decoding operates on luminance only.
struct LuminanceMap {
    int width = 0;
    int height = 0;
    std::vector<float> values;  // row-major

    float at(int x, int y) const { return values[std::size_t(y) * std::size_t(width) + std::size_t(x)]; }
    float& at(int x, int y) { return values[std::size_t(y) * std::size_t(width) + std::size_t(x)]; }
};

// L = efficacy * (r*cr + g*cg + b*cb). Defaults are the Radiance convention:
// 179 lm/W with CIE-ish channel weights summing to 1.
struct LuminanceCoefficients {
    double efficacy = 179.0;
    double r = 0.265;
    double g = 0.670;
    double b = 0.065;
};

// Single-pixel RGBE conversions (exposed for tests and tooling).
// Decoding: value = (mantissa/256) * 2^(exponent-128); exponent byte 0 is black.
// Encoding rounds the mantissas under the shared exponent and clamps to 255,
// which keeps every channel within max(r,g,b)/256 absolute error.
std::array<float, 3> rgbe_to_float(const std::array<std::uint8_t, 4>& rgbe);
std::array<std::uint8_t, 4> float_to_rgbe(float r, float g, float b);

HdrImage read_radiance_hdr(std::istream& in);
HdrImage read_radiance_hdr_file(const std::string& path);

// Writes an uncompressed (flat) RGBE picture with -Y +X orientation.
void write_radiance_hdr(const HdrImage& img, std::ostream& out);
void write_radiance_hdr_file(const HdrImage& img, const std::string& path);

LuminanceMap to_luminance(const HdrImage& img, const LuminanceCoefficients& coeff = {});

}
