#include "oge/hdr_image.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "oge/errors.hpp"

namespace oge {

namespace {

constexpr std::size_t kMaxPixels = 100u * 1000u * 1000u;  // sanity cap on w*h

// RLE is used for scanlines of this width range only (Radiance convention);
// anything else is written flat and read flat.
constexpr int kMinRleWidth = 8;
constexpr int kMaxRleWidth = 0x7fff;

int get_byte(std::istream& in) {
    int c = in.get();
    if (c == EOF) throw CorruptDataError("unexpected end of file in pixel data");
    return c;
}

}  // namespace

std::array<float, 3> rgbe_to_float(const std::array<std::uint8_t, 4>& rgbe) {
    if (rgbe[3] == 0) return {0.0f, 0.0f, 0.0f};
    // 2^(e-128)/256 == 2^(e-136)
    float f = std::ldexp(1.0f, int(rgbe[3]) - 136);
    return {rgbe[0] * f, rgbe[1] * f, rgbe[2] * f};
}

std::array<std::uint8_t, 4> float_to_rgbe(float r, float g, float b) {
    double maxc = std::max(r, std::max(g, b));
    if (!(maxc > 1e-38)) return {0, 0, 0, 0};
    int e = 0;
    std::frexp(maxc, &e);  // maxc = m * 2^e with m in [0.5, 1)
    if (e + 128 < 1) return {0, 0, 0, 0};
    if (e + 128 > 255) {
        // beyond representable range; saturate
        return {255, 255, 255, 255};
    }
    // scale so the max channel lands in [128, 256); round and clamp to 255.
    // Clamping (rather than bumping the exponent) when the max channel rounds
    // up to 256 keeps every channel's absolute error within max/256.
    double scale = std::ldexp(1.0, 8 - e);
    auto quant = [&](double c) -> std::uint8_t {
        long q = std::lround(c * scale);
        if (q > 255) q = 255;
        if (q < 0) q = 0;
        return std::uint8_t(q);
    };
    return {quant(r), quant(g), quant(b), std::uint8_t(e + 128)};
}

namespace {

void decode_flat_rest(std::istream& in, const std::array<std::uint8_t, 4>& first, HdrImage& img,
                      int y) {
    img.at(0, y) = rgbe_to_float(first);
    std::vector<std::uint8_t> buf(std::size_t(img.width - 1) * 4);
    if (img.width > 1) {
        in.read(reinterpret_cast<char*>(buf.data()), std::streamsize(buf.size()));
        if (std::size_t(in.gcount()) != buf.size())
            throw CorruptDataError("truncated scanline");
    }
    for (int x = 1; x < img.width; ++x) {
        const std::uint8_t* p = buf.data() + std::size_t(x - 1) * 4;
        img.at(x, y) = rgbe_to_float({p[0], p[1], p[2], p[3]});
    }
}

void decode_rle_scanline(std::istream& in, HdrImage& img, int y) {
    const int w = img.width;
    std::vector<std::uint8_t> chan(std::size_t(w) * 4);
    for (int c = 0; c < 4; ++c) {
        int x = 0;
        while (x < w) {
            int code = get_byte(in);
            if (code > 128) {  // run of the same value
                int count = code - 128;
                if (x + count > w) throw CorruptDataError("RLE run overflows scanline");
                int v = get_byte(in);
                for (int i = 0; i < count; ++i) chan[std::size_t(c) * w + x++] = std::uint8_t(v);
            } else {  // literal block
                int count = code;
                if (count == 0) throw CorruptDataError("zero-length RLE literal");
                if (x + count > w) throw CorruptDataError("RLE literal overflows scanline");
                for (int i = 0; i < count; ++i)
                    chan[std::size_t(c) * w + x++] = std::uint8_t(get_byte(in));
            }
        }
    }
    for (int x = 0; x < w; ++x) {
        img.at(x, y) = rgbe_to_float(
            {chan[x], chan[std::size_t(w) + x], chan[2 * std::size_t(w) + x], chan[3 * std::size_t(w) + x]});
    }
}

}  // namespace

HdrImage read_radiance_hdr(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "#?RADIANCE" && line != "#?RGBE")
        throw FormatError("missing Radiance magic line");

    HdrImage img;
    bool have_format = false;
    while (true) {
        if (!std::getline(in, line)) throw FormatError("header not terminated by blank line");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) break;
        if (line[0] == '#') continue;  // comment
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw FormatError("malformed header line: '" + line + "'");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        if (key == "FORMAT") {
            if (value != "32-bit_rle_rgbe")
                throw FormatError("unsupported FORMAT: '" + value + "'");
            have_format = true;
        } else if (key == "EXPOSURE") {
            // repeated EXPOSURE lines multiply
            try {
                double e = std::stod(value);
                if (!(e > 0) || !std::isfinite(e))
                    throw FormatError("invalid EXPOSURE value: '" + value + "'");
                img.exposure *= e;
            } catch (const std::logic_error&) {
                throw FormatError("invalid EXPOSURE value: '" + value + "'");
            }
        } else {
            img.header_vars.emplace_back(key, value);
        }
    }
    if (!have_format) throw FormatError("header missing FORMAT=32-bit_rle_rgbe");

    if (!std::getline(in, line)) throw FormatError("missing resolution line");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    {
        std::istringstream rs(line);
        std::string a, c;
        long h = 0, w = 0;
        if (!(rs >> a >> h >> c >> w))
            throw FormatError("malformed resolution line: '" + line + "'");
        std::string rest;
        if (rs >> rest) throw FormatError("malformed resolution line: '" + line + "'");
        if (a != "-Y" || c != "+X")
            throw UnsupportedOrientationError("only -Y +X orientation is supported, got '" + line + "'");
        if (h < 1 || w < 1) throw FormatError("non-positive image dimensions");
        if (std::size_t(h) * std::size_t(w) > kMaxPixels)
            throw CorruptDataError("image dimensions exceed sanity limit");
        img.height = int(h);
        img.width = int(w);
    }

    img.pixels.resize(std::size_t(img.width) * std::size_t(img.height));
    std::array<std::uint8_t, 4> head{};
    for (int y = 0; y < img.height; ++y) {
        for (int i = 0; i < 4; ++i) head[std::size_t(i)] = std::uint8_t(get_byte(in));
        bool rle = head[0] == 2 && head[1] == 2 && ((int(head[2]) << 8) | head[3]) == img.width &&
                   img.width >= kMinRleWidth && img.width <= kMaxRleWidth;
        if (rle)
            decode_rle_scanline(in, img, y);
        else
            decode_flat_rest(in, head, img, y);
    }

    if (img.exposure != 1.0) {
        float inv = float(1.0 / img.exposure);
        for (auto& p : img.pixels)
            for (float& c : p) c *= inv;
    }
    return img;
}

HdrImage read_radiance_hdr_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    return read_radiance_hdr(in);
}

void write_radiance_hdr(const HdrImage& img, std::ostream& out) {
    if (img.width < 1 || img.height < 1)
        throw InvalidDimensionError("cannot write zero-sized image");
    if (img.pixels.size() != std::size_t(img.width) * std::size_t(img.height))
        throw InvalidDimensionError("pixel buffer does not match dimensions");
    for (const auto& p : img.pixels)
        for (float c : p)
            if (!std::isfinite(c) || c < 0.0f)
                throw InvalidDimensionError("pixel values must be finite and non-negative");

    out << "#?RADIANCE\n";
    for (const auto& [k, v] : img.header_vars) out << k << '=' << v << '\n';
    out << "FORMAT=32-bit_rle_rgbe\n\n";
    out << "-Y " << img.height << " +X " << img.width << '\n';

    std::vector<std::uint8_t> buf;
    buf.reserve(std::size_t(img.width) * 4);
    for (int y = 0; y < img.height; ++y) {
        buf.clear();
        for (int x = 0; x < img.width; ++x) {
            const auto& p = img.at(x, y);
            auto q = float_to_rgbe(p[0], p[1], p[2]);
            buf.insert(buf.end(), q.begin(), q.end());
        }
        out.write(reinterpret_cast<const char*>(buf.data()), std::streamsize(buf.size()));
    }
    if (!out) throw CorruptDataError("write failed");
}

void write_radiance_hdr_file(const HdrImage& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CorruptDataError("cannot open " + path + " for writing");
    write_radiance_hdr(img, out);
}

LuminanceMap to_luminance(const HdrImage& img, const LuminanceCoefficients& coeff) {
    LuminanceMap lum;
    lum.width = img.width;
    lum.height = img.height;
    lum.values.resize(img.pixels.size());
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        const auto& p = img.pixels[i];
        lum.values[i] =
            float(coeff.efficacy * (coeff.r * p[0] + coeff.g * p[1] + coeff.b * p[2]));
    }
    return lum;
}

}
