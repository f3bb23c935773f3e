#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>

#include "doctest.h"
#include "oge/errors.hpp"
#include "oge/hdr_image.hpp"
#include "oge/rng.hpp"
#include "test_util.hpp"

using namespace oge;

namespace {

std::string flat_file(int w, int h, const std::string& extra_header,
                      const std::vector<std::array<std::uint8_t, 4>>& quads) {
    std::ostringstream out;
    out << "#?RADIANCE\n" << extra_header << "FORMAT=32-bit_rle_rgbe\n\n";
    out << "-Y " << h << " +X " << w << '\n';
    for (const auto& q : quads) out.write(reinterpret_cast<const char*>(q.data()), 4);
    return out.str();
}

HdrImage random_image(Rng& rng, int w, int h) {
    HdrImage img;
    img.width = w;
    img.height = h;
    img.pixels.resize(std::size_t(w) * std::size_t(h));
    for (auto& p : img.pixels) {
        // spread over many exponent octaves, with occasional zeros
        for (float& c : p)
            c = rng.uniform() < 0.05f ? 0.0f : float(rng.log_uniform(1e-6, 1e6));
    }
    return img;
}

}  // namespace

TEST_CASE("rgbe decode follows the shared-exponent rule") {
    // value = mantissa/256 * 2^(exponent-128)
    auto v = rgbe_to_float({128, 64, 32, 129});
    CHECK(v[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(v[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(v[2] == doctest::Approx(0.25).epsilon(1e-12));

    v = rgbe_to_float({255, 1, 0, 136});
    CHECK(v[0] == doctest::Approx(255.0).epsilon(1e-12));
    CHECK(v[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(v[2] == 0.0f);

    // exponent byte 0 is black regardless of mantissas
    v = rgbe_to_float({17, 200, 255, 0});
    CHECK(v[0] == 0.0f);
    CHECK(v[1] == 0.0f);
    CHECK(v[2] == 0.0f);
}

TEST_CASE("rgbe encode picks the max-channel exponent and clamps") {
    auto q = float_to_rgbe(1.0f, 0.5f, 0.25f);
    CHECK(int(q[0]) == 128);
    CHECK(int(q[1]) == 64);
    CHECK(int(q[2]) == 32);
    CHECK(int(q[3]) == 129);

    // tiny and zero inputs encode to black
    CHECK(float_to_rgbe(0.0f, 0.0f, 0.0f)[3] == 0);
    CHECK(float_to_rgbe(1e-39f, 0.0f, 0.0f)[3] == 0);

    // values beyond the exponent range saturate rather than wrap
    auto sat = float_to_rgbe(3e38f, 0.0f, 0.0f);
    CHECK(int(sat[3]) == 255);
    CHECK(int(sat[0]) == 255);
}

TEST_CASE("rgbe round-trip error stays within max/256 per channel") {
    Rng rng(2024);
    for (int trial = 0; trial < 20000; ++trial) {
        float r = float(rng.log_uniform(1e-4, 1e5));
        float g = float(rng.log_uniform(1e-4, 1e5));
        float b = rng.uniform() < 0.2 ? 0.0f : float(rng.log_uniform(1e-4, 1e5));
        auto dec = rgbe_to_float(float_to_rgbe(r, g, b));
        double maxc = std::max(r, std::max(g, b));
        double bound = maxc / 256.0 + 1e-12 * maxc;  // tiny slack for float arithmetic
        CHECK(std::abs(dec[0] - r) <= bound);
        CHECK(std::abs(dec[1] - g) <= bound);
        CHECK(std::abs(dec[2] - b) <= bound);
    }
}

TEST_CASE("rgbe quantization commutes with power-of-two scaling") {
    // doubling the input shifts only the exponent, so the decoded value
    // doubles exactly
    Rng rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        float r = float(rng.log_uniform(1e-3, 1e3));
        float g = float(rng.log_uniform(1e-3, 1e3));
        float b = float(rng.log_uniform(1e-3, 1e3));
        auto lo = rgbe_to_float(float_to_rgbe(r, g, b));
        auto hi = rgbe_to_float(float_to_rgbe(2 * r, 2 * g, 2 * b));
        for (int c = 0; c < 3; ++c) CHECK(hi[std::size_t(c)] == doctest::Approx(2 * lo[std::size_t(c)]).epsilon(1e-12));
    }
}

TEST_CASE("flat scanlines decode and header variables are kept") {
    std::string data = flat_file(2, 2, "SOFTWARE=unit test\n# a comment\n",
                                 {{128, 64, 32, 129}, {0, 0, 0, 0}, {255, 255, 255, 130}, {64, 64, 64, 128}});
    std::istringstream in(data);
    HdrImage img = read_radiance_hdr(in);
    CHECK(img.width == 2);
    CHECK(img.height == 2);
    CHECK(img.at(0, 0)[0] == doctest::Approx(1.0));
    CHECK(img.at(1, 0)[2] == 0.0f);
    CHECK(img.at(0, 1)[1] == doctest::Approx(255.0 / 256.0 * 4.0));
    CHECK(img.at(1, 1)[0] == doctest::Approx(0.25));
    REQUIRE(img.header_vars.size() == 1);
    CHECK(img.header_vars[0].first == "SOFTWARE");
    CHECK(img.header_vars[0].second == "unit test");
}

TEST_CASE("EXPOSURE lines multiply and pixels are divided back to radiance") {
    std::string data =
        flat_file(1, 1, "EXPOSURE=2\nEXPOSURE=3\n", {{128, 128, 128, 129}});
    std::istringstream in(data);
    HdrImage img = read_radiance_hdr(in);
    CHECK(img.exposure == doctest::Approx(6.0));
    CHECK(img.at(0, 0)[0] == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("header and orientation errors are typed") {
    auto parse = [](const std::string& s) {
        std::istringstream in(s);
        return read_radiance_hdr(in);
    };
    CHECK_THROWS_AS(parse("not radiance\n"), FormatError);
    CHECK_THROWS_AS(parse("#?RADIANCE\nFORMAT=64-bit_rle_xyze\n\n-Y 1 +X 1\n"), FormatError);
    CHECK_THROWS_AS(parse("#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n"), FormatError);
    CHECK_THROWS_AS(parse("#?RADIANCE\nFORMAT=32-bit_rle_rgbe\nEXPOSURE=zero\n\n-Y 1 +X 1\n"),
                    FormatError);
    // flipped or rotated rasters are refused, not silently misread
    CHECK_THROWS_AS(parse("#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n\n+Y 1 +X 1\n"),
                    UnsupportedOrientationError);
    CHECK_THROWS_AS(parse("#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n\n-Y 1 -X 1\n"),
                    UnsupportedOrientationError);
    CHECK_THROWS_AS(parse("#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n\n-Y 1 +X 1 extra\n"), FormatError);
}

TEST_CASE("new-style RLE scanlines decode runs and literals") {
    const int w = 8;
    std::ostringstream out;
    out << "#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n\n-Y 1 +X " << w << '\n';
    auto put = [&](std::initializer_list<int> bytes) {
        for (int b : bytes) out.put(char(std::uint8_t(b)));
    };
    put({2, 2, 0, w});                       // scanline header
    put({128 + 8, 10});                      // R: run of 8 x 10
    put({4, 1, 2, 3, 4, 128 + 4, 9});        // G: 4 literals then run of 4 x 9
    put({128 + 3, 7, 5, 20, 21, 22, 23, 24});  // B: run of 3 x 7 then 5 literals
    put({128 + 8, 130});                     // E: run of 8 x 130 (2^2 scale)

    std::istringstream in(out.str());
    HdrImage img = read_radiance_hdr(in);
    const double f = 4.0 / 256.0;  // 2^(130-128)/256
    for (int x = 0; x < w; ++x) CHECK(img.at(x, 0)[0] == doctest::Approx(10 * f));
    CHECK(img.at(0, 0)[1] == doctest::Approx(1 * f));
    CHECK(img.at(3, 0)[1] == doctest::Approx(4 * f));
    CHECK(img.at(4, 0)[1] == doctest::Approx(9 * f));
    CHECK(img.at(2, 0)[2] == doctest::Approx(7 * f));
    CHECK(img.at(7, 0)[2] == doctest::Approx(24 * f));
}

TEST_CASE("corrupt pixel data raises CorruptDataError") {
    // truncated flat scanline
    std::string flat = flat_file(2, 1, "", {{128, 64, 32, 129}});
    std::string cut = flat.substr(0, flat.size() - 2);
    std::istringstream in1(cut);
    CHECK_THROWS_AS(read_radiance_hdr(in1), CorruptDataError);

    // RLE run overflowing the scanline
    std::ostringstream out;
    out << "#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n\n-Y 1 +X 8\n";
    auto put = [&](std::initializer_list<int> bytes) {
        for (int b : bytes) out.put(char(std::uint8_t(b)));
    };
    put({2, 2, 0, 8});
    put({128 + 9, 10});  // 9 > width
    std::istringstream in2(out.str());
    CHECK_THROWS_AS(read_radiance_hdr(in2), CorruptDataError);

    // zero-length literal is malformed
    std::ostringstream out3;
    out3 << "#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n\n-Y 1 +X 8\n";
    for (int b : {2, 2, 0, 8, 0}) out3.put(char(std::uint8_t(b)));
    std::istringstream in3(out3.str());
    CHECK_THROWS_AS(read_radiance_hdr(in3), CorruptDataError);
}

TEST_CASE("write/read round-trip preserves header vars and bounds error") {
    Rng rng(99);
    HdrImage img = random_image(rng, 37, 21);
    img.header_vars.emplace_back("VIEW", "-vta -vh 180 -vv 180");

    std::ostringstream out;
    write_radiance_hdr(img, out);
    std::istringstream in(out.str());
    HdrImage back = read_radiance_hdr(in);

    REQUIRE(back.width == img.width);
    REQUIRE(back.height == img.height);
    REQUIRE(back.header_vars.size() == 1);
    CHECK(back.header_vars[0].second == "-vta -vh 180 -vv 180");
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        double maxc = std::max({img.pixels[i][0], img.pixels[i][1], img.pixels[i][2]});
        double bound = maxc / 256.0 + 1e-12 * maxc;
        for (int c = 0; c < 3; ++c)
            CHECK(std::abs(back.pixels[i][std::size_t(c)] - img.pixels[i][std::size_t(c)]) <= bound);
    }
}

TEST_CASE("second round-trip is lossless") {
    // once quantized, values are exactly representable, so a second
    // write/read changes nothing
    Rng rng(5);
    HdrImage img = random_image(rng, 16, 16);
    std::ostringstream o1;
    write_radiance_hdr(img, o1);
    std::istringstream i1(o1.str());
    HdrImage once = read_radiance_hdr(i1);
    std::ostringstream o2;
    write_radiance_hdr(once, o2);
    CHECK(o1.str() == o2.str());
}

TEST_CASE("writer validates dimensions and pixel values") {
    HdrImage img;
    img.width = 2;
    img.height = 1;
    img.pixels = {{1, 1, 1}};
    std::ostringstream out;
    CHECK_THROWS_AS(write_radiance_hdr(img, out), InvalidDimensionError);
    img.pixels = {{1, 1, 1}, {-1, 0, 0}};
    CHECK_THROWS_AS(write_radiance_hdr(img, out), InvalidDimensionError);
}

TEST_CASE("luminance uses 179 lm/W with standard channel weights") {
    HdrImage img;
    img.width = 3;
    img.height = 1;
    img.pixels = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    LuminanceMap lum = to_luminance(img);
    CHECK(lum.at(0, 0) == doctest::Approx(179.0 * 0.265));
    CHECK(lum.at(1, 0) == doctest::Approx(119.93));
    CHECK(lum.at(2, 0) == doctest::Approx(179.0 * 0.065));
}
