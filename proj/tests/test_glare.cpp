#include <cmath>

#include "doctest.h"
#include "oge/errors.hpp"
#include "oge/glare_indices.hpp"
#include "oge/glare_sources.hpp"
#include "test_util.hpp"

using namespace oge;
using namespace oge::testutil;

namespace {

// one hand-built source matching the worked example used throughout:
// L = 4000 cd/m^2, omega = 0.05 sr, P = 1.5, 20 degrees off axis
GlareSource example_source() {
    GlareSource s;
    s.pixel_ids = {0};
    s.luminance = 4000.0;
    s.omega = 0.05;
    s.position_index = 1.5;
    s.centroid_theta = 20.0 * kDeg;
    s.centroid_phi = 0.0;
    s.direct_illuminance = 4000.0 * 0.05 * std::cos(20.0 * kDeg);  // 187.93852...
    return s;
}

GlareMetricsRecord indices_for(const std::vector<GlareSource>& sources, const SceneStats& stats,
                               const IndicesOptions& opt = {}) {
    LuminanceMap dummy;  // untouched for the indirect-illuminance background mode
    FisheyeGeometry geom{0.0, 0.0, 1.0};
    return compute_indices(dummy, geom, sources, stats, opt);
}

}  // namespace

TEST_CASE("adaptive threshold picks pixels brighter than 5x task luminance") {
    // two discs outside the 30-degree task zone so task luminance stays at
    // the background level: 600 > 5*100 detected, 400 is not
    LuminanceMap lum = disc_scene(300, 100.0f, 40.0 * kDeg, 0.0, 4.0 * kDeg, 600.0f);
    LuminanceMap dim = disc_scene(300, 100.0f, 40.0 * kDeg, kPi, 4.0 * kDeg, 400.0f);
    for (std::size_t i = 0; i < lum.values.size(); ++i)
        if (dim.values[i] > 100.0f) lum.values[i] = dim.values[i];
    FisheyeGeometry geom = FisheyeGeometry::centered(300, 300);

    auto sources = detect_sources(lum, geom);
    REQUIRE(sources.size() == 1);
    CHECK(sources[0].luminance == doctest::Approx(600.0));
    CHECK(sources[0].centroid_theta == doctest::Approx(40.0 * kDeg).epsilon(0.02));
    // phi wraps around zero for a disc painted straight up
    CHECK(std::cos(sources[0].centroid_phi) == doctest::Approx(1.0).epsilon(1e-4));

    // an absolute floor replaces the adaptive rule entirely
    SourceDetectionParams floor;
    floor.absolute_floor = 300.0;
    auto both = detect_sources(lum, geom, floor);
    CHECK(both.size() == 2);

    // boundary is strict: a pixel exactly at the threshold is background
    LuminanceMap flat = uniform_scene(100, 100.0f);
    SourceDetectionParams exact;
    exact.absolute_floor = 500.0;
    flat.at(50, 50) = 500.0f;
    CHECK(detect_sources(flat, FisheyeGeometry::centered(100, 100), exact).empty());
    flat.at(50, 50) = 500.5f;
    CHECK(detect_sources(flat, FisheyeGeometry::centered(100, 100), exact).size() == 1);
}

TEST_CASE("source aggregates match the painted disc") {
    const double alpha = 5.0 * kDeg;
    LuminanceMap lum = disc_scene(500, 10.0f, 20.0 * kDeg, kPi / 2.0, alpha, 1000.0f);
    FisheyeGeometry geom = FisheyeGeometry::centered(500, 500);
    SourceDetectionParams params;
    params.absolute_floor = 500.0;
    auto sources = detect_sources(lum, geom, params);
    REQUIRE(sources.size() == 1);
    const GlareSource& s = sources[0];
    CHECK(s.luminance == doctest::Approx(1000.0));
    CHECK(s.omega == doctest::Approx(cap_omega(alpha)).epsilon(0.03));
    CHECK(s.centroid_theta == doctest::Approx(20.0 * kDeg).epsilon(0.01));
    CHECK(s.centroid_phi == doctest::Approx(kPi / 2.0).epsilon(0.01));
    CHECK(s.direct_illuminance ==
          doctest::Approx(1000.0 * cap_omega(alpha) * std::cos(20.0 * kDeg)).epsilon(0.03));
    // pixel ids are row-major ascending
    CHECK(std::is_sorted(s.pixel_ids.begin(), s.pixel_ids.end()));
}

TEST_CASE("labeling is 8-connected") {
    LuminanceMap lum = uniform_scene(100, 10.0f);
    FisheyeGeometry geom = FisheyeGeometry::centered(100, 100);
    SourceDetectionParams params;
    params.absolute_floor = 100.0;
    params.merge_radius_rad = 0.0;  // isolate connectivity from merging

    // diagonal neighbours form one component
    lum.at(50, 50) = 200.0f;
    lum.at(51, 51) = 200.0f;
    CHECK(detect_sources(lum, geom, params).size() == 1);

    // a knight's-move gap does not connect
    lum.at(51, 51) = 10.0f;
    lum.at(52, 51) = 200.0f;
    CHECK(detect_sources(lum, geom, params).size() == 2);
}

TEST_CASE("nearby components merge transitively by centroid distance") {
    // three small discs in a row, 0.15 rad apart: A-B and B-C are within the
    // 0.2 rad merge radius, A-C is not, but merging is transitive
    LuminanceMap lum = uniform_scene(600, 10.0f);
    FisheyeGeometry geom = FisheyeGeometry::centered(600, 600);
    for (double k : {-1.0, 0.0, 1.0}) {
        LuminanceMap d = disc_scene(600, 0.0f, 0.35 + 0.15 * k, kPi / 2.0, 0.02, 2000.0f);
        for (std::size_t i = 0; i < lum.values.size(); ++i)
            if (d.values[i] > 0.0f) lum.values[i] = d.values[i];
    }
    SourceDetectionParams params;
    params.absolute_floor = 1000.0;
    auto merged = detect_sources(lum, geom, params);
    CHECK(merged.size() == 1);

    params.merge_radius_rad = 0.05;
    auto split = detect_sources(lum, geom, params);
    CHECK(split.size() == 3);
    // ordered by smallest member pixel id, ascending through the raster
    CHECK(split[0].pixel_ids.front() < split[1].pixel_ids.front());
    CHECK(split[1].pixel_ids.front() < split[2].pixel_ids.front());
}

TEST_CASE("detection on a black image needs an absolute floor") {
    LuminanceMap lum = uniform_scene(50, 0.0f);
    FisheyeGeometry geom = FisheyeGeometry::centered(50, 50);
    CHECK_THROWS_AS(detect_sources(lum, geom), DetectionError);
    SourceDetectionParams params;
    params.absolute_floor = 100.0;
    CHECK(detect_sources(lum, geom, params).empty());
}

TEST_CASE("UGR family reproduces the worked example") {
    // Lb = 40 via the indirect route: Ev = Ed + 40*pi
    auto src = example_source();
    SceneStats st;
    st.ev = src.direct_illuminance + 40.0 * kPi;
    auto r = indices_for({src}, st);
    CHECK(r.lum_background == doctest::Approx(40.0).epsilon(1e-12));
    CHECK(r.ugr == doctest::Approx(26.774300).epsilon(1e-6));
    CHECK(r.ugp == doctest::Approx((26.7743004890 - 3.33) / 25.0).epsilon(1e-6));
    CHECK(r.dgi == doctest::Approx(21.0896459309).epsilon(1e-9));
    CHECK(r.omega_s == doctest::Approx(0.05));
    CHECK(r.lum_sources == doctest::Approx(4000.0));
    CHECK(r.ev_dir == doctest::Approx(187.9385241571817).epsilon(1e-12));
}

TEST_CASE("UGP is the affine rescale of UGR, clamped to [0,1]") {
    // published mapping: UGR 17.60 -> 0.5708, 17.32 -> 0.5596
    CHECK((17.60 - 3.33) / 25.0 == doctest::Approx(0.5708).epsilon(1e-12));
    CHECK((17.32 - 3.33) / 25.0 == doctest::Approx(0.5596).epsilon(1e-12));

    auto src = example_source();
    SceneStats st;
    st.ev = src.direct_illuminance + 40.0 * kPi;
    auto r = indices_for({src}, st);
    CHECK(r.ugp == doctest::Approx(std::clamp((r.ugr - 3.33) / 25.0, 0.0, 1.0)).epsilon(1e-12));

    // a dim source drives UGR negative and UGP clamps at zero
    auto weak = src;
    weak.luminance = 1.0;
    weak.direct_illuminance = 0.05 * std::cos(20.0 * kDeg);
    SceneStats st2;
    st2.ev = weak.direct_illuminance + 40.0 * kPi;
    auto r2 = indices_for({weak}, st2);
    CHECK(r2.ugr < 0.0);
    CHECK(r2.ugp == 0.0);
}

TEST_CASE("DGP saturation and contrast terms") {
    auto src = example_source();
    SceneStats st;
    st.ev = 500.0;
    auto r = indices_for({src}, st);
    CHECK(r.dgp == doctest::Approx(0.2464722441).epsilon(1e-9));

    // no sources: only the Ev term remains
    SceneStats st2;
    st2.ev = 400.0;
    auto r2 = indices_for({}, st2);
    CHECK(r2.dgp == doctest::Approx(0.18348).epsilon(1e-9));
}

TEST_CASE("CGI worked example") {
    auto src = example_source();
    SceneStats st;
    st.ev = src.direct_illuminance + 300.0;  // indirect part = 300 lux
    auto r = indices_for({src}, st);
    CHECK(r.cgi == doctest::Approx(26.4172158585).epsilon(1e-9));
}

TEST_CASE("DGR and VCP worked example") {
    auto src = example_source();
    SceneStats st;
    st.ev = 500.0;
    st.av_lum = 100.0;  // adaptation level
    auto r = indices_for({src}, st);
    CHECK(r.dgr == doctest::Approx(312.84974607).epsilon(1e-9));
    CHECK(r.vcp == doctest::Approx(11.01242040).epsilon(1e-8));
}

TEST_CASE("veiling luminance terms at the default observer") {
    auto src = example_source();
    SceneStats st;
    st.ev = 500.0;
    auto r = indices_for({src}, st);
    CHECK(r.lveil == doctest::Approx(4.69846310).epsilon(1e-8));
    CHECK(r.lveil_cie == doctest::Approx(3.48264973).epsilon(1e-8));

    // a source on the axis uses the minimum glare angle, not a division by zero
    auto axial = src;
    axial.centroid_theta = 0.0;
    auto r2 = indices_for({axial}, st);
    CHECK(std::isfinite(r2.lveil));
    CHECK(r2.lveil > r.lveil);
}

TEST_CASE("no-source scenes fall back to defined floors") {
    SceneStats st;
    st.ev = 350.0;
    st.av_lum = 90.0;
    auto r = indices_for({}, st);
    CHECK(r.ev_dir == 0.0);
    CHECK(r.omega_s == 0.0);
    CHECK(r.lum_sources == 0.0);
    CHECK(r.dgr == 0.0);
    CHECK(r.vcp == 100.0);
    CHECK(r.lveil == 0.0);
    CHECK(r.lveil_cie == 0.0);
    CHECK(r.ugp == 0.0);
    // the tiny stand-in source sum keeps the log terms finite
    CHECK(std::isfinite(r.ugr));
    CHECK(r.ugr < -50.0);
    CHECK(std::isfinite(r.dgi));
    CHECK(std::isfinite(r.cgi));
}

TEST_CASE("metric record lookup is consistent and typed") {
    auto src = example_source();
    SceneStats st;
    st.ev = 500.0;
    st.av_lum = 100.0;
    auto r = indices_for({src}, st);
    const auto& names = GlareMetricsRecord::metric_names();
    auto vals = r.values();
    REQUIRE(names.size() == 24);
    for (std::size_t i = 0; i < names.size(); ++i) CHECK(r.value(names[i]) == vals[i]);
    CHECK_THROWS_AS(r.value("NotAMetric"), UnknownMetricError);
}

TEST_CASE("analyze_scene composes stats, detection, and indices") {
    LuminanceMap lum = disc_scene(400, 60.0f, 25.0 * kDeg, kPi / 2.0, 4.0 * kDeg, 6000.0f);
    FisheyeGeometry geom = FisheyeGeometry::centered(400, 400);
    SourceDetectionParams det;
    det.absolute_floor = 1000.0;

    auto direct = analyze_scene(lum, geom, det);
    SceneStats st = scene_stats(lum, geom);
    auto sources = detect_sources(lum, geom, det);
    REQUIRE(sources.size() == 1);
    auto composed = compute_indices(lum, geom, sources, st);
    for (std::size_t i = 0; i < 24; ++i) CHECK(direct.values()[i] == composed.values()[i]);
    CHECK(direct.dgp > 0.16);
    CHECK(direct.ev > 0.0);
}

TEST_CASE("mean non-source background mode averages what is left") {
    LuminanceMap lum = disc_scene(200, 75.0f, 30.0 * kDeg, 0.0, 5.0 * kDeg, 9000.0f);
    FisheyeGeometry geom = FisheyeGeometry::centered(200, 200);
    SourceDetectionParams det;
    det.absolute_floor = 1000.0;
    IndicesOptions opt;
    opt.background_mode = IndicesOptions::BackgroundMode::mean_nonsource_luminance;
    auto sources = detect_sources(lum, geom, det);
    SceneStats st = scene_stats(lum, geom);
    auto r = compute_indices(lum, geom, sources, st, opt);
    // everything outside the disc is exactly the background level
    CHECK(r.lum_background == doctest::Approx(75.0).epsilon(1e-5));
}
