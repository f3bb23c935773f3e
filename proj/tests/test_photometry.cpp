#include <cmath>

#include "doctest.h"
#include "oge/errors.hpp"
#include "oge/photometry.hpp"
#include "test_util.hpp"

using namespace oge;
using namespace oge::testutil;

TEST_CASE("pixel solid angles close over the hemisphere") {
    // the image circle covers exactly one hemisphere, so the pixel solid
    // angles must sum to 2*pi; the residual shrinks with resolution
    for (auto [size, tol] : {std::pair{200, 1e-2}, std::pair{1000, 1e-3}}) {
        FisheyeGeometry geom = FisheyeGeometry::centered(size, size);
        double sum = 0.0;
        for (int y = 0; y < size; ++y)
            for (int x = 0; x < size; ++x)
                if (auto pg = pixel_geometry(geom, x, y)) sum += pg->omega;
        CHECK(std::abs(sum - 2.0 * kPi) < tol);
    }
}

TEST_CASE("sample geometry maps radius to field angle linearly") {
    FisheyeGeometry geom = FisheyeGeometry::centered(200, 200);
    CHECK(geom.focal_px() == doctest::Approx(100.0 / (kPi / 2.0)));

    // halfway out the circle -> 45 degrees, straight right -> phi = 90 deg
    auto pg = sample_geometry(geom, 150.0, 100.0);
    REQUIRE(pg);
    CHECK(pg->theta == doctest::Approx(kPi / 4.0));
    CHECK(pg->phi == doctest::Approx(kPi / 2.0));

    // straight up is phi = 0, straight down phi = pi
    CHECK(sample_geometry(geom, 100.0, 40.0)->phi == doctest::Approx(0.0));
    CHECK(sample_geometry(geom, 100.0, 160.0)->phi == doctest::Approx(kPi));

    // outside the circle there is no geometry
    CHECK(!sample_geometry(geom, 199.9, 199.9));
    CHECK(!sample_geometry(geom, 100.0, 201.0));

    FisheyeGeometry bad = geom;
    bad.radius_px = 0.0;
    CHECK_THROWS_AS(sample_geometry(bad, 100.0, 100.0), GeometryError);
}

TEST_CASE("position index matches tabulated values above the sight line") {
    auto P = [](double theta_deg, double phi_deg) {
        return guth_position_index(theta_deg * kDeg, phi_deg * kDeg);
    };
    CHECK(P(10, 0) == doctest::Approx(1.4344765369).epsilon(1e-9));
    CHECK(P(30, 0) == doctest::Approx(3.3481233673).epsilon(1e-9));
    CHECK(P(45, 45) == doctest::Approx(4.4149511803).epsilon(1e-9));
    CHECK(P(20, 90) == doctest::Approx(1.2386201775).epsilon(1e-9));
    CHECK(P(60, 30) == doctest::Approx(12.0120131301).epsilon(1e-9));

    // symmetric in azimuth about the vertical plane
    CHECK(P(45, 45) == doctest::Approx(P(45, -45)).epsilon(1e-12));
    CHECK(P(30, 80) == doctest::Approx(P(30, 280)).epsilon(1e-12));

    // identity on the view axis, hard cap at 16 far out
    CHECK(P(0, 0) == doctest::Approx(1.0));
    CHECK(P(88, 0) == doctest::Approx(16.0));
}

TEST_CASE("position index below the sight line uses the tangent extension") {
    auto P = [](double theta_deg) { return guth_position_index(theta_deg * kDeg, kPi); };
    CHECK(P(10) == doctest::Approx(1.1410615846).epsilon(1e-9));
    // 0.8/1.2 slope switch at tan(theta) = 0.6
    CHECK(P(30.9637565320735) == doctest::Approx(1.48).epsilon(1e-9));
    CHECK(P(45) == doctest::Approx(2.2).epsilon(1e-9));
    // tangent capped at 3
    CHECK(P(75) == doctest::Approx(4.6).epsilon(1e-9));
    CHECK(P(85) == doctest::Approx(4.6).epsilon(1e-9));
}

TEST_CASE("vertical illuminance of a uniform hemisphere is pi * L") {
    LuminanceMap lum = uniform_scene(1000, 100.0f);
    FisheyeGeometry geom = FisheyeGeometry::centered(1000, 1000);
    double ev = vertical_illuminance(lum, geom);
    CHECK(std::abs(ev - kPi * 100.0) / (kPi * 100.0) < 0.005);
}

TEST_CASE("vertical illuminance of a bright patch matches the analytic cap integral") {
    // 0.1 sr cap (half-angle 10.2359 deg) of 2000 cd/m^2 centered 30 deg off
    // axis; the exact projected integral is pi * sin^2(alpha) * cos(30 deg) * L
    const double alpha = 10.235884697069082 * kDeg;
    LuminanceMap lum = disc_scene(1000, 0.0f, 30.0 * kDeg, kPi / 2.0, alpha, 2000.0f);
    FisheyeGeometry geom = FisheyeGeometry::centered(1000, 1000);
    double ev = vertical_illuminance(lum, geom);
    CHECK(std::abs(ev - 171.826759) / 171.826759 < 0.02);
}

TEST_CASE("scene statistics of a uniform field all equal the field level") {
    LuminanceMap lum = uniform_scene(200, 42.0f);
    FisheyeGeometry geom = FisheyeGeometry::centered(200, 200);
    SceneStats st = scene_stats(lum, geom);
    CHECK(st.av_lum == doctest::Approx(42.0).epsilon(1e-6));
    CHECK(st.med_lum == doctest::Approx(42.0));
    CHECK(st.max_lum == doctest::Approx(42.0));
    CHECK(st.task_lum == doctest::Approx(42.0).epsilon(1e-6));
    // weights cancel for a constant field
    CHECK(st.av_lum_pos == doctest::Approx(42.0).epsilon(1e-6));
    CHECK(st.av_lum_pos2 == doctest::Approx(42.0).epsilon(1e-6));
    CHECK(st.med_lum_pos == doctest::Approx(42.0));
    CHECK(st.med_lum_pos2 == doctest::Approx(42.0));
    CHECK(st.ev == doctest::Approx(kPi * 42.0).epsilon(0.005));
}

TEST_CASE("scene statistics on a split field") {
    // left half 100, right half 300; halves carry equal solid angle
    LuminanceMap lum = uniform_scene(400, 100.0f);
    for (int y = 0; y < 400; ++y)
        for (int x = 200; x < 400; ++x) lum.at(x, y) = 300.0f;
    FisheyeGeometry geom = FisheyeGeometry::centered(400, 400);
    SceneStats st = scene_stats(lum, geom);
    CHECK(st.av_lum == doctest::Approx(200.0).epsilon(1e-3));
    // lower weighted median: the 100-half already reaches half the weight
    CHECK(st.med_lum == doctest::Approx(100.0));
    CHECK(st.max_lum == doctest::Approx(300.0));
    CHECK(st.task_lum == doctest::Approx(200.0).epsilon(1e-3));
}

TEST_CASE("position weighting discounts off-axis brightness") {
    // a bright disc far off axis drags the plain mean up more than the
    // position-discounted means
    LuminanceMap lum = disc_scene(300, 50.0f, 60.0 * kDeg, 0.0, 8.0 * kDeg, 5000.0f);
    FisheyeGeometry geom = FisheyeGeometry::centered(300, 300);
    SceneStats st = scene_stats(lum, geom);
    CHECK(st.av_lum > st.av_lum_pos);
    CHECK(st.av_lum_pos > st.av_lum_pos2);
    CHECK(st.av_lum_pos2 > 50.0);
}

TEST_CASE("task zone membership and empty-region errors") {
    CHECK(in_task_zone(TaskZone{}, 29.9 * kDeg, 1.0));
    CHECK(!in_task_zone(TaskZone{}, 30.1 * kDeg, 1.0));
    // off-center zone
    TaskZone side{45.0, 90.0, 10.0};
    CHECK(in_task_zone(side, 45.0 * kDeg, 90.0 * kDeg));
    CHECK(!in_task_zone(side, 45.0 * kDeg, 270.0 * kDeg));

    LuminanceMap lum = uniform_scene(50, 10.0f);
    FisheyeGeometry geom = FisheyeGeometry::centered(50, 50);
    // a zone too small to catch any pixel center
    CHECK_THROWS_AS(scene_stats(lum, geom, TaskZone{45.0, 45.0, 0.01}), EmptyRegionError);
    CHECK_THROWS_AS(scene_stats(lum, geom, TaskZone{0.0, 0.0, 0.0}), GeometryError);
    FisheyeGeometry bad = geom;
    bad.radius_px = -1.0;
    CHECK_THROWS_AS(scene_stats(lum, bad), GeometryError);
}
