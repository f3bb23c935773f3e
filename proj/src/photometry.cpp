#include "oge/photometry.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "oge/errors.hpp"

namespace oge {

namespace {

constexpr double kDeg = 3.14159265358979323846 / 180.0;

// smallest value whose cumulative weight reaches half the total
double weighted_median(std::vector<std::pair<float, double>>& lw) {
    if (lw.empty()) return 0.0;
    std::sort(lw.begin(), lw.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    double total = 0.0;
    for (const auto& [l, w] : lw) total += w;
    double cum = 0.0;
    for (const auto& [l, w] : lw) {
        cum += w;
        if (cum >= total / 2.0) return l;
    }
    return lw.back().first;
}

}  // namespace

bool in_task_zone(const TaskZone& zone, double theta, double phi) {
    Direction c = direction_from_angles(zone.center_theta_deg * kDeg, zone.center_phi_deg * kDeg);
    Direction d = direction_from_angles(theta, phi);
    return angle_between(c, d) <= zone.radius_deg * kDeg;
}

double vertical_illuminance(const LuminanceMap& lum, const FisheyeGeometry& geom) {
    double ev = 0.0;
    for (int y = 0; y < lum.height; ++y)
        for (int x = 0; x < lum.width; ++x) {
            auto pg = pixel_geometry(geom, x, y);
            if (!pg) continue;
            ev += double(lum.at(x, y)) * pg->omega * std::cos(pg->theta);
        }
    return ev;
}

SceneStats scene_stats(const LuminanceMap& lum, const FisheyeGeometry& geom,
                       const TaskZone& zone) {
    if (!(geom.radius_px > 0.0)) throw GeometryError("image-circle radius must be positive");
    if (!(zone.radius_deg > 0.0)) throw GeometryError("task-zone radius must be positive");

    SceneStats st;
    double sum_w = 0.0, sum_lw = 0.0;
    double sum_wp = 0.0, sum_lwp = 0.0;
    double sum_wp2 = 0.0, sum_lwp2 = 0.0;
    double task_w = 0.0, task_lw = 0.0;
    bool any = false, any_task = false;

    std::vector<std::pair<float, double>> lw, lwp, lwp2;
    lw.reserve(lum.values.size());

    for (int y = 0; y < lum.height; ++y)
        for (int x = 0; x < lum.width; ++x) {
            auto pg = pixel_geometry(geom, x, y);
            if (!pg) continue;
            any = true;
            double l = lum.at(x, y);
            double w = pg->omega;
            double wp = w / pg->position_index;
            double wp2 = wp / pg->position_index;

            st.ev += l * w * std::cos(pg->theta);
            sum_w += w;
            sum_lw += l * w;
            sum_wp += wp;
            sum_lwp += l * wp;
            sum_wp2 += wp2;
            sum_lwp2 += l * wp2;
            if (l > st.max_lum) st.max_lum = l;

            lw.emplace_back(float(l), w);
            lwp.emplace_back(float(l), wp);
            lwp2.emplace_back(float(l), wp2);

            if (in_task_zone(zone, pg->theta, pg->phi)) {
                any_task = true;
                task_w += w;
                task_lw += l * w;
            }
        }

    if (!any) throw EmptyRegionError("no pixels inside the image circle");
    if (!any_task) throw EmptyRegionError("no pixels inside the task zone");

    st.av_lum = sum_lw / sum_w;
    st.av_lum_pos = sum_lwp / sum_wp;
    st.av_lum_pos2 = sum_lwp2 / sum_wp2;
    st.task_lum = task_lw / task_w;
    st.med_lum = weighted_median(lw);
    st.med_lum_pos = weighted_median(lwp);
    st.med_lum_pos2 = weighted_median(lwp2);
    return st;
}

}
