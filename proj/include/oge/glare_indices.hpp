#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "oge/glare_sources.hpp"

namespace oge {

struct IndicesOptions {
    enum class BackgroundMode {
        indirect_illuminance,      // Lb = (Ev - Ev_dir) / pi
        mean_nonsource_luminance,  // omega-weighted mean over non-source pixels
    };
    BackgroundMode background_mode = BackgroundMode::indirect_illuminance;

    double observer_age = 32.0;      // disability-glare age term
    double eye_pigmentation = 0.5;   // 0 black eyes .. 1.2 blue eyes
    double min_glare_angle_deg = 0.1;  // floor on the eccentricity used by veiling terms
    double empty_source_sum = 1e-9;    // stand-in source sum when no source exists
};

// One scene's worth of glare metrics, in the canonical export order.
struct GlareMetricsRecord {
    double ev = 0.0;
    double ev_dir = 0.0;
    double dgp = 0.0;
    double ugp = 0.0;
    double ugr = 0.0;
    double ugr_exp = 0.0;
    double vcp = 0.0;
    double dgi = 0.0;
    double dgi_mod = 0.0;
    double cgi = 0.0;
    double dgr = 0.0;
    double lveil = 0.0;
    double lveil_cie = 0.0;
    double omega_s = 0.0;
    double lum_sources = 0.0;
    double av_lum_pos = 0.0;
    double av_lum_pos2 = 0.0;
    double med_lum = 0.0;
    double med_lum_pos = 0.0;
    double med_lum_pos2 = 0.0;
    double av_lum = 0.0;
    double lum_background = 0.0;
    double task_lum = 0.0;
    double max_lum = 0.0;

    static const std::array<const char*, 24>& metric_names();
    std::array<double, 24> values() const;
    double value(std::string_view name) const;  // UnknownMetricError on bad name
};

GlareMetricsRecord compute_indices(const LuminanceMap& lum, const FisheyeGeometry& geom,
                                   const std::vector<GlareSource>& sources,
                                   const SceneStats& stats, const IndicesOptions& opt = {});

// convenience wrapper: stats + detection + indices in one call
GlareMetricsRecord analyze_scene(const LuminanceMap& lum, const FisheyeGeometry& geom,
                                 const SourceDetectionParams& det = {}, const TaskZone& zone = {},
                                 const IndicesOptions& opt = {});

}
