#include "oge/glare_indices.hpp"

#include <algorithm>
#include <cmath>

#include "oge/errors.hpp"

namespace oge {

namespace {
constexpr double kPi = 3.14159265358979323846;

double mean_nonsource_luminance(const LuminanceMap& lum, const FisheyeGeometry& geom,
                                const std::vector<GlareSource>& sources) {
    std::vector<char> is_src(lum.values.size(), 0);
    for (const auto& s : sources)
        for (int i : s.pixel_ids) is_src[std::size_t(i)] = 1;
    double sw = 0.0, slw = 0.0;
    for (int y = 0; y < lum.height; ++y)
        for (int x = 0; x < lum.width; ++x) {
            std::size_t i = std::size_t(y) * lum.width + std::size_t(x);
            if (is_src[i]) continue;
            auto pg = pixel_geometry(geom, x, y);
            if (!pg) continue;
            sw += pg->omega;
            slw += double(lum.values[i]) * pg->omega;
        }
    return sw > 0.0 ? slw / sw : 0.0;
}

}  // namespace

const std::array<const char*, 24>& GlareMetricsRecord::metric_names() {
    static const std::array<const char*, 24> names = {
        "Ev",          "Ev_dir",      "DGP",         "UGP",         "UGR",
        "UGR_exp",     "VCP",         "DGI",         "DGI_mod",     "CGI",
        "DGR",         "Lveil",       "Lveil_CIE",   "Omega_S",     "Lum_sources",
        "Av_Lum_pos",  "Av_Lum_pos2", "Med_lum",     "Med_lum_pos", "Med_lum_pos2",
        "Av_Lum",      "Lum_Background", "Task_Lum", "Max_Lum"};
    return names;
}

std::array<double, 24> GlareMetricsRecord::values() const {
    return {ev,          ev_dir,      dgp,       ugp,         ugr,
            ugr_exp,     vcp,         dgi,       dgi_mod,     cgi,
            dgr,         lveil,       lveil_cie, omega_s,     lum_sources,
            av_lum_pos,  av_lum_pos2, med_lum,   med_lum_pos, med_lum_pos2,
            av_lum,      lum_background, task_lum, max_lum};
}

double GlareMetricsRecord::value(std::string_view name) const {
    const auto& names = metric_names();
    auto vals = values();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (name == names[i]) return vals[i];
    throw UnknownMetricError("unknown metric: '" + std::string(name) + "'");
}

GlareMetricsRecord compute_indices(const LuminanceMap& lum, const FisheyeGeometry& geom,
                                   const std::vector<GlareSource>& sources,
                                   const SceneStats& stats, const IndicesOptions& opt) {
    GlareMetricsRecord r;
    r.ev = stats.ev;
    r.av_lum = stats.av_lum;
    r.av_lum_pos = stats.av_lum_pos;
    r.av_lum_pos2 = stats.av_lum_pos2;
    r.med_lum = stats.med_lum;
    r.med_lum_pos = stats.med_lum_pos;
    r.med_lum_pos2 = stats.med_lum_pos2;
    r.task_lum = stats.task_lum;
    r.max_lum = stats.max_lum;

    const bool have_sources = !sources.empty();
    double sum_l2w_p2 = 0.0;   // sum L^2 w / P^2      (DGP, UGR, CGI)
    double sum_lw = 0.0;       // sum L w              (mean source luminance)
    double sum_w = 0.0;        // total source solid angle
    for (const auto& s : sources) {
        r.ev_dir += s.direct_illuminance;
        sum_l2w_p2 += s.luminance * s.luminance * s.omega / (s.position_index * s.position_index);
        sum_lw += s.luminance * s.omega;
        sum_w += s.omega;
    }
    r.omega_s = sum_w;
    r.lum_sources = have_sources ? sum_lw / sum_w : 0.0;

    double ei = r.ev - r.ev_dir;  // indirect part
    if (ei < 0.0) ei = 0.0;
    r.lum_background = opt.background_mode == IndicesOptions::BackgroundMode::indirect_illuminance
                           ? ei / kPi
                           : mean_nonsource_luminance(lum, geom, sources);
    double lb_exp = r.ev / kPi;  // "experimental" adaptation from total Ev

    // DGP: saturation term on Ev plus a contrast-driven log term
    {
        double contrast = have_sources && r.ev > 0.0
                              ? sum_l2w_p2 / std::pow(r.ev, 1.87)
                              : 0.0;
        r.dgp = 5.87e-5 * r.ev + 9.18e-2 * std::log10(1.0 + contrast) + 0.16;
    }

    // UGR family; with no sources the source sum collapses to a tiny floor
    double ugr_sum = have_sources ? sum_l2w_p2 : opt.empty_source_sum;
    auto ugr_form = [&](double lb) {
        return 8.0 * std::log10(0.25 / std::max(lb, 1e-9) * ugr_sum);
    };
    r.ugr = ugr_form(r.lum_background);
    r.ugr_exp = ugr_form(lb_exp);
    r.ugp = std::clamp((r.ugr - 3.33) / 25.0, 0.0, 1.0);

    // DGI family (British glare index, 1.6-power source term)
    {
        double dgi_sum = 0.0, dgi_sum_mod = 0.0;
        for (const auto& s : sources) {
            double omega_pos = std::pow(s.omega / (s.position_index * s.position_index), 0.8);
            double num = 0.478 * std::pow(s.luminance, 1.6) * omega_pos;
            double shade = 0.07 * std::sqrt(s.omega) * s.luminance;
            dgi_sum += num / (r.lum_background + shade);
            dgi_sum_mod += num / (lb_exp + shade);
        }
        if (!have_sources) dgi_sum = dgi_sum_mod = opt.empty_source_sum;
        r.dgi = 10.0 * std::log10(dgi_sum);
        r.dgi_mod = 10.0 * std::log10(dgi_sum_mod);
    }

    // CGI
    {
        double ed = r.ev_dir, eind = ei;
        double denom = ed + eind;
        double cgi_sum = have_sources ? sum_l2w_p2 : opt.empty_source_sum;
        double lead = denom > 0.0 ? 2.0 * (1.0 + ed / 500.0) / denom : 2.0;
        r.cgi = 8.0 * std::log10(lead * cgi_sum);
    }

    // DGR and VCP
    {
        double f = stats.av_lum;  // adaptation level
        double sum_m = 0.0;
        for (const auto& s : sources) {
            double q = 20.4 * s.omega + 1.52 * std::pow(s.omega, 0.2) - 0.075;
            double m = 0.5 * s.luminance * q / (s.position_index * std::pow(f, 0.44));
            sum_m += m;
        }
        std::size_t n = sources.size();
        double nexp = n > 0 ? std::pow(double(n), -0.0914) : 1.0;
        r.dgr = n > 0 ? std::pow(sum_m, nexp) : 0.0;
        if (r.dgr > 0.0) {
            double z = 6.374 - 1.3227 * std::log(r.dgr);
            r.vcp = 50.0 * std::erfc(-z / std::sqrt(2.0));
        } else {
            r.vcp = 100.0;
        }
    }

    // veiling luminance (Holladay-Stiles) and the CIE age-dependent form
    {
        double age4 = std::pow(opt.observer_age / 62.5, 4.0);
        double p = opt.eye_pigmentation;
        for (const auto& s : sources) {
            double theta_deg = s.centroid_theta * 180.0 / kPi;
            if (theta_deg < opt.min_glare_angle_deg) theta_deg = opt.min_glare_angle_deg;
            double e_glare = s.direct_illuminance;
            r.lveil += 10.0 * e_glare / (theta_deg * theta_deg);
            double t = theta_deg;
            r.lveil_cie += e_glare * (10.0 / (t * t * t) +
                                      (5.0 / (t * t) + 0.1 * p / t) * (1.0 + age4) + 0.0025 * p);
        }
    }

    return r;
}

GlareMetricsRecord analyze_scene(const LuminanceMap& lum, const FisheyeGeometry& geom,
                                 const SourceDetectionParams& det, const TaskZone& zone,
                                 const IndicesOptions& opt) {
    SceneStats stats = scene_stats(lum, geom, zone);
    auto sources = detect_sources(lum, geom, det, zone);
    return compute_indices(lum, geom, sources, stats, opt);
}

}
