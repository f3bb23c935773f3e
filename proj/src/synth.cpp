#include "oge/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "oge/csv.hpp"
#include "oge/errors.hpp"
#include "oge/fisheye.hpp"
#include "oge/photometry.hpp"
#include "oge/rng.hpp"

namespace oge {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kDeg = kPi / 180.0;
}

void ScenarioParams::validate() const {
    if (n_scenes < 1) throw ConfigError("n_scenes must be >= 1");
    if (positive_fraction < 0.0 || positive_fraction > 1.0)
        throw ConfigError("positive_fraction must be in [0, 1]");
    if (width < 16 || height < 16) throw ConfigError("scene images must be at least 16x16");
    if (!(bg_log_sigma >= 0.0) || !(bg_texture_sigma >= 0.0))
        throw ConfigError("background sigmas must be non-negative");
    if (bg_texture_cells < 1) throw ConfigError("bg_texture_cells must be >= 1");
    if (source_count_min < 0 || source_count_max < source_count_min)
        throw ConfigError("bad source count range");
    if (!(source_lum_min > 0.0) || source_lum_max < source_lum_min)
        throw ConfigError("bad source luminance range");
    if (!(source_radius_min_deg > 0.0) || source_radius_max_deg < source_radius_min_deg)
        throw ConfigError("bad source radius range");
    if (source_theta_max_deg <= 0.0 || source_theta_max_deg > 85.0)
        throw ConfigError("source_theta_max_deg must be in (0, 85]");
    if (position_archetypes < 0) throw ConfigError("position_archetypes must be >= 0");
    if (position_jitter_deg < 0.0) throw ConfigError("position_jitter_deg must be >= 0");
    if (label_noise < 0.0 || label_noise > 0.5)
        throw ConfigError("label_noise must be in [0, 0.5]");
    if (!(score_margin >= 0.0)) throw ConfigError("score_margin must be >= 0");
    if (max_retries < 1) throw ConfigError("max_retries must be >= 1");
}

SynthScene synth_scene(const ScenarioParams& p, std::uint64_t scene_seed) {
    Rng rng(scene_seed);
    SynthScene sc;
    sc.record.scene_seed = scene_seed;

    // background: one base level per scene, modulated by a bilinearly
    // upsampled low-res log-normal texture (normalized to unit mean)
    sc.bg_level = rng.lognormal(p.bg_log_mean, p.bg_log_sigma);
    const int tc = p.bg_texture_cells;
    std::vector<double> tex(std::size_t(tc + 1) * std::size_t(tc + 1));
    const double tex_norm = std::exp(0.5 * p.bg_texture_sigma * p.bg_texture_sigma);
    for (auto& t : tex) t = rng.lognormal(0.0, p.bg_texture_sigma) / tex_norm;

    // archetype positions are a property of the corpus, not the scene
    std::vector<std::pair<double, double>> archetypes;  // (theta_deg, phi_deg)
    if (p.position_archetypes > 0) {
        Rng arng(Rng::mix(p.seed, 0xA2C4ULL));
        for (int a = 0; a < p.position_archetypes; ++a)
            archetypes.emplace_back(arng.uniform(8.0, p.source_theta_max_deg),
                                    arng.uniform(0.0, 360.0));
    }

    int n_src = rng.uniform_int(p.source_count_min, p.source_count_max);
    for (int s = 0; s < n_src; ++s) {
        SynthSource src;
        if (!archetypes.empty()) {
            const auto& [at, ap] = archetypes[rng.below(archetypes.size())];
            double j = p.position_jitter_deg;
            double theta_deg =
                std::clamp(at + rng.uniform(-j, j), 0.5, p.source_theta_max_deg);
            src.theta = theta_deg * kDeg;
            src.phi = std::fmod(ap + rng.uniform(-j, j) + 360.0, 360.0) * kDeg;
        } else {
            src.theta = rng.uniform(0.0, p.source_theta_max_deg) * kDeg;
            src.phi = rng.uniform(0.0, 2.0 * kPi);
        }
        src.luminance = rng.log_uniform(p.source_lum_min, p.source_lum_max);
        src.radius_rad = rng.uniform(p.source_radius_min_deg, p.source_radius_max_deg) * kDeg;
        sc.sources.push_back(src);
    }

    FisheyeGeometry geom = FisheyeGeometry::centered(p.width, p.height);
    sc.lum.width = p.width;
    sc.lum.height = p.height;
    sc.lum.values.assign(std::size_t(p.width) * std::size_t(p.height), 0.0f);

    std::vector<Direction> dirs;
    dirs.reserve(sc.sources.size());
    for (const auto& s : sc.sources) dirs.push_back(direction_from_angles(s.theta, s.phi));

    for (int y = 0; y < p.height; ++y)
        for (int x = 0; x < p.width; ++x) {
            auto pg = pixel_geometry(geom, x, y);
            if (!pg) continue;
            // texture lookup in normalized [0,1]^2 coordinates
            double u = (x + 0.5) / p.width * tc;
            double v = (y + 0.5) / p.height * tc;
            int iu = std::min(int(u), tc - 1), iv = std::min(int(v), tc - 1);
            double fu = u - iu, fv = v - iv;
            auto t = [&](int a, int b) { return tex[std::size_t(b) * (tc + 1) + std::size_t(a)]; };
            double mod = (1 - fu) * (1 - fv) * t(iu, iv) + fu * (1 - fv) * t(iu + 1, iv) +
                         (1 - fu) * fv * t(iu, iv + 1) + fu * fv * t(iu + 1, iv + 1);
            double l = sc.bg_level * mod;
            Direction d = direction_from_angles(pg->theta, pg->phi);
            for (std::size_t s = 0; s < sc.sources.size(); ++s)
                if (angle_between(d, dirs[s]) <= sc.sources[s].radius_rad)
                    l = std::max(l, sc.sources[s].luminance);
            sc.lum.at(x, y) = float(l);
        }

    // generative score from analytic source terms and the measured Ev
    sc.record.ev = vertical_illuminance(sc.lum, geom);
    double best = 0.0;
    for (const auto& s : sc.sources) {
        double omega = 2.0 * kPi * (1.0 - std::cos(s.radius_rad));
        double pidx = guth_position_index(s.theta, s.phi);
        best = std::max(best, s.luminance * s.luminance * omega / (pidx * pidx));
    }
    sc.record.gen_score = best > 0.0 && sc.record.ev > 0.0
                              ? std::log10(best) - 1.87 * std::log10(sc.record.ev)
                              : -30.0;
    sc.record.label = sc.record.gen_score > p.score_threshold ? 1 : 0;

    // grey radiance pixels so that the Radiance luminance convention
    // recovers the luminance values exactly (modulo RGBE quantization)
    sc.image.width = p.width;
    sc.image.height = p.height;
    sc.image.pixels.resize(sc.lum.values.size());
    for (std::size_t i = 0; i < sc.lum.values.size(); ++i) {
        float v = sc.lum.values[i] / 179.0f;
        sc.image.pixels[i] = {v, v, v};
    }
    return sc;
}

namespace {

SynthScene draw_scene_for_label(const ScenarioParams& p, std::uint64_t scene_seed,
                                int target_label /* -1 = any */) {
    for (int attempt = 0; attempt < p.max_retries; ++attempt) {
        SynthScene sc = synth_scene(p, Rng::mix(scene_seed, std::uint64_t(attempt)));
        if (p.score_margin > 0.0 &&
            std::abs(sc.record.gen_score - p.score_threshold) < p.score_margin)
            continue;
        if (target_label >= 0 && sc.record.label != target_label) continue;
        return sc;
    }
    throw GenerationError(
        "could not draw a scene matching the requested label within the retry budget; "
        "widen the source luminance range or relax score_margin/score_threshold");
}

}  // namespace

std::vector<SceneRecord> generate_corpus(const ScenarioParams& p, const std::string& out_dir,
                                         const std::vector<std::string>& manifest_comments) {
    p.validate();
    std::filesystem::create_directories(out_dir);

    // per-scene target labels (quota mode fixes the exact mix, shuffled)
    std::vector<int> targets(std::size_t(p.n_scenes), -1);
    if (p.quota) {
        int n_pos = int(std::lround(p.positive_fraction * p.n_scenes));
        for (int i = 0; i < p.n_scenes; ++i) targets[std::size_t(i)] = i < n_pos ? 1 : 0;
        Rng trng(Rng::mix(p.seed, 0x7a26e75ULL));
        trng.shuffle(targets);
    }

    std::vector<SceneRecord> records;
    records.reserve(std::size_t(p.n_scenes));
    for (int i = 0; i < p.n_scenes; ++i) {
        std::uint64_t scene_seed = Rng::mix(p.seed, std::uint64_t(i) + 1);
        SynthScene sc = draw_scene_for_label(p, scene_seed, targets[std::size_t(i)]);

        SceneRecord rec = sc.record;
        if (p.label_noise > 0.0) {
            Rng nrng(Rng::mix(scene_seed, 0xF11EULL));
            if (nrng.uniform() < p.label_noise) rec.label = 1 - rec.label;
        }
        std::ostringstream id;
        id << "scene_" << std::setw(4) << std::setfill('0') << i;
        rec.id = id.str();

        write_radiance_hdr_file(sc.image, out_dir + "/" + rec.id + ".hdr");
        records.push_back(rec);
    }
    write_manifest(records, out_dir + "/manifest.csv", manifest_comments);
    return records;
}

void write_manifest(const std::vector<SceneRecord>& records, const std::string& path,
                    const std::vector<std::string>& comments) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    for (const auto& c : comments) out << (c.empty() || c[0] != '#' ? "# " : "") << c << '\n';
    out << "id,label,ev,gen_score,scene_seed\n";
    for (const auto& r : records) {
        out << r.id << ',' << r.label << ',' << format_double(r.ev) << ','
            << format_double(r.gen_score) << ',' << r.scene_seed << '\n';
    }
}

std::vector<SceneRecord> read_manifest(const std::string& path) {
    CsvTable t = read_csv_file(path);
    if (t.header != std::vector<std::string>{"id", "label", "ev", "gen_score", "scene_seed"})
        throw ConfigError("unexpected manifest header in " + path);
    std::vector<SceneRecord> out;
    for (const auto& r : t.rows) {
        if (r.size() != 5) throw ConfigError("malformed manifest row in " + path);
        SceneRecord rec;
        rec.id = r[0];
        rec.label = int(parse_long(r[1]));
        rec.ev = parse_double(r[2]);
        rec.gen_score = parse_double(r[3]);
        rec.scene_seed = std::uint64_t(std::stoull(r[4]));
        out.push_back(rec);
    }
    return out;
}

}
