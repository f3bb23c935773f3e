#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oge/hdr_image.hpp"

namespace oge {

// Knobs for the synthetic labeled corpus. A scene is a smoothly textured
// background hemisphere plus a few circular sources; the generative glare
// score combines the strongest source's contrast term with the analytic
// vertical illuminance, and the label thresholds that score. All constants
// here are conventional choices, not measurements.
struct ScenarioParams {
    int n_scenes = 80;
    double positive_fraction = 0.375;
    bool quota = true;  // true: redraw scenes until the exact label mix is hit

    int width = 200;
    int height = 200;

    // background base level, log-normal in cd/m^2 (natural-log parameters)
    double bg_log_mean = 4.4426512564903167;  // ln(85)
    double bg_log_sigma = 0.30;
    double bg_texture_sigma = 0.25;  // strength of the low-res multiplicative texture
    int bg_texture_cells = 8;

    int source_count_min = 1;
    int source_count_max = 3;
    double source_lum_min = 200.0;     // cd/m^2, log-uniform
    double source_lum_max = 12000.0;
    double source_radius_min_deg = 1.0;
    double source_radius_max_deg = 4.0;
    double source_theta_max_deg = 50.0;  // keep sources well inside the field

    // Source placement. Surveyed interiors put luminaires and windows in a
    // handful of recurring directions, so by default each corpus draws a
    // small set of archetype positions (from the corpus seed) and scenes
    // jitter around them. 0 archetypes = positions uniform over the field.
    int position_archetypes = 8;
    double position_jitter_deg = 2.0;

    // generative labeling: score = log10(max_i L_i^2 w_i / P_i^2) - 1.87*log10(Ev)
    double score_threshold = -1.0;
    double score_margin = 0.20;  // scenes closer than this to the threshold are redrawn
    double label_noise = 0.0;    // post-hoc flip probability

    int max_retries = 200;
    std::uint64_t seed = 0;

    void validate() const;
};

struct SynthSource {
    double theta = 0.0;       // rad
    double phi = 0.0;         // rad
    double luminance = 0.0;   // cd/m^2
    double radius_rad = 0.0;  // angular radius
};

struct SceneRecord {
    std::string id;
    int label = 0;
    double ev = 0.0;         // measured from the rendered luminance map
    double gen_score = 0.0;
    std::uint64_t scene_seed = 0;
};

struct SynthScene {
    LuminanceMap lum;
    HdrImage image;
    SceneRecord record;  // label here is the raw (pre-noise) generative label
    std::vector<SynthSource> sources;
    double bg_level = 0.0;
};

// Render one scene from a derived seed (no margin/label logic).
SynthScene synth_scene(const ScenarioParams& p, std::uint64_t scene_seed);

// Full corpus: writes scene_<id>.hdr files plus manifest.csv into out_dir
// and returns the manifest. Byte-identical for identical params.
std::vector<SceneRecord> generate_corpus(const ScenarioParams& p, const std::string& out_dir,
                                         const std::vector<std::string>& manifest_comments = {});

void write_manifest(const std::vector<SceneRecord>& records, const std::string& path,
                    const std::vector<std::string>& comments = {});
std::vector<SceneRecord> read_manifest(const std::string& path);

}
