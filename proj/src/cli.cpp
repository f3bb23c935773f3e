#include "oge/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "oge/classifiers.hpp"
#include "oge/cross_validation.hpp"
#include "oge/csv.hpp"
#include "oge/errors.hpp"
#include "oge/falsecolor.hpp"
#include "oge/feature_matrix.hpp"
#include "oge/glare_indices.hpp"
#include "oge/mrl.hpp"
#include "oge/parallel.hpp"
#include "oge/roc.hpp"
#include "oge/synth.hpp"
#include "oge/version.hpp"

namespace oge::cli {

namespace {

using nlohmann::json;

std::string provenance(const std::string& subcommand, const std::string& canonical_config) {
    return "oge " + std::string(kVersion) + " " + subcommand + " " +
           hex64(fnv1a64(subcommand + "|" + canonical_config));
}

// ---------------------------------------------------------------------------
// input resolution shared by extract / metrics / predict

struct ImageSet {
    std::vector<std::string> ids;
    std::vector<std::string> paths;
    std::vector<int> labels;  // -1 = unknown
};

ImageSet resolve_inputs(const std::vector<std::string>& images, const std::string& manifest) {
    ImageSet set;
    if (!manifest.empty()) {
        if (!images.empty())
            throw ConfigError("give either image arguments or --manifest, not both");
        auto records = read_manifest(manifest);
        std::string dir = std::filesystem::path(manifest).parent_path().string();
        if (dir.empty()) dir = ".";
        for (const auto& r : records) {
            set.ids.push_back(r.id);
            set.paths.push_back(dir + "/" + r.id + ".hdr");
            set.labels.push_back(r.label);
        }
    } else {
        if (images.empty()) throw ConfigError("no input images given");
        for (const auto& p : images) {
            set.ids.push_back(std::filesystem::path(p).stem().string());
            set.paths.push_back(p);
            set.labels.push_back(-1);
        }
    }
    return set;
}

void apply_label_file(ImageSet& set, const std::string& labels_csv) {
    if (labels_csv.empty()) return;
    CsvTable t = read_csv_file(labels_csv);
    std::map<std::string, int> by_id;
    for (const auto& r : t.rows) {
        if (r.size() < 2) throw ConfigError("label file rows must be 'id,label'");
        by_id[r[0]] = int(parse_long(r[1]));
    }
    for (std::size_t i = 0; i < set.ids.size(); ++i) {
        auto it = by_id.find(set.ids[i]);
        if (it == by_id.end())
            throw ConfigError("no label for image id '" + set.ids[i] + "'");
        set.labels[i] = it->second;
    }
}

std::vector<int> final_labels(const ImageSet& set) {
    std::vector<int> labels = set.labels;
    for (int& l : labels)
        if (l < 0) l = 0;
    return labels;
}

// ---------------------------------------------------------------------------
// shared option blocks

struct ZoneOptions {
    double radius_deg = 30.0;
    double center_theta_deg = 0.0;
    double center_phi_deg = 0.0;

    TaskZone zone() const { return {center_theta_deg, center_phi_deg, radius_deg}; }
    void add_flags(CLI::App* cmd) {
        cmd->add_option("--task-zone", radius_deg, "task-zone radius, degrees")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--task-zone-theta", center_theta_deg,
                        "task-zone center field angle, degrees");
        cmd->add_option("--task-zone-phi", center_phi_deg, "task-zone center azimuth, degrees");
    }
    std::string canonical() const {
        std::ostringstream os;
        os << "zone=" << radius_deg << "@" << center_theta_deg << "/" << center_phi_deg;
        return os.str();
    }
};

struct DetectionOptions {
    double multiplier = 5.0;
    double absolute_floor = 0.0;  // 0 = unset
    double merge_radius = 0.2;

    SourceDetectionParams params() const {
        SourceDetectionParams p;
        p.threshold_multiplier = multiplier;
        if (absolute_floor > 0.0) p.absolute_floor = absolute_floor;
        p.merge_radius_rad = merge_radius;
        return p;
    }
    void add_flags(CLI::App* cmd) {
        cmd->add_option("--threshold-multiplier", multiplier,
                        "source threshold as a multiple of task luminance")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--absolute-floor", absolute_floor,
                        "absolute source threshold in cd/m^2 (replaces the adaptive rule)");
        cmd->add_option("--merge-radius", merge_radius,
                        "great-circle merge distance for detected sources, radians")
            ->check(CLI::NonNegativeNumber);
    }
    std::string canonical() const {
        std::ostringstream os;
        os << "mult=" << multiplier << "|floor=" << absolute_floor << "|merge=" << merge_radius;
        return os.str();
    }
};

// recipe helpers: extraction settings travel matrix CSV -> model -> predict

json mrl_recipe(const FovMask& mask) {
    json regions = json::array();
    for (const auto& [r, c] : mask.regions) regions.push_back({r, c});
    return {{"type", "mrl"}, {"grid", mask.g}, {"mask_id", mask.id}, {"regions", regions}};
}

json metrics_recipe(const ZoneOptions& zone, const DetectionOptions& det,
                    const std::string& background) {
    return {{"type", "metrics"},
            {"task_zone_deg", zone.radius_deg},
            {"task_zone_theta_deg", zone.center_theta_deg},
            {"task_zone_phi_deg", zone.center_phi_deg},
            {"threshold_multiplier", det.multiplier},
            {"absolute_floor", det.absolute_floor},
            {"merge_radius_rad", det.merge_radius},
            {"background", background}};
}

std::optional<json> recipe_from_comments(const std::vector<std::string>& comments) {
    for (const auto& c : comments) {
        auto pos = c.find("recipe: ");
        if (pos != std::string::npos) return json::parse(c.substr(pos + 8));
    }
    return std::nullopt;
}

FovMask mask_from_recipe(const json& recipe) {
    FovMask mask;
    mask.g = recipe.at("grid").get<int>();
    mask.id = recipe.at("mask_id").get<std::string>();
    for (const auto& rc : recipe.at("regions"))
        mask.regions.emplace_back(rc[0].get<int>(), rc[1].get<int>());
    if (mask.regions.empty()) throw MaskError("recipe has an empty region list");
    return mask;
}

// feature extraction according to a recipe (used by predict)
std::vector<double> extract_by_recipe(const json& recipe, const LuminanceMap& lum,
                                      const FisheyeGeometry& geom) {
    std::string type = recipe.at("type").get<std::string>();
    if (type == "mrl") {
        FovMask mask = mask_from_recipe(recipe);
        auto fv = extract_mrl(lum, geom, mask);
        return fv.region_means;
    }
    if (type == "metrics") {
        TaskZone zone{recipe.at("task_zone_theta_deg").get<double>(),
                      recipe.at("task_zone_phi_deg").get<double>(),
                      recipe.at("task_zone_deg").get<double>()};
        SourceDetectionParams det;
        det.threshold_multiplier = recipe.at("threshold_multiplier").get<double>();
        double floor = recipe.at("absolute_floor").get<double>();
        if (floor > 0.0) det.absolute_floor = floor;
        det.merge_radius_rad = recipe.at("merge_radius_rad").get<double>();
        IndicesOptions opt;
        if (recipe.at("background").get<std::string>() == "nonsource")
            opt.background_mode = IndicesOptions::BackgroundMode::mean_nonsource_luminance;
        auto rec = analyze_scene(lum, geom, det, zone, opt);
        auto vals = rec.values();
        return {vals.begin(), vals.end()};
    }
    throw ModelIoError("unknown feature recipe type '" + type + "'");
}

// ---------------------------------------------------------------------------
// subcommand payloads

struct ExtractArgs {
    std::vector<std::string> images;
    std::string manifest, labels_csv, out, mask_file, mask_out;
    int grid = 25;
    bool strict = false;
};

int run_extract(const ExtractArgs& a) {
    ImageSet set = resolve_inputs(a.images, a.manifest);
    apply_label_file(set, a.labels_csv);

    FovMask mask = a.mask_file.empty() ? build_mask(GridSpec{a.grid}) : read_mask_file(a.mask_file);
    if (!a.mask_out.empty()) write_mask_file(mask, a.mask_out);

    std::vector<MrlFeatureVector> fvs(set.paths.size());
    parallel_for(set.paths.size(), [&](std::size_t i) {
        HdrImage img = read_radiance_hdr_file(set.paths[i]);
        LuminanceMap lum = to_luminance(img);
        fvs[i] = extract_mrl(lum, FisheyeGeometry::centered(lum.width, lum.height), mask);
    });
    bool any_empty = false;
    for (const auto& fv : fvs)
        for (auto e : fv.region_empty) any_empty |= e != 0;
    if (any_empty) {
        if (a.strict) throw EmptyRegionError("a mask region received no pixels (strict mode)");
        std::cerr << "warning: some mask regions received no pixels; means set to 0\n";
    }

    FeatureMatrix mat = assemble_matrix(fvs, final_labels(set), set.ids);
    std::ostringstream cfg;
    cfg << "grid=" << mask.g << "|mask=" << mask.id << "|strict=" << a.strict
        << "|n=" << set.ids.size();
    write_matrix_file(mat, a.out,
                      {provenance("extract", cfg.str()), "recipe: " + mrl_recipe(mask).dump()});
    std::cout << "wrote " << a.out << " (" << mat.n() << " rows, " << mat.m() << " regions, "
              << mat.dataset_name << ")\n";
    return 0;
}

struct MetricsArgs {
    std::vector<std::string> images;
    std::string manifest, labels_csv, out;
    ZoneOptions zone;
    DetectionOptions det;
    std::string background = "indirect";
};

int run_metrics(const MetricsArgs& a) {
    ImageSet set = resolve_inputs(a.images, a.manifest);
    apply_label_file(set, a.labels_csv);

    IndicesOptions opt;
    if (a.background == "nonsource")
        opt.background_mode = IndicesOptions::BackgroundMode::mean_nonsource_luminance;
    else if (a.background != "indirect")
        throw ConfigError("--background must be 'indirect' or 'nonsource'");

    std::vector<GlareMetricsRecord> recs(set.paths.size());
    parallel_for(set.paths.size(), [&](std::size_t i) {
        HdrImage img = read_radiance_hdr_file(set.paths[i]);
        LuminanceMap lum = to_luminance(img);
        recs[i] = analyze_scene(lum, FisheyeGeometry::centered(lum.width, lum.height),
                                a.det.params(), a.zone.zone(), opt);
    });

    FeatureMatrix mat = assemble_matrix(recs, final_labels(set), set.ids);
    std::ostringstream cfg;
    cfg << a.zone.canonical() << "|" << a.det.canonical() << "|bg=" << a.background
        << "|n=" << set.ids.size();
    write_matrix_file(mat, a.out,
                      {provenance("metrics", cfg.str()),
                       "recipe: " + metrics_recipe(a.zone, a.det, a.background).dump()});
    std::cout << "wrote " << a.out << " (" << mat.n() << " rows, 24 metrics)\n";
    return 0;
}

struct TrainArgs {
    std::string matrix, out;
    std::string algorithm = "rusboost_trees";
    ClassifierSpec spec;
    int cv_folds = 0;
    std::uint64_t cv_seed = 0;
};

int run_train(const TrainArgs& a) {
    std::ifstream in(a.matrix);
    if (!in) throw ConfigError("cannot open " + a.matrix);
    std::stringstream buf;
    buf << in.rdbuf();
    std::istringstream text(buf.str());
    FeatureMatrix mat = read_matrix(text);
    {
        std::istringstream again(buf.str());
        CsvTable t = read_csv(again);
        mat.dataset_name = "csv";
        // recover the matrix name from its region count when it looks like MRL
        if (!mat.feature_names.empty() && mat.feature_names.front() == "r1")
            mat.dataset_name = "MRL-" + std::to_string(mat.m());
        if (mat.feature_names == std::vector<std::string>(
                                     GlareMetricsRecord::metric_names().begin(),
                                     GlareMetricsRecord::metric_names().end()))
            mat.dataset_name = "24-metrics";
        ClassifierSpec spec = a.spec;
        spec.algorithm = algorithm_from_string(a.algorithm);
        spec.validate();

        TrainedModel model = train(mat, spec);
        if (auto recipe = recipe_from_comments(t.comments))
            model.feature_recipe_json = recipe->dump();
        save_model(model, a.out);
        for (const auto& w : model.warnings) std::cerr << "warning: " << w << "\n";
        std::cout << "wrote " << a.out << " (" << algorithm_to_string(spec.algorithm) << ", "
                  << mat.n() << "x" << mat.m() << ")\n";

        if (a.cv_folds > 0) {
            auto cv = cross_validate(mat, spec, a.cv_folds, a.cv_seed);
            GateFlags gates = apply_gates(cv.report);
            std::cout << "cv_oa=" << format_double(cv.report.oa)
                      << " cv_tpr=" << format_double(cv.report.tpr)
                      << " cv_tnr=" << format_double(cv.report.tnr)
                      << " cv_auc=" << format_double(cv.report.auc)
                      << " cv_sqd=" << format_double(cv.report.sqd)
                      << " gates=" << (gates.pass ? "pass" : "fail") << "\n";
            for (const auto& w : cv.report.warnings) std::cerr << "warning: " << w << "\n";
        }
    }
    return 0;
}

struct PredictArgs {
    std::vector<std::string> images;
    std::string manifest, matrix, model, out;
};

int run_predict(const PredictArgs& a) {
    TrainedModel model = load_model(a.model);

    std::vector<std::string> ids;
    std::vector<std::vector<double>> rows;
    std::vector<int> truth;  // -1 unknown

    if (!a.matrix.empty()) {
        if (!a.images.empty() || !a.manifest.empty())
            throw ConfigError("--matrix cannot be combined with image inputs");
        FeatureMatrix mat = read_matrix_file(a.matrix);
        ids = mat.ids;
        rows = mat.rows;
        truth.assign(mat.labels.begin(), mat.labels.end());
    } else {
        if (model.feature_recipe_json.empty())
            throw ModelIoError(
                "model carries no feature recipe; predict from images needs one "
                "(train on a matrix produced by 'oge extract' or 'oge metrics')");
        json recipe = json::parse(model.feature_recipe_json);
        ImageSet set = resolve_inputs(a.images, a.manifest);
        ids = set.ids;
        truth = set.labels;
        rows.resize(set.paths.size());
        parallel_for(set.paths.size(), [&](std::size_t i) {
            HdrImage img = read_radiance_hdr_file(set.paths[i]);
            LuminanceMap lum = to_luminance(img);
            rows[i] = extract_by_recipe(recipe, lum,
                                        FisheyeGeometry::centered(lum.width, lum.height));
        });
    }

    std::ofstream out(a.out);
    if (!out) throw ConfigError("cannot open " + a.out + " for writing");
    std::ostringstream cfg;
    cfg << "model=" << model.training_fingerprint << "|n=" << ids.size();
    out << "# " << provenance("predict", cfg.str()) << "\n";
    bool have_truth = std::any_of(truth.begin(), truth.end(), [](int l) { return l >= 0; });
    out << (have_truth ? "id,score,predicted,label\n" : "id,score,predicted\n");
    ConfusionCounts cc;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        double s = model.predict_score(rows[i]);
        int pred = s >= model.spec.decision_threshold ? 1 : 0;
        out << ids[i] << ',' << format_double(s) << ',' << pred;
        if (have_truth) out << ',' << truth[i];
        out << '\n';
        if (truth[i] >= 0) cc.add(truth[i], pred);
    }
    std::cout << "wrote " << a.out << " (" << ids.size() << " predictions)\n";
    if (have_truth && cc.total() > 0)
        std::cout << "oa=" << format_double(cc.oa()) << " tpr=" << format_double(cc.tpr())
                  << " tnr=" << format_double(cc.tnr()) << "\n";
    return 0;
}

struct RocArgs {
    std::string matrix, out;
    std::string metric;  // empty = all feature columns
    std::string fold_eval = "per-fold";
    int folds = 5;
    std::uint64_t seed = 0;
};

struct RocRow {
    std::string feature;
    Orientation orient = Orientation::higher_means_glare;
    double k_oa = std::nan(""), k_tpr = std::nan(""), k_tnr = std::nan("");
    double c1 = std::nan(""), k_auc = std::nan(""), k_sqd = std::nan("");
    double c_oa = std::nan(""), c_tpr = std::nan(""), c_tnr = std::nan("");
    double c2 = std::nan(""), c_auc = std::nan(""), c_sqd = std::nan("");
    double err = std::nan("");
    bool generalizable = false;
    bool k_pass = false, c_pass = false;
};

int run_roc(const RocArgs& a) {
    if (a.fold_eval != "per-fold" && a.fold_eval != "mean-cutoff")
        throw ConfigError("--fold-eval must be 'per-fold' or 'mean-cutoff'");
    FeatureMatrix mat = read_matrix_file(a.matrix);
    bool pos = false, neg = false;
    for (int l : mat.labels) (l == 1 ? pos : neg) = true;
    if (!pos || !neg) throw RocError("matrix needs rows of both classes");

    std::vector<std::size_t> columns;
    for (std::size_t j = 0; j < mat.m(); ++j)
        if (a.metric.empty() || mat.feature_names[j] == a.metric) columns.push_back(j);
    if (columns.empty()) throw UnknownMetricError("no feature column named '" + a.metric + "'");

    std::vector<RocRow> table;
    for (std::size_t j : columns) {
        RocRow row;
        row.feature = mat.feature_names[j];
        try {
            row.orient = metric_orientation(row.feature);
        } catch (const UnknownMetricError&) {
            row.orient = Orientation::higher_means_glare;  // plain luminance features
        }
        std::vector<double> scores(mat.n());
        for (std::size_t i = 0; i < mat.n(); ++i) scores[i] = mat.rows[i][j];

        // combined (all data) analysis
        RocSummary comb = summarize(roc_curve(scores, mat.labels, row.orient));
        row.c2 = comb.cutoff;
        row.c_auc = comb.auc;
        row.c_sqd = comb.sqd;
        EvaluationReport at_c2 = evaluate_at_cutoff(scores, mat.labels, comb.cutoff, row.orient);
        row.c_oa = at_c2.oa;
        row.c_tpr = at_c2.tpr;
        row.c_tnr = at_c2.tnr;

        // k-fold analysis
        try {
            CutoffComparison cc =
                cross_validated_cutoff(scores, mat.labels, a.folds, a.seed, row.orient);
            row.c1 = cc.c1;
            row.err = cc.variation_error_pct;
            row.generalizable = cc.generalizable;

            auto folds = kfold_split(mat.n(), a.folds, cc.folds_seed).fold_rows();
            double oa_s = 0, tpr_s = 0, tnr_s = 0, auc_s = 0, sqd_s = 0;
            for (std::size_t f = 0; f < folds.size(); ++f) {
                std::vector<double> fs;
                std::vector<int> fl;
                for (std::size_t i : folds[f]) {
                    fs.push_back(scores[i]);
                    fl.push_back(mat.labels[i]);
                }
                RocSummary fsum = summarize(roc_curve(fs, fl, row.orient));
                auc_s += fsum.auc;
                double cutoff = a.fold_eval == "per-fold" ? cc.fold_cutoffs[f] : cc.c1;
                EvaluationReport rep = evaluate_at_cutoff(fs, fl, cutoff, row.orient);
                oa_s += rep.oa;
                tpr_s += rep.tpr;
                tnr_s += rep.tnr;
                double fpr = 1.0 - rep.tnr;
                sqd_s += (1.0 - rep.tpr) * (1.0 - rep.tpr) + fpr * fpr;
            }
            double k = double(folds.size());
            row.k_oa = oa_s / k;
            row.k_tpr = tpr_s / k;
            row.k_tnr = tnr_s / k;
            row.k_auc = auc_s / k;
            row.k_sqd = sqd_s / k;
        } catch (const VariationUndefinedError& e) {
            std::cerr << "warning: " << row.feature << ": " << e.what() << "\n";
        } catch (const RocError& e) {
            std::cerr << "warning: " << row.feature << ": " << e.what() << "\n";
        }

        row.k_pass = apply_gates(row.k_oa, row.k_tpr, row.k_tnr, row.k_auc, row.k_sqd).pass;
        row.c_pass = apply_gates(row.c_oa, row.c_tpr, row.c_tnr, row.c_auc, row.c_sqd).pass;
        table.push_back(row);
    }

    std::stable_sort(table.begin(), table.end(), [](const RocRow& x, const RocRow& y) {
        double a1 = std::isnan(x.c_oa) ? -1.0 : x.c_oa;
        double b1 = std::isnan(y.c_oa) ? -1.0 : y.c_oa;
        return a1 > b1;
    });

    std::ofstream out(a.out);
    if (!out) throw ConfigError("cannot open " + a.out + " for writing");
    std::ostringstream cfg;
    cfg << "folds=" << a.folds << "|seed=" << a.seed << "|fold-eval=" << a.fold_eval
        << "|metric=" << a.metric << "|n=" << mat.n();
    out << "# " << provenance("roc", cfg.str()) << "\n";
    out << "feature,orientation,kfold_oa,kfold_tpr,kfold_tnr,kfold_cutoff,kfold_auc,kfold_sqd,"
           "kfold_pass,combined_oa,combined_tpr,combined_tnr,combined_cutoff,combined_auc,"
           "combined_sqd,combined_pass,variation_error_pct,generalizable\n";
    for (const auto& r : table) {
        out << r.feature << ','
            << (r.orient == Orientation::lower_means_glare ? "lower" : "higher") << ','
            << format_double(r.k_oa) << ',' << format_double(r.k_tpr) << ','
            << format_double(r.k_tnr) << ',' << format_double(r.c1) << ','
            << format_double(r.k_auc) << ',' << format_double(r.k_sqd) << ','
            << (r.k_pass ? 1 : 0) << ',' << format_double(r.c_oa) << ','
            << format_double(r.c_tpr) << ',' << format_double(r.c_tnr) << ','
            << format_double(r.c2) << ',' << format_double(r.c_auc) << ','
            << format_double(r.c_sqd) << ',' << (r.c_pass ? 1 : 0) << ','
            << format_double(r.err) << ',' << (r.generalizable ? 1 : 0) << '\n';
    }
    std::cout << "wrote " << a.out << " (" << table.size() << " features)\n";
    return 0;
}

struct SynthArgs {
    std::string out;
    ScenarioParams params;
    bool bernoulli = false;
};

int run_synth(const SynthArgs& a) {
    ScenarioParams p = a.params;
    p.quota = !a.bernoulli;
    std::ostringstream cfg;
    cfg << "n=" << p.n_scenes << "|frac=" << p.positive_fraction << "|quota=" << p.quota
        << "|size=" << p.width << "x" << p.height << "|noise=" << p.label_noise
        << "|seed=" << p.seed << "|lum=" << p.source_lum_min << ".." << p.source_lum_max
        << "|tau=" << p.score_threshold << "|margin=" << p.score_margin;
    auto records = generate_corpus(p, a.out, {provenance("synth", cfg.str())});
    int npos = 0;
    for (const auto& r : records) npos += r.label;
    std::cout << "wrote " << records.size() << " scenes to " << a.out << " (" << npos
              << " positives)\n";
    return 0;
}

struct FalseColorArgs {
    std::string image, out;
    double min_cdm2 = 0.0, max_cdm2 = 0.0;
    bool linear = false;
};

int run_falsecolor(const FalseColorArgs& a) {
    HdrImage img = read_radiance_hdr_file(a.image);
    LuminanceMap lum = to_luminance(img);
    FalseColorScale scale{a.min_cdm2, a.max_cdm2, !a.linear};
    write_ppm_file(false_color_map(lum, scale), a.out);
    std::cout << "wrote " << a.out << " (" << lum.width << "x" << lum.height << ")\n";
    return 0;
}

void add_input_flags(CLI::App* cmd, std::vector<std::string>& images, std::string& manifest,
                     std::string& labels_csv) {
    cmd->add_option("images", images, "input Radiance HDR images");
    cmd->add_option("--manifest", manifest, "corpus manifest.csv (images looked up beside it)");
    cmd->add_option("--labels", labels_csv, "CSV with id,label rows");
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"fisheye luminance maps to glare features, metrics and classifiers"};
    app.set_version_flag("--version", std::string("oge ") + kVersion);
    app.require_subcommand(1);

    ExtractArgs ex;
    auto* extract = app.add_subcommand("extract", "multi-region luminance features from images");
    add_input_flags(extract, ex.images, ex.manifest, ex.labels_csv);
    extract->add_option("--grid", ex.grid, "grid size g (g x g cells)")->check(CLI::Range(2, 200));
    extract->add_option("--mask", ex.mask_file, "region mask file (overrides the built-in mask)");
    extract->add_option("--mask-out", ex.mask_out, "write the mask that was used");
    extract->add_option("--out", ex.out, "output matrix CSV")->required();
    extract->add_flag("--strict", ex.strict, "fail when a mask region has no pixels");

    MetricsArgs me;
    auto* metrics = app.add_subcommand("metrics", "photometric glare metrics from images");
    add_input_flags(metrics, me.images, me.manifest, me.labels_csv);
    me.zone.add_flags(metrics);
    me.det.add_flags(metrics);
    metrics->add_option("--background", me.background,
                        "background luminance mode: indirect | nonsource");
    metrics->add_option("--out", me.out, "output matrix CSV")->required();

    TrainArgs tr;
    auto* train = app.add_subcommand("train", "fit a glare classifier on a feature matrix");
    train->add_option("--matrix", tr.matrix, "input feature matrix CSV")->required();
    train->add_option("--algorithm", tr.algorithm,
                      "decision_tree | bagged_trees | rusboost_trees | gaussian_naive_bayes | "
                      "knn | logistic_regression");
    train->add_option("--seed", tr.spec.seed, "training seed");
    train->add_option("--learners", tr.spec.learners, "ensemble size");
    train->add_option("--max-splits", tr.spec.max_splits, "split budget per tree");
    train->add_option("--min-leaf", tr.spec.min_leaf, "minimum samples per leaf");
    train->add_option("--learning-rate", tr.spec.learning_rate, "boosting learning rate");
    train->add_option("--features-per-split", tr.spec.features_per_split,
                      "random features per split (0 = all)");
    train->add_option("--knn-k", tr.spec.knn_k, "neighbours for knn");
    train->add_option("--cv", tr.cv_folds, "also run k-fold cross-validation (0 = off)");
    train->add_option("--folds-seed", tr.cv_seed, "fold split seed for --cv");
    train->add_option("--out", tr.out, "output model JSON")->required();

    PredictArgs pr;
    auto* predict = app.add_subcommand("predict", "score images or matrix rows with a model");
    predict->add_option("images", pr.images, "input Radiance HDR images");
    predict->add_option("--manifest", pr.manifest, "corpus manifest.csv");
    predict->add_option("--matrix", pr.matrix, "feature matrix CSV (skips extraction)");
    predict->add_option("--model", pr.model, "model JSON from 'oge train'")->required();
    predict->add_option("--out", pr.out, "output predictions CSV")->required();

    RocArgs ro;
    auto* roc = app.add_subcommand("roc", "per-feature ROC, cutoffs and screening gates");
    roc->add_option("--matrix", ro.matrix, "input feature matrix CSV")->required();
    roc->add_option("--metric", ro.metric, "restrict to one feature column");
    roc->add_option("--folds", ro.folds, "number of folds")->check(CLI::Range(2, 100));
    roc->add_option("--seed", ro.seed, "fold split seed");
    roc->add_option("--fold-eval", ro.fold_eval,
                    "per-fold (fold-specific cutoffs) | mean-cutoff (shared C1)");
    roc->add_option("--out", ro.out, "output table CSV")->required();

    SynthArgs sy;
    auto* synth = app.add_subcommand("synth", "generate a labeled synthetic corpus");
    synth->add_option("--out", sy.out, "output directory")->required();
    synth->add_option("--n", sy.params.n_scenes, "number of scenes")->check(CLI::PositiveNumber);
    synth->add_option("--positive-fraction", sy.params.positive_fraction,
                      "target share of glare scenes");
    synth->add_flag("--bernoulli", sy.bernoulli,
                    "label scenes independently instead of hitting the exact mix");
    synth->add_option("--width", sy.params.width, "scene width, pixels");
    synth->add_option("--height", sy.params.height, "scene height, pixels");
    synth->add_option("--noise", sy.params.label_noise, "label flip probability");
    synth->add_option("--seed", sy.params.seed, "corpus seed");
    synth->add_option("--source-lum-min", sy.params.source_lum_min, "cd/m^2");
    synth->add_option("--source-lum-max", sy.params.source_lum_max, "cd/m^2");
    synth->add_option("--score-threshold", sy.params.score_threshold, "generative label cutoff");
    synth->add_option("--score-margin", sy.params.score_margin,
                      "redraw scenes this close to the cutoff");
    synth->add_option("--position-archetypes", sy.params.position_archetypes,
                      "number of recurring source directions, 0 for uniform placement");
    synth->add_option("--position-jitter", sy.params.position_jitter_deg,
                      "angular scatter around each archetype, degrees");

    FalseColorArgs fc;
    auto* falsecolor = app.add_subcommand("falsecolor", "luminance map to false-color PPM");
    falsecolor->add_option("image", fc.image, "input Radiance HDR image")->required();
    falsecolor->add_option("--out", fc.out, "output PPM file")->required();
    falsecolor->add_option("--min", fc.min_cdm2, "scale minimum, cd/m^2");
    falsecolor->add_option("--max", fc.max_cdm2, "scale maximum, cd/m^2");
    falsecolor->add_flag("--linear", fc.linear, "linear instead of logarithmic scale");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*extract) return run_extract(ex);
        if (*metrics) return run_metrics(me);
        if (*train) return run_train(tr);
        if (*predict) return run_predict(pr);
        if (*roc) return run_roc(ro);
        if (*synth) return run_synth(sy);
        if (*falsecolor) return run_falsecolor(fc);
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}

}
